#pragma once

#include <vector>

#include "gridpg/models/linear_gaussian.hpp"

namespace gridpg {

struct KalmanMoments {
    std::vector<double> filtered_mean, filtered_var;
    std::vector<double> smoothed_mean, smoothed_var;
};

// Exact filtering and RTS smoothing moments for the scalar linear-Gaussian
// model. The prior N(init_mean, init_var) is the time-1 predictive.
KalmanMoments kalman_smoother(const KalmanModelSpec& spec, const std::vector<double>& y);

}  // namespace gridpg
