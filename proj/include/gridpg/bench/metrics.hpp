#pragma once

#include <optional>
#include <span>
#include <vector>

namespace gridpg {

struct MraeResult {
    double value = 0.0;
    // True when some |truth_t| fell under the zero guard and that term used
    // absolute error instead.
    bool zero_guarded = false;
};

// Mean over t of |estimate_t - truth_t| / |truth_t|, with terms whose
// |truth_t| < 1e-8 contributing the absolute error instead.
MraeResult mrae(std::span<const double> estimates, std::span<const double> truth);

struct SwitchingBreakdown {
    std::optional<MraeResult> switching;     // absent when no state switches
    std::optional<MraeResult> nonswitching;  // absent when every state switches
    int switching_count = 0;
    int nonswitching_count = 0;
};

// Partitions time points by whether the true regime switched (s_t != s_{t-1},
// with the model's s_0 convention covering t = 1) and reports the MRAE of
// each partition.
SwitchingBreakdown switching_breakdown(std::span<const double> estimates,
                                       std::span<const double> truth,
                                       std::span<const int> regimes_truth, int initial_regime = 1);

// Mean of a piecewise-linear curve y(x) over [x_lo, x_hi]; the curve is
// extended flat beyond its endpoints. Points must be sorted by x.
double interpolated_curve_mean(std::span<const double> xs, std::span<const double> ys, double x_lo,
                               double x_hi);

// Batch-means Monte Carlo standard error of the mean of a (possibly
// autocorrelated) chain.
double batch_means_stderr(std::span<const double> chain, int batches = 20);

}  // namespace gridpg
