#include "gridpg/oracles/kalman.hpp"

#include "gridpg/common.hpp"

namespace gridpg {

KalmanMoments kalman_smoother(const KalmanModelSpec& spec, const std::vector<double>& y) {
    const int T = static_cast<int>(y.size());
    if (T < 1) throw ConfigError("kalman_smoother: empty observation series");
    if (!(spec.state_var > 0.0 && spec.obs_var > 0.0 && spec.init_var > 0.0))
        throw ConfigError("kalman_smoother: variances must be positive");

    const double a = spec.state_coef, q = spec.state_var;
    const double c = spec.obs_coef, r = spec.obs_var;

    std::vector<double> pred_mean(T), pred_var(T);
    KalmanMoments out;
    out.filtered_mean.resize(T);
    out.filtered_var.resize(T);

    for (int t = 0; t < T; ++t) {
        if (t == 0) {
            pred_mean[t] = spec.init_mean;
            pred_var[t] = spec.init_var;
        } else {
            pred_mean[t] = a * out.filtered_mean[t - 1];
            pred_var[t] = a * a * out.filtered_var[t - 1] + q;
        }
        const double s = c * c * pred_var[t] + r;
        const double gain = pred_var[t] * c / s;
        out.filtered_mean[t] = pred_mean[t] + gain * (y[t] - c * pred_mean[t]);
        out.filtered_var[t] = (1.0 - gain * c) * pred_var[t];
    }

    out.smoothed_mean.resize(T);
    out.smoothed_var.resize(T);
    out.smoothed_mean[T - 1] = out.filtered_mean[T - 1];
    out.smoothed_var[T - 1] = out.filtered_var[T - 1];
    for (int t = T - 2; t >= 0; --t) {
        const double g = out.filtered_var[t] * a / pred_var[t + 1];
        out.smoothed_mean[t] =
            out.filtered_mean[t] + g * (out.smoothed_mean[t + 1] - pred_mean[t + 1]);
        out.smoothed_var[t] =
            out.filtered_var[t] + g * g * (out.smoothed_var[t + 1] - pred_var[t + 1]);
    }
    return out;
}

}  // namespace gridpg
