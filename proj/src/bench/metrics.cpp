#include "gridpg/bench/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "gridpg/common.hpp"

namespace gridpg {

namespace {

constexpr double kZeroGuard = 1e-8;

MraeResult mrae_over(std::span<const double> estimates, std::span<const double> truth,
                     const std::vector<int>& index) {
    MraeResult out;
    for (int t : index) {
        const double err = std::abs(estimates[t] - truth[t]);
        if (std::abs(truth[t]) < kZeroGuard) {
            out.value += err;
            out.zero_guarded = true;
        } else {
            out.value += err / std::abs(truth[t]);
        }
    }
    out.value /= static_cast<double>(index.size());
    return out;
}

}  // namespace

MraeResult mrae(std::span<const double> estimates, std::span<const double> truth) {
    if (estimates.size() != truth.size() || estimates.empty())
        throw ConfigError("mrae: series lengths disagree or are empty");
    std::vector<int> all(estimates.size());
    for (size_t t = 0; t < all.size(); ++t) all[t] = static_cast<int>(t);
    return mrae_over(estimates, truth, all);
}

SwitchingBreakdown switching_breakdown(std::span<const double> estimates,
                                       std::span<const double> truth,
                                       std::span<const int> regimes_truth, int initial_regime) {
    if (estimates.size() != truth.size() || estimates.size() != regimes_truth.size())
        throw ConfigError("switching_breakdown: series lengths disagree");

    std::vector<int> switching, nonswitching;
    int prev = initial_regime;
    for (size_t t = 0; t < regimes_truth.size(); ++t) {
        (regimes_truth[t] != prev ? switching : nonswitching).push_back(static_cast<int>(t));
        prev = regimes_truth[t];
    }

    SwitchingBreakdown out;
    out.switching_count = static_cast<int>(switching.size());
    out.nonswitching_count = static_cast<int>(nonswitching.size());
    if (!switching.empty()) out.switching = mrae_over(estimates, truth, switching);
    if (!nonswitching.empty()) out.nonswitching = mrae_over(estimates, truth, nonswitching);
    return out;
}

double interpolated_curve_mean(std::span<const double> xs, std::span<const double> ys, double x_lo,
                               double x_hi) {
    if (xs.empty() || xs.size() != ys.size())
        throw ConfigError("interpolated_curve_mean: bad curve");
    if (!(x_lo < x_hi)) throw ConfigError("interpolated_curve_mean: empty range");

    auto value_at = [&](double x) {
        if (x <= xs.front()) return ys.front();
        if (x >= xs.back()) return ys.back();
        auto it = std::upper_bound(xs.begin(), xs.end(), x);
        const size_t i = static_cast<size_t>(it - xs.begin());
        const double f = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
        return ys[i - 1] + f * (ys[i] - ys[i - 1]);
    };

    // Trapezoid average over a fine, fixed subdivision; exact enough for
    // piecewise-linear curves compared at these tolerances.
    constexpr int kSteps = 512;
    double acc = 0.0;
    for (int i = 0; i <= kSteps; ++i) {
        const double x = x_lo + (x_hi - x_lo) * i / kSteps;
        const double w = (i == 0 || i == kSteps) ? 0.5 : 1.0;
        acc += w * value_at(x);
    }
    return acc / kSteps;
}

double batch_means_stderr(std::span<const double> chain, int batches) {
    const int n = static_cast<int>(chain.size());
    if (n < 2 * batches) batches = std::max(2, n / 2);
    const int len = n / batches;
    if (len < 1) throw ConfigError("batch_means_stderr: chain too short");

    std::vector<double> means(batches, 0.0);
    for (int b = 0; b < batches; ++b) {
        for (int i = 0; i < len; ++i) means[b] += chain[b * len + i];
        means[b] /= len;
    }
    double grand = 0.0;
    for (double m : means) grand += m;
    grand /= batches;
    double var = 0.0;
    for (double m : means) var += (m - grand) * (m - grand);
    var /= (batches - 1);
    return std::sqrt(var / batches);
}

}  // namespace gridpg
