#include "gridpg/weights.hpp"

#include <cmath>

#include "gridpg/common.hpp"
#include "gridpg/numeric.hpp"

namespace gridpg {

void WeightLedger::reset(int count) {
    log_weights_.assign(count, 0.0);
    normalized_.assign(count, 1.0 / count);
    cdf_.resize(count);
    double acc = 0.0;
    for (int m = 0; m < count; ++m) {
        acc += normalized_[m];
        cdf_[m] = acc;
    }
}

void WeightLedger::reset_uniform() {
    const double lw = -std::log(static_cast<double>(size()));
    for (double& w : log_weights_) w = lw;
    renormalize();
}

void WeightLedger::renormalize() {
    if (!normalize_log_weights(log_weights_, normalized_))
        throw DegenerateWeightsError("weight ledger: all particle weights are zero");
    double acc = 0.0;
    for (int m = 0; m < size(); ++m) {
        acc += normalized_[m];
        cdf_[m] = acc;
    }
}

double WeightLedger::ess() const {
    double s2 = 0.0;
    for (double w : normalized_) s2 += w * w;
    if (!(s2 > 0.0)) throw DegenerateWeightsError("weight ledger: degenerate weights in ESS");
    return 1.0 / s2;
}

double effective_sample_size(const WeightLedger& ledger) { return ledger.ess(); }

std::vector<int> multinomial_resample(const WeightLedger& ledger, int draws, RandomSource& rng) {
    std::vector<int> idx(draws);
    const auto cdf = ledger.normalized_cdf();
    for (int m = 0; m < draws; ++m) idx[m] = rng.categorical_from_cdf(cdf);
    return idx;
}

}  // namespace gridpg
