#pragma once

#include <span>
#include <vector>

#include "gridpg/random.hpp"

namespace gridpg {

// Cumulative unnormalized log weights plus their normalized counterpart.
// Normalization goes through the max-shift pattern; -inf entries carry zero
// mass. renormalize() throws DegenerateWeightsError when no entry is finite.
class WeightLedger {
public:
    WeightLedger() = default;
    explicit WeightLedger(int count) { reset(count); }

    void reset(int count);

    int size() const { return static_cast<int>(log_weights_.size()); }

    void set_log_weight(int m, double lw) { log_weights_[m] = lw; }
    void add_log_weight(int m, double increment) { log_weights_[m] += increment; }

    // Equal cumulative weights 1/M, the post-resampling state.
    void reset_uniform();

    void renormalize();

    std::span<const double> log_weights() const { return log_weights_; }
    std::span<const double> normalized() const { return normalized_; }
    std::span<const double> normalized_cdf() const { return cdf_; }

    double ess() const;

private:
    std::vector<double> log_weights_;
    std::vector<double> normalized_;
    std::vector<double> cdf_;
};

// 1 / sum(W^2), in [1, M].
double effective_sample_size(const WeightLedger& ledger);

// M i.i.d. categorical draws with probabilities equal to the normalized
// weights. Resetting the cumulative weights afterward is the caller's job.
std::vector<int> multinomial_resample(const WeightLedger& ledger, int draws, RandomSource& rng);

}  // namespace gridpg
