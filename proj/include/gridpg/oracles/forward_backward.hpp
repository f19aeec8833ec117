#pragma once

#include <vector>

#include "gridpg/models/discrete_hmm.hpp"

namespace gridpg {

struct HmmMarginals {
    std::vector<std::vector<double>> filtering;  // T x K, each sums to 1
    std::vector<std::vector<double>> smoothing;  // T x K, each sums to 1
    double log_evidence = 0.0;
};

// Scaled forward-backward recursion over the per-state Gaussian likelihoods.
HmmMarginals hmm_forward_backward(const DiscreteHmmSpec& spec, const std::vector<double>& y);

// Same recursion but with caller-supplied log-likelihood columns (T x K);
// lets tests rescale likelihoods without touching the observation model.
HmmMarginals hmm_forward_backward_loglik(const DiscreteHmmSpec& spec,
                                         const std::vector<std::vector<double>>& loglik);

struct PathDistribution {
    int state_count = 0;
    int T = 0;
    std::vector<double> probability;  // K^T entries, lexicographic in states

    // Path index for states given as 1-based labels per time point.
    int index_of(const std::vector<int>& states) const;
    std::vector<int> states_of(int index) const;  // 1-based labels
};

// Exact posterior over all K^T latent paths; guards K^T <= 10^4.
PathDistribution enumerate_small_posterior(const DiscreteHmmSpec& spec,
                                           const std::vector<double>& y);

}  // namespace gridpg
