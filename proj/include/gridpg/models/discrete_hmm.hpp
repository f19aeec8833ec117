#pragma once

#include <vector>

#include "gridpg/ssm.hpp"

namespace gridpg {

// Finite HMM used as an exactness oracle: K discrete states with Gaussian
// per-state observation densities.
struct DiscreteHmmSpec {
    int state_count = 2;
    std::vector<double> initial;          // K, sums to 1
    Matrix transition;                    // K x K row-stochastic
    std::vector<double> obs_mean;         // K
    std::vector<double> obs_var;          // K, positive

    void check() const;
};

// SsmModel wrapper: the regime label carries the HMM state and the
// continuous value is pinned at zero (log density 0 at 0.0, -inf elsewhere).
// The spec is held by the model itself; ModelParameters is unused and empty.
class DiscreteHmmModel final : public SsmModel {
public:
    explicit DiscreteHmmModel(DiscreteHmmSpec spec);

    int regime_count() const override { return spec_.state_count; }
    void validate(const ModelParameters& theta) const override;

    double initial_log_density(const StatePoint& x1, const ModelParameters& theta) const override;
    double transition_log_density(const StatePoint& x, const StatePoint& prev,
                                  const ModelParameters& theta) const override;
    double observation_log_density(double y, const StatePoint& x,
                                   const ModelParameters& theta) const override;

    StatePoint simulate_initial(const ModelParameters& theta, RandomSource& rng) const override;
    StatePoint simulate_transition(const StatePoint& prev, const ModelParameters& theta,
                                   RandomSource& rng) const override;
    double simulate_observation(const StatePoint& x, const ModelParameters& theta,
                                RandomSource& rng) const override;

    std::optional<Matrix> regime_transition_matrix(const ModelParameters&) const override {
        return spec_.transition;
    }

    const DiscreteHmmSpec& spec() const { return spec_; }

private:
    DiscreteHmmSpec spec_;
};

}  // namespace gridpg
