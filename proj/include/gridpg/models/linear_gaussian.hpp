#pragma once

#include "gridpg/ssm.hpp"

namespace gridpg {

// Scalar linear-Gaussian SSM, the tractable oracle model:
//   x_1 ~ N(init_mean, init_var),
//   x_t = state_coef * x_{t-1} + N(0, state_var),
//   y_t = obs_coef * x_t + N(0, obs_var).
struct KalmanModelSpec {
    double state_coef = 0.9;
    double state_var = 1.0;
    double obs_coef = 1.0;
    double obs_var = 1.0;
    double init_mean = 0.0;
    double init_var = 1.0;
};

// Parameter layout mirrors KalmanModelSpec field order.
class LinearGaussianModel final : public SsmModel {
public:
    enum Index { kStateCoef = 0, kStateVar = 1, kObsCoef = 2, kObsVar = 3, kInitMean = 4, kInitVar = 5 };

    int regime_count() const override { return 1; }
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

    static ModelParameters make_params(const KalmanModelSpec& s) {
        return ModelParameters{{s.state_coef, s.state_var, s.obs_coef, s.obs_var, s.init_mean, s.init_var}};
    }
    static KalmanModelSpec spec_from(const ModelParameters& theta) {
        return KalmanModelSpec{theta[kStateCoef], theta[kStateVar], theta[kObsCoef],
                               theta[kObsVar],    theta[kInitMean], theta[kInitVar]};
    }
};

}  // namespace gridpg
