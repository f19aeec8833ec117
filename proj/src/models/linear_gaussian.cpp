#include "gridpg/models/linear_gaussian.hpp"

#include <cmath>

#include "gridpg/common.hpp"

namespace gridpg {

void LinearGaussianModel::validate(const ModelParameters& theta) const {
    if (theta.values.size() != 6) throw ParameterDomainError("linear-gaussian: expected 6 parameters");
    if (!(theta[kStateVar] > 0.0 && theta[kObsVar] > 0.0 && theta[kInitVar] > 0.0))
        throw ParameterDomainError("linear-gaussian: variances must be positive");
}

double LinearGaussianModel::initial_log_density(const StatePoint& x1,
                                                const ModelParameters& theta) const {
    if (x1.regime != 1) return kNegInf;
    return normal_logpdf(x1.value, theta[kInitMean], theta[kInitVar]);
}

double LinearGaussianModel::transition_log_density(const StatePoint& x, const StatePoint& prev,
                                                   const ModelParameters& theta) const {
    if (x.regime != 1) return kNegInf;
    return normal_logpdf(x.value, theta[kStateCoef] * prev.value, theta[kStateVar]);
}

double LinearGaussianModel::observation_log_density(double y, const StatePoint& x,
                                                    const ModelParameters& theta) const {
    return normal_logpdf(y, theta[kObsCoef] * x.value, theta[kObsVar]);
}

StatePoint LinearGaussianModel::simulate_initial(const ModelParameters& theta,
                                                 RandomSource& rng) const {
    return StatePoint{1, draw_normal(rng, theta[kInitMean], std::sqrt(theta[kInitVar]))};
}

StatePoint LinearGaussianModel::simulate_transition(const StatePoint& prev,
                                                    const ModelParameters& theta,
                                                    RandomSource& rng) const {
    return StatePoint{1, draw_normal(rng, theta[kStateCoef] * prev.value, std::sqrt(theta[kStateVar]))};
}

double LinearGaussianModel::simulate_observation(const StatePoint& x, const ModelParameters& theta,
                                                 RandomSource& rng) const {
    return draw_normal(rng, theta[kObsCoef] * x.value, std::sqrt(theta[kObsVar]));
}

}  // namespace gridpg
