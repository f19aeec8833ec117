#include "gridpg/models/discrete_hmm.hpp"

#include <cmath>

#include "gridpg/common.hpp"

namespace gridpg {

void DiscreteHmmSpec::check() const {
    if (state_count < 1) throw ConfigError("discrete hmm: need at least one state");
    if (static_cast<int>(initial.size()) != state_count ||
        transition.rows() != state_count || transition.cols() != state_count ||
        static_cast<int>(obs_mean.size()) != state_count ||
        static_cast<int>(obs_var.size()) != state_count)
        throw ConfigError("discrete hmm: inconsistent spec dimensions");
    double s = 0.0;
    for (double p : initial) s += p;
    if (std::abs(s - 1.0) > 1e-9) throw ConfigError("discrete hmm: initial vector must sum to 1");
    for (int i = 0; i < state_count; ++i) {
        double r = 0.0;
        for (int j = 0; j < state_count; ++j) r += transition(i, j);
        if (std::abs(r - 1.0) > 1e-9) throw ConfigError("discrete hmm: transition rows must sum to 1");
        if (!(obs_var[i] > 0.0)) throw ConfigError("discrete hmm: observation variances must be positive");
    }
}

DiscreteHmmModel::DiscreteHmmModel(DiscreteHmmSpec spec) : spec_(std::move(spec)) {
    spec_.check();
}

void DiscreteHmmModel::validate(const ModelParameters&) const {}

double DiscreteHmmModel::initial_log_density(const StatePoint& x1, const ModelParameters&) const {
    if (x1.regime < 1 || x1.regime > spec_.state_count || x1.value != 0.0) return kNegInf;
    const double p = spec_.initial[x1.regime - 1];
    return p > 0.0 ? std::log(p) : kNegInf;
}

double DiscreteHmmModel::transition_log_density(const StatePoint& x, const StatePoint& prev,
                                                const ModelParameters&) const {
    if (x.regime < 1 || x.regime > spec_.state_count || x.value != 0.0) return kNegInf;
    const double p = spec_.transition(prev.regime - 1, x.regime - 1);
    return p > 0.0 ? std::log(p) : kNegInf;
}

double DiscreteHmmModel::observation_log_density(double y, const StatePoint& x,
                                                 const ModelParameters&) const {
    return normal_logpdf(y, spec_.obs_mean[x.regime - 1], spec_.obs_var[x.regime - 1]);
}

StatePoint DiscreteHmmModel::simulate_initial(const ModelParameters&, RandomSource& rng) const {
    return StatePoint{1 + draw_categorical(rng, spec_.initial), 0.0};
}

StatePoint DiscreteHmmModel::simulate_transition(const StatePoint& prev, const ModelParameters&,
                                                 RandomSource& rng) const {
    return StatePoint{1 + draw_categorical(rng, spec_.transition.row(prev.regime - 1)), 0.0};
}

double DiscreteHmmModel::simulate_observation(const StatePoint& x, const ModelParameters&,
                                              RandomSource& rng) const {
    return draw_normal(rng, spec_.obs_mean[x.regime - 1], std::sqrt(spec_.obs_var[x.regime - 1]));
}

}  // namespace gridpg
