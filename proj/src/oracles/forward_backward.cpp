#include "gridpg/oracles/forward_backward.hpp"

#include <cmath>

#include "gridpg/common.hpp"
#include "gridpg/numeric.hpp"

namespace gridpg {

namespace {

std::vector<std::vector<double>> gaussian_loglik(const DiscreteHmmSpec& spec,
                                                 const std::vector<double>& y) {
    std::vector<std::vector<double>> loglik(y.size(), std::vector<double>(spec.state_count));
    for (size_t t = 0; t < y.size(); ++t)
        for (int k = 0; k < spec.state_count; ++k)
            loglik[t][k] = normal_logpdf(y[t], spec.obs_mean[k], spec.obs_var[k]);
    return loglik;
}

}  // namespace

HmmMarginals hmm_forward_backward_loglik(const DiscreteHmmSpec& spec,
                                         const std::vector<std::vector<double>>& loglik) {
    spec.check();
    const int T = static_cast<int>(loglik.size());
    const int K = spec.state_count;
    if (T < 1) throw ConfigError("forward_backward: empty series");

    HmmMarginals out;
    out.filtering.assign(T, std::vector<double>(K, 0.0));
    out.smoothing.assign(T, std::vector<double>(K, 0.0));

    // Forward pass with per-step normalization; each log-likelihood column is
    // shifted by its max so the scaling stays bounded.
    std::vector<double> alpha(K), next(K);
    for (int t = 0; t < T; ++t) {
        double shift = kNegInf;
        for (int k = 0; k < K; ++k) shift = std::max(shift, loglik[t][k]);
        if (shift == kNegInf) throw DegenerateWeightsError("forward_backward: zero likelihood column");
        for (int k = 0; k < K; ++k) {
            const double prior =
                t == 0 ? spec.initial[k] : [&] {
                    double s = 0.0;
                    for (int j = 0; j < K; ++j) s += alpha[j] * spec.transition(j, k);
                    return s;
                }();
            next[k] = prior * std::exp(loglik[t][k] - shift);
        }
        double norm = 0.0;
        for (int k = 0; k < K; ++k) norm += next[k];
        if (!(norm > 0.0)) throw DegenerateWeightsError("forward_backward: vanished forward mass");
        for (int k = 0; k < K; ++k) alpha[k] = next[k] / norm;
        out.filtering[t] = alpha;
        out.log_evidence += std::log(norm) + shift;
    }

    // Backward pass on the scaled betas.
    std::vector<double> beta(K, 1.0), beta_next(K);
    for (int t = T - 1; t >= 0; --t) {
        double norm = 0.0;
        for (int k = 0; k < K; ++k) {
            out.smoothing[t][k] = out.filtering[t][k] * beta[k];
            norm += out.smoothing[t][k];
        }
        for (int k = 0; k < K; ++k) out.smoothing[t][k] /= norm;
        if (t == 0) break;
        double shift = kNegInf;
        for (int k = 0; k < K; ++k) shift = std::max(shift, loglik[t][k]);
        double bnorm = 0.0;
        for (int j = 0; j < K; ++j) {
            double s = 0.0;
            for (int k = 0; k < K; ++k)
                s += spec.transition(j, k) * std::exp(loglik[t][k] - shift) * beta[k];
            beta_next[j] = s;
            bnorm = std::max(bnorm, s);
        }
        for (int j = 0; j < K; ++j) beta[j] = beta_next[j] / bnorm;
    }
    return out;
}

HmmMarginals hmm_forward_backward(const DiscreteHmmSpec& spec, const std::vector<double>& y) {
    return hmm_forward_backward_loglik(spec, gaussian_loglik(spec, y));
}

int PathDistribution::index_of(const std::vector<int>& states) const {
    int idx = 0;
    for (int t = 0; t < T; ++t) idx = idx * state_count + (states[t] - 1);
    return idx;
}

std::vector<int> PathDistribution::states_of(int index) const {
    std::vector<int> states(T);
    for (int t = T - 1; t >= 0; --t) {
        states[t] = index % state_count + 1;
        index /= state_count;
    }
    return states;
}

PathDistribution enumerate_small_posterior(const DiscreteHmmSpec& spec,
                                           const std::vector<double>& y) {
    spec.check();
    const int T = static_cast<int>(y.size());
    const int K = spec.state_count;
    double paths = 1.0;
    for (int t = 0; t < T; ++t) paths *= K;
    if (paths > 1e4) throw ConfigError("enumerate_small_posterior: K^T exceeds 10^4");

    const auto loglik = gaussian_loglik(spec, y);
    PathDistribution out;
    out.state_count = K;
    out.T = T;
    const int total = static_cast<int>(paths);
    out.probability.assign(total, 0.0);

    std::vector<double> logp(total);
    for (int idx = 0; idx < total; ++idx) {
        const auto states = out.states_of(idx);
        double lp = std::log(spec.initial[states[0] - 1]) + loglik[0][states[0] - 1];
        for (int t = 1; t < T; ++t) {
            const double p = spec.transition(states[t - 1] - 1, states[t] - 1);
            lp += (p > 0.0 ? std::log(p) : kNegInf) + loglik[t][states[t] - 1];
        }
        logp[idx] = lp;
    }
    if (!normalize_log_weights(logp, out.probability))
        throw DegenerateWeightsError("enumerate_small_posterior: zero posterior mass");
    return out;
}

}  // namespace gridpg
