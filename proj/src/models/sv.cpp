#include "gridpg/models/sv.hpp"

#include <cmath>

#include "gridpg/common.hpp"

namespace gridpg {

namespace {

inline double regime_log_prob(int from, int to, double pi11) {
    // pi22 = pi11: staying has probability pi11 in either regime.
    return (from == to) ? std::log(pi11) : std::log(1.0 - pi11);
}

inline double gamma_of(const ModelParameters& th, int regime) {
    return regime == 1 ? th[SvModel::kGamma1] : th[SvModel::kGamma2];
}

inline StatePoint pre_sample_point(const ModelParameters& th) {
    return StatePoint{1, th[SvModel::kMu]};  // (s_0, x_0)
}

}  // namespace

void SvModel::validate(const ModelParameters& theta) const {
    if (theta.values.size() != kParamCount)
        throw ParameterDomainError("sv: expected 6 parameters");
    if (!(theta[kSigma2Eta] > 0.0))
        throw ParameterDomainError("sv: sigma2_eta must be positive");
    if (!(theta[kPi11] > 0.0 && theta[kPi11] < 1.0))
        throw ParameterDomainError("sv: pi11 must lie in (0, 1)");
    for (double v : theta.values)
        if (!std::isfinite(v)) throw ParameterDomainError("sv: non-finite parameter");
}

double SvModel::initial_log_density(const StatePoint& x1, const ModelParameters& theta) const {
    return transition_log_density(x1, pre_sample_point(theta), theta);
}

double SvModel::transition_log_density(const StatePoint& x, const StatePoint& prev,
                                       const ModelParameters& theta) const {
    if (x.regime < 1 || x.regime > 2) return kNegInf;
    const double mean = gamma_of(theta, x.regime) +
                        theta[kPhi] * (prev.value - gamma_of(theta, prev.regime));
    return regime_log_prob(prev.regime, x.regime, theta[kPi11]) +
           normal_logpdf(x.value, mean, theta[kSigma2Eta]);
}

double SvModel::observation_log_density(double y, const StatePoint& x,
                                        const ModelParameters& theta) const {
    (void)theta;
    return normal_logpdf(y, 0.0, std::exp(x.value));
}

StatePoint SvModel::simulate_initial(const ModelParameters& theta, RandomSource& rng) const {
    return simulate_transition(pre_sample_point(theta), theta, rng);
}

StatePoint SvModel::simulate_transition(const StatePoint& prev, const ModelParameters& theta,
                                        RandomSource& rng) const {
    const double pi11 = theta[kPi11];
    const double stay = pi11;
    const double probs[2] = {prev.regime == 1 ? stay : 1.0 - stay,
                             prev.regime == 2 ? stay : 1.0 - stay};
    const int regime = 1 + draw_categorical(rng, probs);
    const double mean =
        gamma_of(theta, regime) + theta[kPhi] * (prev.value - gamma_of(theta, prev.regime));
    return StatePoint{regime, draw_normal(rng, mean, std::sqrt(theta[kSigma2Eta]))};
}

double SvModel::simulate_observation(const StatePoint& x, const ModelParameters& theta,
                                     RandomSource& rng) const {
    (void)theta;
    return draw_normal(rng, 0.0, std::exp(0.5 * x.value));
}

std::optional<Matrix> SvModel::regime_transition_matrix(const ModelParameters& theta) const {
    Matrix m(2, 2);
    m(0, 0) = m(1, 1) = theta[kPi11];
    m(0, 1) = m(1, 0) = 1.0 - theta[kPi11];
    return m;
}

std::pair<double, double> sv_log_densities(const StatePoint& x_t, const StatePoint& x_prev,
                                           double y_t, const ModelParameters& theta) {
    SvModel model;
    model.validate(theta);
    return {model.transition_log_density(x_t, x_prev, theta),
            model.observation_log_density(y_t, x_t, theta)};
}

namespace {

// Walks the transition terms t = 1..T, presenting each as (prev, cur) with
// the (x_0, s_0) = (mu, 1) convention at t = 1.
template <typename F>
void for_each_transition(const ModelParameters& theta, const StatePath& path, F&& f) {
    StatePoint prev = pre_sample_point(theta);
    for (const StatePoint& cur : path) {
        f(prev, cur);
        prev = cur;
    }
}

// Gaussian full conditional for a parameter entering every residual
// linearly: e_t = r_t + coef_t * param, residuals N(0, sigma2).
double draw_linear_gaussian_conditional(double prior_mean, double prior_var, double sigma2,
                                        std::span<const double> coef, std::span<const double> rest,
                                        RandomSource& rng) {
    double precision = 1.0 / prior_var;
    double shift = prior_mean / prior_var;
    for (size_t t = 0; t < coef.size(); ++t) {
        precision += coef[t] * coef[t] / sigma2;
        shift -= coef[t] * rest[t] / sigma2;
    }
    return draw_normal(rng, shift / precision, std::sqrt(1.0 / precision));
}

double draw_gamma_conditional(int which, const ModelParameters& theta, const StatePath& path,
                              double prior_mean, double prior_var, RandomSource& rng) {
    const double phi = theta[SvModel::kPhi];
    const double other = which == 1 ? theta[SvModel::kGamma2] : theta[SvModel::kGamma1];
    std::vector<double> coef, rest;
    coef.reserve(path.size());
    rest.reserve(path.size());
    for_each_transition(theta, path, [&](const StatePoint& prev, const StatePoint& cur) {
        const double a = -(cur.regime == which ? 1.0 : 0.0) + phi * (prev.regime == which ? 1.0 : 0.0);
        const double r = cur.value - phi * prev.value - (cur.regime == which ? 0.0 : other) +
                         phi * (prev.regime == which ? 0.0 : other);
        coef.push_back(a);
        rest.push_back(r);
    });
    return draw_linear_gaussian_conditional(prior_mean, prior_var, theta[SvModel::kSigma2Eta], coef,
                                            rest, rng);
}

double residual_sum_of_squares(const ModelParameters& theta, const StatePath& path) {
    const double phi = theta[SvModel::kPhi];
    double rss = 0.0;
    for_each_transition(theta, path, [&](const StatePoint& prev, const StatePoint& cur) {
        const double e =
            cur.value - gamma_of(theta, cur.regime) - phi * (prev.value - gamma_of(theta, prev.regime));
        rss += e * e;
    });
    return rss;
}

}  // namespace

double sv_draw_gamma1(const ModelParameters& theta, const StatePath& path, const SvPriors& priors,
                      RandomSource& rng) {
    return draw_gamma_conditional(1, theta, path, priors.gamma1_mean, priors.gamma1_var, rng);
}

double sv_draw_gamma2(const ModelParameters& theta, const StatePath& path, const SvPriors& priors,
                      RandomSource& rng) {
    return draw_gamma_conditional(2, theta, path, priors.gamma2_mean, priors.gamma2_var, rng);
}

double sv_draw_phi(const ModelParameters& theta, const StatePath& path, const SvPriors& priors,
                   RandomSource& rng) {
    // e_t = u_t - phi * z_t with u_t = x_t - gamma_{s_t}, z_t = x_{t-1} - gamma_{s_{t-1}}.
    std::vector<double> coef, rest;
    coef.reserve(path.size());
    rest.reserve(path.size());
    for_each_transition(theta, path, [&](const StatePoint& prev, const StatePoint& cur) {
        coef.push_back(-(prev.value - gamma_of(theta, prev.regime)));
        rest.push_back(cur.value - gamma_of(theta, cur.regime));
    });
    return draw_linear_gaussian_conditional(priors.phi_mean, priors.phi_var,
                                            theta[SvModel::kSigma2Eta], coef, rest, rng);
}

double sv_draw_mu(const ModelParameters& theta, const StatePath& path, const SvPriors& priors,
                  RandomSource& rng) {
    // mu enters only the t = 1 residual: e_1 = (x_1 - gamma_{s_1} + phi*gamma_1) - phi*mu.
    const double phi = theta[SvModel::kPhi];
    const StatePoint& x1 = path.front();
    const double coef = -phi;
    const double rest = x1.value - gamma_of(theta, x1.regime) + phi * theta[SvModel::kGamma1];
    return draw_linear_gaussian_conditional(priors.mu_mean, priors.mu_var,
                                            theta[SvModel::kSigma2Eta], {&coef, 1}, {&rest, 1}, rng);
}

double sv_draw_sigma2(const ModelParameters& theta, const StatePath& path, const SvPriors& priors,
                      RandomSource& rng) {
    const double shape = priors.sigma2_shape + 0.5 * static_cast<double>(path.size());
    const double rate = priors.sigma2_rate + 0.5 * residual_sum_of_squares(theta, path);
    return draw_inverse_gamma(rng, shape, rate);
}

double sv_draw_pi11(const ModelParameters& theta, const StatePath& path, const SvPriors& priors,
                    RandomSource& rng) {
    (void)theta;
    // pi22 = pi11 pools self-transitions of both regimes, counting s_0 = 1.
    int stay = 0;
    int prev = 1;
    for (const StatePoint& p : path) {
        if (p.regime == prev) ++stay;
        prev = p.regime;
    }
    const int switched = static_cast<int>(path.size()) - stay;
    return draw_beta(rng, priors.pi11_a + stay, priors.pi11_b + switched);
}

ModelParameters sv_gibbs_update(const ModelParameters& theta, const StatePath& path,
                                const ObservationSeries& y, const SvPriors& priors,
                                RandomSource& rng) {
    (void)y;  // observations enter the conditionals only through the path
    ModelParameters th = theta;
    th[SvModel::kGamma1] = sv_draw_gamma1(th, path, priors, rng);
    th[SvModel::kGamma2] = sv_draw_gamma2(th, path, priors, rng);
    th[SvModel::kPhi] = sv_draw_phi(th, path, priors, rng);
    th[SvModel::kSigma2Eta] = sv_draw_sigma2(th, path, priors, rng);
    th[SvModel::kMu] = sv_draw_mu(th, path, priors, rng);
    th[SvModel::kPi11] = sv_draw_pi11(th, path, priors, rng);
    return th;
}

}  // namespace gridpg
