#pragma once

#include <utility>

#include "gridpg/ssm.hpp"

namespace gridpg {

// Two-regime stochastic volatility model.
//
// Latent dynamics, with regime labels s_t in {1, 2}:
//   x_t = gamma_{s_t} + phi * (x_{t-1} - gamma_{s_{t-1}}) + eta_t,
//   eta_t ~ N(0, sigma2_eta),  P(s_t = j | s_{t-1} = i) = pi_ij,
// observations y_t ~ N(0, exp(x_t)), initial conditions x_0 = mu (a
// parameter, not a draw) and s_0 = 1, and equal regime persistence
// pi_22 = pi_11.
//
// Parameter layout: [gamma1, gamma2, phi, sigma2_eta, mu, pi11].
class SvModel final : public SsmModel {
public:
    enum Index { kGamma1 = 0, kGamma2 = 1, kPhi = 2, kSigma2Eta = 3, kMu = 4, kPi11 = 5 };
    static constexpr int kParamCount = 6;

    int regime_count() const override { return 2; }
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

    std::optional<Matrix> regime_transition_matrix(const ModelParameters& theta) const override;

    static ModelParameters make_params(double gamma1, double gamma2, double phi, double sigma2_eta,
                                       double mu, double pi11) {
        return ModelParameters{{gamma1, gamma2, phi, sigma2_eta, mu, pi11}};
    }
};

// Joint transition and observation log densities for one (x_{t-1}, x_t, y_t)
// triple, exposed for tests and diagnostics.
std::pair<double, double> sv_log_densities(const StatePoint& x_t, const StatePoint& x_prev,
                                           double y_t, const ModelParameters& theta);

// Independent priors for the SV parameters; Gaussians are parameterized by
// their variance.
struct SvPriors {
    double gamma1_mean = -5.0, gamma1_var = 10.0;
    double gamma2_mean = 5.0, gamma2_var = 10.0;
    double phi_mean = 0.95, phi_var = 1.0;
    double sigma2_shape = 2.01, sigma2_rate = 0.101;
    double mu_mean = 1.0, mu_var = 1.0;
    double pi11_a = 9.9875, pi11_b = 1.7625;
};

// One systematic-scan Gibbs update of every SV parameter from its full
// conditional given the latent path. Conditional derivations are written up
// in docs/sv_conditionals.md and audited against quadrature in the tests.
ModelParameters sv_gibbs_update(const ModelParameters& theta, const StatePath& path,
                                const ObservationSeries& y, const SvPriors& priors,
                                RandomSource& rng);

// Individual full-conditional draws, exposed so the quadrature audit can
// exercise each one in isolation. Each returns the sampled value only.
double sv_draw_gamma1(const ModelParameters& theta, const StatePath& path, const SvPriors& priors,
                      RandomSource& rng);
double sv_draw_gamma2(const ModelParameters& theta, const StatePath& path, const SvPriors& priors,
                      RandomSource& rng);
double sv_draw_phi(const ModelParameters& theta, const StatePath& path, const SvPriors& priors,
                   RandomSource& rng);
double sv_draw_mu(const ModelParameters& theta, const StatePath& path, const SvPriors& priors,
                  RandomSource& rng);
double sv_draw_sigma2(const ModelParameters& theta, const StatePath& path, const SvPriors& priors,
                      RandomSource& rng);
double sv_draw_pi11(const ModelParameters& theta, const StatePath& path, const SvPriors& priors,
                    RandomSource& rng);

}  // namespace gridpg
