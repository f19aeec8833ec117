#include <doctest.h>

#include <cmath>
#include <functional>

#include "gridpg/models/sv.hpp"
#include "gridpg/numeric.hpp"
#include "gridpg/random.hpp"
#include "gridpg/ssm.hpp"
#include "support/test_rigs.hpp"

using namespace gridpg;

namespace {

constexpr int kAuditDraws = 10000;
constexpr double kKsBound = 0.02;

// Log unnormalized full conditional of one parameter, assembled from the
// model densities themselves so the audit stays independent of the conjugate
// algebra inside the samplers.
double sv_conditional_logpdf(const SvModel& model, ModelParameters theta, const StatePath& path,
                             const SvPriors& priors, int index, double value) {
    theta[index] = value;
    double lp = 0.0;
    switch (index) {
        case SvModel::kGamma1: lp = normal_logpdf(value, priors.gamma1_mean, priors.gamma1_var); break;
        case SvModel::kGamma2: lp = normal_logpdf(value, priors.gamma2_mean, priors.gamma2_var); break;
        case SvModel::kPhi: lp = normal_logpdf(value, priors.phi_mean, priors.phi_var); break;
        case SvModel::kSigma2Eta:
            lp = -(priors.sigma2_shape + 1.0) * std::log(value) - priors.sigma2_rate / value;
            break;
        case SvModel::kMu: lp = normal_logpdf(value, priors.mu_mean, priors.mu_var); break;
        case SvModel::kPi11:
            lp = (priors.pi11_a - 1.0) * std::log(value) + (priors.pi11_b - 1.0) * std::log(1.0 - value);
            break;
    }
    lp += model.initial_log_density(path[0], theta);
    for (size_t t = 1; t < path.size(); ++t)
        lp += model.transition_log_density(path[t], path[t - 1], theta);
    return lp;
}

double audit_ks(const SvModel& model, const ModelParameters& theta, const StatePath& path,
                const SvPriors& priors, int index,
                const std::function<double(RandomSource&)>& draw, std::uint64_t seed,
                bool positive = false, bool unit_interval = false) {
    RngStream rng(seed);
    std::vector<double> samples(kAuditDraws);
    for (double& s : samples) s = draw(rng);

    double lo = samples[0], hi = samples[0];
    for (double s : samples) {
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    const double pad = 0.5 * (hi - lo) + 1e-6;
    lo -= pad;
    hi += pad;
    if (positive) lo = std::max(lo, 1e-12);
    if (unit_interval) {
        lo = std::max(lo, 1e-9);
        hi = std::min(hi, 1.0 - 1e-9);
    }

    const testing::QuadratureCdf cdf = testing::quadrature_cdf(
        [&](double v) { return sv_conditional_logpdf(model, theta, path, priors, index, v); }, lo,
        hi, 8001);
    return testing::ks_statistic(samples, [&](double x) { return cdf.value(x); });
}

struct Fixture {
    ModelParameters theta;
    StatePath path;
};

Fixture make_fixture(std::uint64_t seed) {
    SvModel model;
    RngStream rng(seed);
    const ModelParameters sim_theta = SvModel::make_params(
        draw_normal(rng, -5.0, 1.0), draw_normal(rng, 5.0, 1.0), 0.8 + 0.15 * rng.uniform(),
        0.05 + 0.3 * rng.uniform(), draw_normal(rng, 1.0, 0.5), 0.7 + 0.25 * rng.uniform());
    auto [path, y] = simulate_dataset(model, sim_theta, 60, seed * 13 + 1);
    (void)y;
    // Condition at parameters jittered away from the simulation values.
    ModelParameters theta = sim_theta;
    theta[SvModel::kGamma1] += draw_normal(rng, 0.0, 0.3);
    theta[SvModel::kGamma2] += draw_normal(rng, 0.0, 0.3);
    theta[SvModel::kPhi] += draw_normal(rng, 0.0, 0.02);
    theta[SvModel::kSigma2Eta] *= 0.8 + 0.4 * rng.uniform();
    theta[SvModel::kMu] += draw_normal(rng, 0.0, 0.3);
    return Fixture{theta, path};
}

}  // namespace

TEST_CASE("every sv full conditional matches 1-D quadrature of the model density") {
    SvModel model;
    const SvPriors priors;
    for (std::uint64_t fixture_seed = 1; fixture_seed <= 5; ++fixture_seed) {
        const Fixture fx = make_fixture(fixture_seed);
        CAPTURE(fixture_seed);

        CHECK(audit_ks(model, fx.theta, fx.path, priors, SvModel::kGamma1,
                       [&](RandomSource& rng) {
                           return sv_draw_gamma1(fx.theta, fx.path, priors, rng);
                       },
                       1000 + fixture_seed) < kKsBound);
        CHECK(audit_ks(model, fx.theta, fx.path, priors, SvModel::kGamma2,
                       [&](RandomSource& rng) {
                           return sv_draw_gamma2(fx.theta, fx.path, priors, rng);
                       },
                       2000 + fixture_seed) < kKsBound);
        CHECK(audit_ks(model, fx.theta, fx.path, priors, SvModel::kPhi,
                       [&](RandomSource& rng) { return sv_draw_phi(fx.theta, fx.path, priors, rng); },
                       3000 + fixture_seed) < kKsBound);
        CHECK(audit_ks(model, fx.theta, fx.path, priors, SvModel::kSigma2Eta,
                       [&](RandomSource& rng) {
                           return sv_draw_sigma2(fx.theta, fx.path, priors, rng);
                       },
                       4000 + fixture_seed, /*positive=*/true) < kKsBound);
        CHECK(audit_ks(model, fx.theta, fx.path, priors, SvModel::kMu,
                       [&](RandomSource& rng) { return sv_draw_mu(fx.theta, fx.path, priors, rng); },
                       5000 + fixture_seed) < kKsBound);
        CHECK(audit_ks(model, fx.theta, fx.path, priors, SvModel::kPi11,
                       [&](RandomSource& rng) {
                           return sv_draw_pi11(fx.theta, fx.path, priors, rng);
                       },
                       6000 + fixture_seed, /*positive=*/false, /*unit_interval=*/true) < kKsBound);
    }
}

TEST_CASE("sigma2 conditional matches the closed-form inverse gamma") {
    SvModel model;
    const SvPriors priors;
    const Fixture fx = make_fixture(7);
    const int T = static_cast<int>(fx.path.size());

    // Residual sum of squares computed straight from the recursion.
    double rss = 0.0;
    StatePoint prev{1, fx.theta[SvModel::kMu]};
    for (const StatePoint& cur : fx.path) {
        const double g_cur = cur.regime == 1 ? fx.theta[SvModel::kGamma1] : fx.theta[SvModel::kGamma2];
        const double g_prev =
            prev.regime == 1 ? fx.theta[SvModel::kGamma1] : fx.theta[SvModel::kGamma2];
        const double e = cur.value - g_cur - fx.theta[SvModel::kPhi] * (prev.value - g_prev);
        rss += e * e;
        prev = cur;
    }
    const double shape = priors.sigma2_shape + 0.5 * T;
    const double rate = priors.sigma2_rate + 0.5 * rss;

    RngStream rng(81);
    const int n = 20000;
    double mean = 0.0;
    std::vector<double> samples(n);
    for (double& s : samples) {
        s = sv_draw_sigma2(fx.theta, fx.path, priors, rng);
        mean += s;
    }
    mean /= n;
    // InvGamma(shape, rate): mean = rate / (shape - 1).
    CHECK(mean == doctest::Approx(rate / (shape - 1.0)).epsilon(0.02));

    const double ks = testing::ks_statistic(samples, [&](double x) {
        // CDF via quadrature of the density on a fixed range.
        static testing::QuadratureCdf cdf = testing::quadrature_cdf(
            [&](double v) { return -(shape + 1.0) * std::log(v) - rate / v; }, 1e-4, 3.0, 20001);
        return cdf.value(x);
    });
    CHECK(ks < kKsBound);
}

TEST_CASE("pi11 posterior with no transition data equals the prior") {
    const SvPriors priors;
    const ModelParameters theta = SvModel::make_params(-5, 5, 0.95, 0.1, 1, 0.85);
    const StatePath empty;

    RngStream rng(55);
    std::vector<double> samples(kAuditDraws);
    for (double& s : samples) s = sv_draw_pi11(theta, empty, priors, rng);

    const testing::QuadratureCdf cdf = testing::quadrature_cdf(
        [&](double v) {
            return (priors.pi11_a - 1.0) * std::log(v) + (priors.pi11_b - 1.0) * std::log(1.0 - v);
        },
        1e-9, 1.0 - 1e-9, 20001);
    CHECK(testing::ks_statistic(samples, [&](double x) { return cdf.value(x); }) < kKsBound);
}

TEST_CASE("pi11 prior has mean 0.85 and variance 0.01") {
    const SvPriors priors;
    const double a = priors.pi11_a, b = priors.pi11_b;
    const double mean = a / (a + b);
    const double var = a * b / ((a + b) * (a + b) * (a + b + 1.0));
    CHECK(std::abs(mean - 0.85) < 1e-3);
    CHECK(std::abs(var - 0.01) < 1e-3);
}

TEST_CASE("gibbs update is deterministic given the stream and keeps the domain") {
    SvModel model;
    const SvPriors priors;
    const Fixture fx = make_fixture(3);
    ObservationSeries y;
    y.values.assign(fx.path.size(), 0.1);

    RngStream r1(17), r2(17);
    const ModelParameters a = sv_gibbs_update(fx.theta, fx.path, y, priors, r1);
    const ModelParameters b = sv_gibbs_update(fx.theta, fx.path, y, priors, r2);
    CHECK(a == b);
    CHECK(a[SvModel::kSigma2Eta] > 0.0);
    CHECK(a[SvModel::kPi11] > 0.0);
    CHECK(a[SvModel::kPi11] < 1.0);
    model.validate(a);
}
