#include <doctest.h>

#include <cmath>

#include "gridpg/common.hpp"
#include "gridpg/models/discrete_hmm.hpp"
#include "gridpg/models/linear_gaussian.hpp"
#include "gridpg/models/sv.hpp"
#include "gridpg/numeric.hpp"
#include "gridpg/random.hpp"
#include "gridpg/ssm.hpp"
#include "support/test_rigs.hpp"

using namespace gridpg;

TEST_CASE("log_sum_exp handles shifts and empty mass") {
    const double v[] = {std::log(0.25), std::log(0.5), std::log(0.25)};
    CHECK(log_sum_exp(v) == doctest::Approx(0.0).epsilon(1e-12));

    const double huge[] = {1000.0, 1000.0};
    CHECK(log_sum_exp(huge) == doctest::Approx(1000.0 + std::log(2.0)));

    const double none[] = {kNegInf, kNegInf};
    CHECK(log_sum_exp(none) == kNegInf);
    double out[2];
    CHECK_FALSE(normalize_log_weights(none, out));
}

TEST_CASE("normal_quantile inverts the erfc-based CDF") {
    CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-14));
    for (double p : {1e-10, 1e-4, 0.025, 0.2, 0.5, 0.8, 0.975, 1.0 - 1e-4}) {
        CHECK(normal_cdf(normal_quantile(p)) == doctest::Approx(p).epsilon(1e-11));
    }
}

TEST_CASE("rng streams are pure and splittable") {
    RngStream a(42);
    RngStream b = a;  // cloned state
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    RngStream root(7);
    RngStream c1 = root.child(1, 2);
    RngStream c2 = root.child(1, 2);
    RngStream c3 = root.child(1, 3);
    CHECK(c1.next_u64() == c2.next_u64());
    CHECK(c1.next_u64() != c3.next_u64());

    // Draw helpers are stateless given the stream position.
    RngStream d1(9), d2(9);
    CHECK(draw_normal(d1, 1.0, 2.0) == draw_normal(d2, 1.0, 2.0));
    CHECK(draw_gamma(d1, 2.5, 0.5) == draw_gamma(d2, 2.5, 0.5));
    CHECK(draw_beta(d1, 9.9875, 1.7625) == draw_beta(d2, 9.9875, 1.7625));
}

TEST_CASE("distribution draws have the right first moments") {
    RngStream rng(1234);
    const int n = 200000;
    double sn = 0, sg = 0, sg2 = 0, sb = 0;
    for (int i = 0; i < n; ++i) {
        sn += draw_normal(rng, 2.0, 3.0);
        const double g = draw_gamma(rng, 2.01, 1.0 / 0.101);
        sg += g;
        sg2 += g * g;
        sb += draw_beta(rng, 9.9875, 1.7625);
    }
    CHECK(sn / n == doctest::Approx(2.0).epsilon(0.02));
    // Gamma(shape, scale): mean = shape*scale, var = shape*scale^2.
    CHECK(sg / n == doctest::Approx(2.01 / 0.101).epsilon(0.02));
    CHECK(sg2 / n - (sg / n) * (sg / n) == doctest::Approx(2.01 / (0.101 * 0.101)).epsilon(0.1));
    CHECK(sb / n == doctest::Approx(0.85).epsilon(0.01));
}

TEST_CASE("truncated normal draws stay in range and match the analytic CDF") {
    RngStream rng(5);
    const double mean = -13.5, sd = std::sqrt(2.4), bound = -12.0;
    std::vector<double> below(20000);
    for (double& x : below) {
        x = draw_truncated_normal_below(rng, mean, sd, bound);
        REQUIRE(x < bound);
    }
    const double cap = normal_cdf((bound - mean) / sd);
    const double ks =
        testing::ks_statistic(below, [&](double x) { return normal_cdf((x - mean) / sd) / cap; });
    CHECK(ks < 0.015);

    std::vector<double> above(20000);
    for (double& x : above) {
        x = draw_truncated_normal_above(rng, 13.5, sd, 12.0);
        REQUIRE(x >= 12.0);
    }
    const double base = normal_cdf((12.0 - 13.5) / sd);
    const double ks2 = testing::ks_statistic(above, [&](double x) {
        return (normal_cdf((x - 13.5) / sd) - base) / (1.0 - base);
    });
    CHECK(ks2 < 0.015);
}

TEST_CASE("sv log densities match an independently coded evaluator") {
    const ModelParameters theta = SvModel::make_params(-5.0, 5.0, 0.95, 0.1, 1.0, 0.85);

    SUBCASE("at-mode transition term") {
        const StatePoint prev{1, -5.0}, cur{1, -5.0};
        const auto [trans, obs] = sv_log_densities(cur, prev, 0.0, theta);
        (void)obs;
        CHECK(trans - std::log(0.85) ==
              doctest::Approx(-0.5 * std::log(2.0 * M_PI * 0.1)).epsilon(1e-12));
    }

    SUBCASE("standard normal observation at zero") {
        const auto [trans, obs] = sv_log_densities({1, 0.0}, {1, 0.0}, 0.0, theta);
        (void)trans;
        CHECK(obs == doctest::Approx(-0.5 * std::log(2.0 * M_PI)).epsilon(1e-12));
    }

    SUBCASE("random triples against the straight-line formula") {
        RngStream rng(77);
        for (int i = 0; i < 50; ++i) {
            const StatePoint prev{1 + (rng.next_u64() % 2 == 0 ? 0 : 1),
                                  draw_normal(rng, 0.0, 4.0)};
            const StatePoint cur{1 + (rng.next_u64() % 2 == 0 ? 0 : 1), draw_normal(rng, 0.0, 4.0)};
            const double y = draw_normal(rng, 0.0, 2.0);
            const auto [trans, obs] = sv_log_densities(cur, prev, y, theta);

            const double gamma_cur = cur.regime == 1 ? -5.0 : 5.0;
            const double gamma_prev = prev.regime == 1 ? -5.0 : 5.0;
            const double mean = gamma_cur + 0.95 * (prev.value - gamma_prev);
            const double want_trans =
                std::log(prev.regime == cur.regime ? 0.85 : 0.15) -
                0.5 * (std::log(2.0 * M_PI * 0.1) + (cur.value - mean) * (cur.value - mean) / 0.1);
            const double want_obs =
                -0.5 * (std::log(2.0 * M_PI) + cur.value + y * y * std::exp(-cur.value));
            CHECK(trans == doctest::Approx(want_trans).epsilon(1e-12));
            CHECK(obs == doctest::Approx(want_obs).epsilon(1e-12));
        }
    }
}

TEST_CASE("transition densities integrate to one over the joint next state") {
    // Fine quadrature over the continuous state, summed over next regimes.
    auto total_mass = [](const SsmModel& model, const ModelParameters& theta,
                         const StatePoint& prev) {
        const int points = 40001;
        const double lo = -60.0, hi = 60.0;
        double mass = 0.0;
        for (int r = 1; r <= model.regime_count(); ++r) {
            double acc = 0.0;
            for (int i = 0; i < points; ++i) {
                const double x = lo + (hi - lo) * i / (points - 1);
                const double f = std::exp(model.transition_log_density({r, x}, prev, theta));
                acc += (i == 0 || i == points - 1) ? 0.5 * f : f;
            }
            mass += acc * (hi - lo) / (points - 1);
        }
        return mass;
    };

    SvModel sv;
    const ModelParameters theta_sv = SvModel::make_params(-5.0, 5.0, 0.95, 0.1, 1.0, 0.85);
    CHECK(total_mass(sv, theta_sv, {1, -4.0}) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(total_mass(sv, theta_sv, {2, 6.5}) == doctest::Approx(1.0).epsilon(1e-6));

    LinearGaussianModel lg;
    const ModelParameters theta_lg = LinearGaussianModel::make_params(KalmanModelSpec{});
    CHECK(total_mass(lg, theta_lg, {1, 0.7}) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("simulate_dataset is reproducible and validates parameters") {
    SvModel sv;
    const ModelParameters theta = SvModel::make_params(-5.0, 5.0, 0.95, 0.1, 1.0, 0.85);
    const auto [path1, y1] = simulate_dataset(sv, theta, 100, 99);
    const auto [path2, y2] = simulate_dataset(sv, theta, 100, 99);
    CHECK(path1 == path2);
    CHECK(y1.values == y2.values);

    CHECK_THROWS_AS(simulate_dataset(sv, SvModel::make_params(-5, 5, 0.95, -1.0, 1, 0.85), 10, 1),
                    ParameterDomainError);
    CHECK_THROWS_AS(simulate_dataset(sv, SvModel::make_params(-5, 5, 0.95, 0.1, 1, 1.5), 10, 1),
                    ParameterDomainError);
    CHECK_THROWS_AS(simulate_dataset(sv, theta, 0, 1), ConfigError);
}

TEST_CASE("sv dataset shows the two-level volatility structure") {
    SvModel sv;
    const ModelParameters theta = SvModel::make_params(-5.0, 5.0, 0.95, 0.1, 1.0, 0.85);
    const auto [path, y] = simulate_dataset(sv, theta, 500, 2024);
    CHECK(y.length() == 500);

    int in_regime2 = 0;
    double mean1 = 0.0, mean2 = 0.0;
    for (const StatePoint& p : path) {
        if (p.regime == 2) {
            ++in_regime2;
            mean2 += p.value;
        } else {
            mean1 += p.value;
        }
    }
    const int in_regime1 = 500 - in_regime2;
    REQUIRE(in_regime1 > 50);
    REQUIRE(in_regime2 > 50);
    mean1 /= in_regime1;
    mean2 /= in_regime2;
    CHECK(mean2 - mean1 > 5.0);  // levels near -5 and +5
}

TEST_CASE("near-degenerate linear-gaussian noise pins the path at zero") {
    LinearGaussianModel lg;
    KalmanModelSpec spec;
    spec.state_coef = 1.0;
    spec.state_var = 1e-12;
    spec.obs_var = 1e-12;
    spec.init_mean = 0.0;
    spec.init_var = 1e-12;
    const auto [path, y] = simulate_dataset(lg, LinearGaussianModel::make_params(spec), 50, 3);
    for (const StatePoint& p : path) CHECK(std::abs(p.value) < 1e-4);
    for (double v : y.values) CHECK(std::abs(v) < 1e-4);
}

TEST_CASE("discrete dataset matches a hand-rolled ancestral simulation") {
    DiscreteHmmSpec spec;
    spec.state_count = 2;
    spec.initial = {0.3, 0.7};
    spec.transition = Matrix(2, 2);
    spec.transition(0, 0) = 0.9;
    spec.transition(0, 1) = 0.1;
    spec.transition(1, 0) = 0.4;
    spec.transition(1, 1) = 0.6;
    spec.obs_mean = {-1.0, 2.0};
    spec.obs_var = {0.5, 1.5};
    DiscreteHmmModel model(spec);

    const std::uint64_t seed = 314;
    const auto [path, y] = simulate_dataset(model, ModelParameters{}, 40, seed);

    // Straight-line simulator using the same stream and draw order.
    RngStream rng(seed);
    std::vector<int> want_states;
    std::vector<double> want_y;
    int state = draw_categorical(rng, spec.initial);
    want_states.push_back(state + 1);
    want_y.push_back(draw_normal(rng, spec.obs_mean[state], std::sqrt(spec.obs_var[state])));
    for (int t = 1; t < 40; ++t) {
        state = draw_categorical(rng, spec.transition.row(state));
        want_states.push_back(state + 1);
        want_y.push_back(draw_normal(rng, spec.obs_mean[state], std::sqrt(spec.obs_var[state])));
    }
    for (int t = 0; t < 40; ++t) {
        CHECK(path[t].regime == want_states[t]);
        CHECK(path[t].value == 0.0);
        CHECK(y.values[t] == want_y[t]);
    }
}

TEST_CASE("sv regime chain is symmetric in its stationary distribution") {
    SvModel sv;
    const ModelParameters theta = SvModel::make_params(-5.0, 5.0, 0.95, 0.1, 1.0, 0.85);
    RngStream rng(11);
    const int T = 100000;
    StatePoint x = sv.simulate_initial(theta, rng);
    long regime1 = x.regime == 1;
    for (int t = 1; t < T; ++t) {
        x = sv.simulate_transition(x, theta, rng);
        regime1 += x.regime == 1;
    }
    const double freq = static_cast<double>(regime1) / T;
    const double se = std::sqrt(0.25 / T);
    CHECK(std::abs(freq - 0.5) < 3.0 * se);
}
