#include <doctest.h>

#include <cmath>

#include "gridpg/common.hpp"
#include "gridpg/numeric.hpp"
#include "gridpg/oracles/forward_backward.hpp"
#include "gridpg/oracles/kalman.hpp"
#include "gridpg/random.hpp"
#include "support/test_rigs.hpp"

using namespace gridpg;

namespace {

DiscreteHmmSpec two_state_spec() {
    DiscreteHmmSpec spec;
    spec.state_count = 2;
    spec.initial = {0.6, 0.4};
    spec.transition = Matrix(2, 2);
    spec.transition(0, 0) = 0.8;
    spec.transition(0, 1) = 0.2;
    spec.transition(1, 0) = 0.3;
    spec.transition(1, 1) = 0.7;
    spec.obs_mean = {-1.0, 1.5};
    spec.obs_var = {1.0, 0.8};
    return spec;
}

}  // namespace

TEST_CASE("kalman smoother tracks observations when measurement noise vanishes") {
    KalmanModelSpec spec;
    spec.state_coef = 0.8;
    spec.state_var = 0.5;
    spec.obs_coef = 2.0;
    spec.obs_var = 1e-12;
    const std::vector<double> y = {1.0, -0.4, 2.2, 0.9};
    const KalmanMoments km = kalman_smoother(spec, y);
    for (size_t t = 0; t < y.size(); ++t)
        CHECK(km.smoothed_mean[t] == doctest::Approx(y[t] / 2.0).epsilon(1e-6));
}

TEST_CASE("kalman smoother at T=1 is the conjugate Bayes update") {
    KalmanModelSpec spec;
    spec.obs_coef = 1.5;
    spec.obs_var = 2.0;
    spec.init_mean = 0.3;
    spec.init_var = 4.0;
    const KalmanMoments km = kalman_smoother(spec, {1.1});
    const double precision = 1.0 / 4.0 + 1.5 * 1.5 / 2.0;
    const double mean = (0.3 / 4.0 + 1.5 * 1.1 / 2.0) / precision;
    CHECK(km.smoothed_mean[0] == doctest::Approx(mean).epsilon(1e-12));
    CHECK(km.smoothed_var[0] == doctest::Approx(1.0 / precision).epsilon(1e-12));
    CHECK(km.filtered_mean[0] == km.smoothed_mean[0]);
}

TEST_CASE("kalman smoother agrees with the dense joint-gaussian oracle") {
    RngStream rng(404);
    for (int rep = 0; rep < 5; ++rep) {
        KalmanModelSpec spec;
        spec.state_coef = draw_normal(rng, 0.7, 0.2);
        spec.state_var = 0.2 + rng.uniform();
        spec.obs_coef = 0.5 + rng.uniform();
        spec.obs_var = 0.2 + rng.uniform();
        spec.init_mean = draw_normal(rng, 0.0, 1.0);
        spec.init_var = 0.5 + rng.uniform();

        std::vector<double> y(20);
        for (double& v : y) v = draw_normal(rng, 0.0, 2.0);

        const KalmanMoments km = kalman_smoother(spec, y);
        const testing::DenseGaussianMoments dense = testing::dense_lg_smoother(spec, y);
        for (int t = 0; t < 20; ++t) {
            CHECK(km.smoothed_mean[t] == doctest::Approx(dense.mean[t]).epsilon(1e-8));
            CHECK(km.smoothed_var[t] == doctest::Approx(dense.var[t]).epsilon(1e-8));
        }
    }
}

TEST_CASE("forward-backward is uniform under a fully symmetric chain") {
    DiscreteHmmSpec spec;
    spec.state_count = 3;
    spec.initial = {1.0 / 3, 1.0 / 3, 1.0 / 3};
    spec.transition = Matrix(3, 3);
    for (int i = 0; i < 3; ++i) spec.transition(i, i) = 1.0;
    spec.obs_mean = {0.0, 0.0, 0.0};  // uninformative likelihood
    spec.obs_var = {1.0, 1.0, 1.0};
    const HmmMarginals m = hmm_forward_backward(spec, {0.3, -0.2, 0.9});
    for (const auto& row : m.smoothing)
        for (double p : row) CHECK(p == doctest::Approx(1.0 / 3).epsilon(1e-12));
}

TEST_CASE("forward-backward matches exhaustive path enumeration at K=2, T=3") {
    const DiscreteHmmSpec spec = two_state_spec();
    const std::vector<double> y = {0.4, -1.2, 1.9};
    const HmmMarginals m = hmm_forward_backward(spec, y);
    const PathDistribution paths = enumerate_small_posterior(spec, y);

    double total = 0.0;
    for (double p : paths.probability) total += p;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

    for (int t = 0; t < 3; ++t) {
        double marg[2] = {0.0, 0.0};
        for (size_t idx = 0; idx < paths.probability.size(); ++idx) {
            const auto states = paths.states_of(static_cast<int>(idx));
            marg[states[t] - 1] += paths.probability[idx];
        }
        CHECK(marg[0] == doctest::Approx(m.smoothing[t][0]).epsilon(1e-12));
        CHECK(marg[1] == doctest::Approx(m.smoothing[t][1]).epsilon(1e-12));
    }
}

TEST_CASE("log evidence shifts additively under per-step likelihood rescaling") {
    const DiscreteHmmSpec spec = two_state_spec();
    const std::vector<double> y = {0.4, -1.2, 1.9, 0.0};
    std::vector<std::vector<double>> loglik(y.size(), std::vector<double>(2));
    for (size_t t = 0; t < y.size(); ++t)
        for (int k = 0; k < 2; ++k)
            loglik[t][k] = normal_logpdf(y[t], spec.obs_mean[k], spec.obs_var[k]);

    const HmmMarginals base = hmm_forward_backward_loglik(spec, loglik);
    const std::vector<double> shifts = {0.7, -2.0, 3.1, 0.25};
    double total_shift = 0.0;
    for (size_t t = 0; t < y.size(); ++t) {
        for (int k = 0; k < 2; ++k) loglik[t][k] += shifts[t];
        total_shift += shifts[t];
    }
    const HmmMarginals scaled = hmm_forward_backward_loglik(spec, loglik);
    CHECK(scaled.log_evidence - base.log_evidence == doctest::Approx(total_shift).epsilon(1e-10));
    for (size_t t = 0; t < y.size(); ++t)
        for (int k = 0; k < 2; ++k)
            CHECK(scaled.smoothing[t][k] == doctest::Approx(base.smoothing[t][k]).epsilon(1e-12));
}

TEST_CASE("deterministic permutation chain concentrates on one path") {
    DiscreteHmmSpec spec;
    spec.state_count = 2;
    spec.initial = {1.0, 0.0};
    spec.transition = Matrix(2, 2);
    spec.transition(0, 1) = 1.0;  // 1 -> 2 -> 1 -> ...
    spec.transition(1, 0) = 1.0;
    spec.obs_mean = {0.0, 0.0};
    spec.obs_var = {1.0, 1.0};
    const PathDistribution paths = enumerate_small_posterior(spec, {0.0, 0.0, 0.0});
    const int want = paths.index_of({1, 2, 1});
    for (size_t idx = 0; idx < paths.probability.size(); ++idx)
        CHECK(paths.probability[idx] ==
              doctest::Approx(static_cast<int>(idx) == want ? 1.0 : 0.0).epsilon(1e-15));
}

TEST_CASE("enumeration size guard rejects huge path spaces") {
    DiscreteHmmSpec spec = two_state_spec();
    const std::vector<double> y(20, 0.0);  // 2^20 paths
    CHECK_THROWS_AS(enumerate_small_posterior(spec, y), ConfigError);
}
