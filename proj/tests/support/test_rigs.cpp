#include "support/test_rigs.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "gridpg/numeric.hpp"

namespace gridpg::testing {

int EnumerationRng::categorical_from_cdf(std::span<const double> cdf) {
    if (pos_ == trace_.size()) {
        ChoicePoint cp;
        double prev = 0.0;
        const double total = cdf.back();
        for (size_t i = 0; i < cdf.size(); ++i) {
            const double p = (cdf[i] - prev) / total;
            prev = cdf[i];
            if (p > 0.0) {
                cp.option.push_back(static_cast<int>(i));
                cp.probability.push_back(p);
            }
        }
        if (cp.option.empty()) throw std::logic_error("enumeration: empty categorical");
        trace_.push_back(0);
        options_.push_back(std::move(cp));
    }
    const ChoicePoint& cp = options_[pos_];
    const int choice = trace_[pos_];
    probability_ *= cp.probability[choice];
    ++pos_;
    return cp.option[choice];
}

void EnumerationRng::begin_run() {
    pos_ = 0;
    probability_ = 1.0;
}

bool EnumerationRng::advance() {
    while (!trace_.empty()) {
        if (++trace_.back() < static_cast<int>(options_.back().option.size())) return true;
        trace_.pop_back();
        options_.pop_back();
    }
    return false;
}

std::map<int, double> enumerate_outcomes(const std::function<int(RandomSource&)>& fn) {
    EnumerationRng rng;
    std::map<int, double> dist;
    do {
        rng.begin_run();
        const int outcome = fn(rng);
        dist[outcome] += rng.run_probability();
    } while (rng.advance());
    return dist;
}

PiecewiseConstantModel::PiecewiseConstantModel(Grid grid, int regimes, DiscreteHmmSpec hmm)
    : grid_(std::move(grid)), regimes_(regimes), hmm_(std::move(hmm)) {
    hmm_.check();
    if (hmm_.state_count != regimes_ * finite_cells())
        throw std::invalid_argument("piecewise model: state count mismatch");
}

int PiecewiseConstantModel::joint_state(const StatePoint& p) const {
    if (p.regime < 1 || p.regime > regimes_) return -1;
    const int cell = grid_.locate(p.value);
    if (grid_.is_outer(cell)) return -1;
    return (p.regime - 1) * finite_cells() + (cell - 1);
}

StatePoint PiecewiseConstantModel::representative(int joint) const {
    const int cell = joint % finite_cells() + 1;
    const int regime = joint / finite_cells() + 1;
    return StatePoint{regime, grid_.midpoints[cell]};
}

double PiecewiseConstantModel::initial_log_density(const StatePoint& x1,
                                                   const ModelParameters&) const {
    const int j = joint_state(x1);
    if (j < 0) return kNegInf;
    const double p = hmm_.initial[j];
    return p > 0.0 ? std::log(p) - std::log(grid_.finite_width) : kNegInf;
}

double PiecewiseConstantModel::transition_log_density(const StatePoint& x, const StatePoint& prev,
                                                      const ModelParameters&) const {
    const int jp = joint_state(prev);
    const int j = joint_state(x);
    if (jp < 0 || j < 0) return kNegInf;
    const double p = hmm_.transition(jp, j);
    return p > 0.0 ? std::log(p) - std::log(grid_.finite_width) : kNegInf;
}

double PiecewiseConstantModel::observation_log_density(double y, const StatePoint& x,
                                                       const ModelParameters&) const {
    const int j = joint_state(x);
    if (j < 0) return kNegInf;
    return normal_logpdf(y, hmm_.obs_mean[j], hmm_.obs_var[j]);
}

StatePoint PiecewiseConstantModel::simulate_initial(const ModelParameters&,
                                                    RandomSource& rng) const {
    const int j = draw_categorical(rng, hmm_.initial);
    StatePoint p = representative(j);
    const int cell = grid_.locate(p.value);
    p.value = grid_.lower_edge(cell) + rng.uniform() * grid_.finite_width;
    return p;
}

StatePoint PiecewiseConstantModel::simulate_transition(const StatePoint& prev,
                                                       const ModelParameters&,
                                                       RandomSource& rng) const {
    const int jp = joint_state(prev);
    if (jp < 0) throw std::invalid_argument("piecewise model: transition from outer cell");
    const int j = draw_categorical(rng, hmm_.transition.row(jp));
    StatePoint p = representative(j);
    const int cell = grid_.locate(p.value);
    p.value = grid_.lower_edge(cell) + rng.uniform() * grid_.finite_width;
    return p;
}

double PiecewiseConstantModel::simulate_observation(const StatePoint& x, const ModelParameters&,
                                                    RandomSource& rng) const {
    const int j = joint_state(x);
    assert(j >= 0);
    return draw_normal(rng, hmm_.obs_mean[j], std::sqrt(hmm_.obs_var[j]));
}

DenseGaussianMoments dense_lg_smoother(const KalmanModelSpec& spec, const std::vector<double>& y) {
    const int T = static_cast<int>(y.size());
    const double a = spec.state_coef, q = spec.state_var;
    const double c = spec.obs_coef, r = spec.obs_var;

    Eigen::MatrixXd precision = Eigen::MatrixXd::Zero(T, T);
    Eigen::VectorXd shift(T);
    for (int t = 0; t < T; ++t) {
        precision(t, t) = c * c / r + (t == 0 ? 1.0 / spec.init_var : 1.0 / q);
        if (t + 1 < T) {
            precision(t, t) += a * a / q;
            precision(t, t + 1) = -a / q;
            precision(t + 1, t) = -a / q;
        }
        shift(t) = c * y[t] / r + (t == 0 ? spec.init_mean / spec.init_var : 0.0);
    }
    const Eigen::MatrixXd cov = precision.inverse();
    const Eigen::VectorXd mean = cov * shift;

    DenseGaussianMoments out;
    out.mean.resize(T);
    out.var.resize(T);
    for (int t = 0; t < T; ++t) {
        out.mean[t] = mean(t);
        out.var[t] = cov(t, t);
    }
    return out;
}

double QuadratureCdf::value(double q) const {
    if (q <= x.front()) return 0.0;
    if (q >= x.back()) return 1.0;
    const auto it = std::upper_bound(x.begin(), x.end(), q);
    const size_t i = static_cast<size_t>(it - x.begin());
    const double f = (q - x[i - 1]) / (x[i] - x[i - 1]);
    return cdf[i - 1] + f * (cdf[i] - cdf[i - 1]);
}

QuadratureCdf quadrature_cdf(const std::function<double(double)>& log_density, double lo, double hi,
                             int points) {
    QuadratureCdf out;
    out.x.resize(points);
    std::vector<double> logf(points);
    double mx = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < points; ++i) {
        out.x[i] = lo + (hi - lo) * i / (points - 1);
        logf[i] = log_density(out.x[i]);
        mx = std::max(mx, logf[i]);
    }
    std::vector<double> f(points);
    for (int i = 0; i < points; ++i) f[i] = std::exp(logf[i] - mx);
    out.cdf.assign(points, 0.0);
    for (int i = 1; i < points; ++i)
        out.cdf[i] = out.cdf[i - 1] + 0.5 * (f[i] + f[i - 1]) * (out.x[i] - out.x[i - 1]);
    const double total = out.cdf.back();
    for (double& v : out.cdf) v /= total;
    return out;
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::abs((i + 1) / n - f));
        d = std::max(d, std::abs(f - i / n));
    }
    return d;
}

double tv_distance(const std::map<int, double>& a, const std::map<int, double>& b) {
    double tv = 0.0;
    for (const auto& [k, p] : a) {
        const auto it = b.find(k);
        tv += std::abs(p - (it == b.end() ? 0.0 : it->second));
    }
    for (const auto& [k, p] : b)
        if (a.find(k) == a.end()) tv += p;
    return 0.5 * tv;
}

}  // namespace gridpg::testing
