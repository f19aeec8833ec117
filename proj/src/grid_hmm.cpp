#include "gridpg/grid_hmm.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "gridpg/common.hpp"

namespace gridpg {

namespace {

// Max-shift, floor, normalize. The floor applies relative to the largest raw
// entry (which maps to 1 after the shift), which keeps the bound meaningful
// for rows whose absolute densities are arbitrarily small.
void finish_row(std::span<const double> log_raw, std::span<double> out, double floor) {
    double mx = kNegInf;
    for (double v : log_raw) mx = std::max(mx, v);
    double sum = 0.0;
    for (size_t i = 0; i < log_raw.size(); ++i) {
        const double p = mx == kNegInf ? 0.0 : std::exp(log_raw[i] - mx);
        out[i] = std::max(p, floor);
        sum += out[i];
    }
    for (double& p : out) p /= sum;
}

}  // namespace

HmmApprox approx_hmm(const Grid& grid, const ModelParameters& theta, const SsmModel& model,
                     const ObservationSeries& y, double floor) {
    if (!(floor > 0.0)) throw ConfigError("approx_hmm: probability floor must be positive");
    model.validate(theta);

    HmmApprox hmm;
    hmm.cell_count = grid.cell_count;
    hmm.regime_count = model.regime_count();
    hmm.floor = floor;
    const int N = hmm.cell_count;
    const int R = hmm.regime_count;
    const int K = N * R;

    std::vector<double> log_len(N);
    for (int n = 0; n < N; ++n) log_len[n] = std::log(grid.lengths[n]);

    std::vector<double> log_raw(K);

    hmm.initial.resize(K);
    for (int j = 0; j < K; ++j) {
        const int n = cell_of_joint(j, N);
        const StatePoint x{regime_of_joint(j, N), grid.midpoints[n]};
        log_raw[j] = log_len[n] + model.initial_log_density(x, theta);
    }
    finish_row(log_raw, hmm.initial, floor);

    hmm.transition = Matrix(K, K);
    for (int k = 0; k < K; ++k) {
        const StatePoint parent{regime_of_joint(k, N), grid.midpoints[cell_of_joint(k, N)]};
        const double parent_len = log_len[cell_of_joint(k, N)];
        for (int j = 0; j < K; ++j) {
            const int n = cell_of_joint(j, N);
            const StatePoint x{regime_of_joint(j, N), grid.midpoints[n]};
            log_raw[j] = log_len[n] + parent_len + model.transition_log_density(x, parent, theta);
        }
        finish_row(log_raw, hmm.transition.row(k), floor);
    }

    hmm.obs_loglik.assign(y.length(), std::vector<double>(K));
    for (int t = 0; t < y.length(); ++t) {
        for (int j = 0; j < K; ++j) {
            const int n = cell_of_joint(j, N);
            const StatePoint x{regime_of_joint(j, N), grid.midpoints[n]};
            hmm.obs_loglik[t][j] = log_len[n] + model.observation_log_density(y.values[t], x, theta);
        }
    }
    return hmm;
}

void ProposalTable::reset(const HmmApprox* hmm) {
    hmm_ = hmm;
    rows_.clear();
    rows_.resize(hmm->obs_loglik.size());
    initial_built_ = false;
    rows_built_ = 0;
}

ProposalTable::TiltedRow ProposalTable::make_row(int t, int parent) const {
    const int K = hmm_->alphabet_size();
    std::vector<double> log_raw(K);
    const auto trans = hmm_->transition.row(parent);
    const auto& obs = hmm_->obs_loglik[t];
    for (int j = 0; j < K; ++j) log_raw[j] = std::log(trans[j]) + obs[j];

    TiltedRow row;
    row.prob.resize(K);
    finish_row(log_raw, row.prob, hmm_->floor);
    row.cdf.resize(K);
    double acc = 0.0;
    for (int j = 0; j < K; ++j) {
        acc += row.prob[j];
        row.cdf[j] = acc;
    }
    return row;
}

ProposalTable::TiltedRow& ProposalTable::fetch(int t, int parent) {
    auto& per_t = rows_.at(t);
    auto it = per_t.find(parent);
    if (it == per_t.end()) {
        it = per_t.emplace(parent, make_row(t, parent)).first;
        ++rows_built_;
    }
    return it->second;
}

void ProposalTable::build_rows(int t, std::span<const int> parent_cells) {
    for (int k : parent_cells)
        if (k >= 0) fetch(t, k);
}

void ProposalTable::build_initial() {
    if (initial_built_) return;
    const int K = hmm_->alphabet_size();
    std::vector<double> log_raw(K);
    const auto& obs = hmm_->obs_loglik[0];
    for (int j = 0; j < K; ++j) log_raw[j] = std::log(hmm_->initial[j]) + obs[j];
    initial_.prob.resize(K);
    finish_row(log_raw, initial_.prob, hmm_->floor);
    initial_.cdf.resize(K);
    double acc = 0.0;
    for (int j = 0; j < K; ++j) {
        acc += initial_.prob[j];
        initial_.cdf[j] = acc;
    }
    initial_built_ = true;
}

std::span<const double> ProposalTable::row(int t, int parent) { return fetch(t, parent).prob; }

std::span<const double> ProposalTable::row_cdf(int t, int parent) { return fetch(t, parent).cdf; }

std::span<const double> ProposalTable::initial_row() {
    build_initial();
    return initial_.prob;
}

std::span<const double> ProposalTable::initial_cdf() {
    build_initial();
    return initial_.cdf;
}

}  // namespace gridpg
