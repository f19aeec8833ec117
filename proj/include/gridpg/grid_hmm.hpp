#pragma once

#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include "gridpg/grid.hpp"
#include "gridpg/numeric.hpp"
#include "gridpg/ssm.hpp"

namespace gridpg {

// Midpoint-rule HMM over the joint (cell, regime) alphabet of size
// K = N * regime_count.
//
// initial and transition rows are probabilities: raw midpoint terms are
// shifted by their row maximum, floored at `floor`, and normalized, so every
// row sums to 1 with no zero entry. Observation columns stay as unnormalized
// log values; tilting renormalizes anyway.
struct HmmApprox {
    int cell_count = 0;
    int regime_count = 0;
    double floor = 1e-12;

    std::vector<double> initial;                  // K
    Matrix transition;                            // K x K
    std::vector<std::vector<double>> obs_loglik;  // T x K

    int alphabet_size() const { return cell_count * regime_count; }
};

// Builds the approximation at theta:
//   initial[j]        ~ L(n) * p(x_1 = (r, mid(n)) | theta)
//   transition[k][j]  ~ L(n) * L(k) * p((r', mid(n)) | (r, mid(k)), theta)
//   obs_loglik[t][j]  = log L(n) + log p(y_t | (r, mid(n)), theta)
// with the regime factor carried by the model's joint transition density.
HmmApprox approx_hmm(const Grid& grid, const ModelParameters& theta, const SsmModel& model,
                     const ObservationSeries& y, double floor);

// Posterior-tilted rows transition[k][.] .* exp(obs_loglik[t]), normalized,
// cached per (t, parent) and built only for occupied parent cells.
//
// The cache is confined to one sweep thread; reset() clears it and the build
// counter at the start of a sweep.
class ProposalTable {
public:
    void reset(const HmmApprox* hmm);

    // Builds the time-t rows for every distinct cell in `parent_cells` that
    // is not cached yet. Counts one build per new row.
    void build_rows(int t, std::span<const int> parent_cells);
    void build_initial();

    std::span<const double> row(int t, int parent);       // lazily builds on a miss
    std::span<const double> row_cdf(int t, int parent);
    std::span<const double> initial_row();
    std::span<const double> initial_cdf();

    long rows_built() const { return rows_built_; }

private:
    struct TiltedRow {
        std::vector<double> prob;
        std::vector<double> cdf;
    };

    TiltedRow make_row(int t, int parent) const;
    TiltedRow& fetch(int t, int parent);

    const HmmApprox* hmm_ = nullptr;
    std::vector<std::unordered_map<int, TiltedRow>> rows_;  // per time step
    TiltedRow initial_;
    bool initial_built_ = false;
    long rows_built_ = 0;
};

}  // namespace gridpg
