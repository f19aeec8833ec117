#pragma once

#include <memory>

#include "gridpg/grid_hmm.hpp"
#include "gridpg/proposal.hpp"
#include "gridpg/within_cell.hpp"

namespace gridpg {

// Grid-tilted importance distribution: a joint (cell, regime) index is drawn
// from the posterior-tilted HMM row of the parent's cell, then a continuous
// value is drawn from the within-cell sampler. log q is the sum of both
// log masses, and the same quantity is evaluable at arbitrary points for
// weighting a pinned reference trajectory.
//
// The tilted-row cache is per sweep and confined to the sweep's thread.
class GridProposal final : public Proposal {
public:
    GridProposal(Grid grid, std::shared_ptr<const HmmApprox> hmm, double outer_variance);

    // The within-cell sampler points at the owned grid.
    GridProposal(const GridProposal&) = delete;
    GridProposal& operator=(const GridProposal&) = delete;

    void set_hmm(std::shared_ptr<const HmmApprox> hmm);

    void begin_sweep(const ObservationSeries& y, const ModelParameters& theta) const override;
    void prepare_initial(double y1, const ModelParameters& theta) const override;
    void prepare_step(int t, double yt, std::span<const StatePoint> parents,
                      std::span<const int> parent_cells, const ModelParameters& theta) const override;

    ProposalDraw propose_initial(double y1, const ModelParameters& theta,
                                 RandomSource& rng) const override;
    ProposalDraw propose_step(int t, double yt, const StatePoint& parent, int parent_cell,
                              const ModelParameters& theta, RandomSource& rng) const override;

    double initial_log_density(double y1, const StatePoint& point,
                               const ModelParameters& theta) const override;
    double step_log_density(int t, double yt, const StatePoint& parent, int parent_cell,
                            const StatePoint& point, const ModelParameters& theta) const override;

    int locate(const StatePoint& point) const override;

    const Grid& grid() const { return grid_; }
    const WithinCellSampler& within_cell() const { return within_; }

    // Tilted rows materialized since the last begin_sweep.
    long tilted_rows_built() const { return table_.rows_built(); }

private:
    Grid grid_;
    std::shared_ptr<const HmmApprox> hmm_;
    WithinCellSampler within_;
    mutable ProposalTable table_;
};

}  // namespace gridpg
