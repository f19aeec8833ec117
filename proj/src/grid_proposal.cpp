#include "gridpg/grid_proposal.hpp"

#include <cmath>

#include "gridpg/common.hpp"

namespace gridpg {

GridProposal::GridProposal(Grid grid, std::shared_ptr<const HmmApprox> hmm, double outer_variance)
    : grid_(std::move(grid)), hmm_(std::move(hmm)), within_(&grid_, outer_variance) {
    if (hmm_->cell_count != grid_.cell_count)
        throw ConfigError("grid proposal: HMM and grid cell counts disagree");
    table_.reset(hmm_.get());
}

void GridProposal::set_hmm(std::shared_ptr<const HmmApprox> hmm) {
    if (hmm->cell_count != grid_.cell_count)
        throw ConfigError("grid proposal: HMM and grid cell counts disagree");
    hmm_ = std::move(hmm);
    table_.reset(hmm_.get());
}

void GridProposal::begin_sweep(const ObservationSeries&, const ModelParameters&) const {
    table_.reset(hmm_.get());
}

void GridProposal::prepare_initial(double, const ModelParameters&) const { table_.build_initial(); }

void GridProposal::prepare_step(int t, double, std::span<const StatePoint>,
                                std::span<const int> parent_cells, const ModelParameters&) const {
    table_.build_rows(t, parent_cells);
}

ProposalDraw GridProposal::propose_initial(double, const ModelParameters&, RandomSource& rng) const {
    const int j = rng.categorical_from_cdf(table_.initial_cdf());
    const int n = cell_of_joint(j, grid_.cell_count);
    ProposalDraw d;
    d.cell = j;
    d.point.regime = regime_of_joint(j, grid_.cell_count);
    d.point.value = within_.sample(n, rng);
    d.log_q = std::log(table_.initial_row()[j]) + within_.log_density(n, d.point.value);
    return d;
}

ProposalDraw GridProposal::propose_step(int t, double, const StatePoint& parent, int parent_cell,
                                        const ModelParameters&, RandomSource& rng) const {
    const int k = parent_cell >= 0 ? parent_cell : locate(parent);
    const int j = rng.categorical_from_cdf(table_.row_cdf(t, k));
    const int n = cell_of_joint(j, grid_.cell_count);
    ProposalDraw d;
    d.cell = j;
    d.point.regime = regime_of_joint(j, grid_.cell_count);
    d.point.value = within_.sample(n, rng);
    d.log_q = std::log(table_.row(t, k)[j]) + within_.log_density(n, d.point.value);
    return d;
}

double GridProposal::initial_log_density(double, const StatePoint& point,
                                         const ModelParameters&) const {
    const int j = locate(point);
    const int n = cell_of_joint(j, grid_.cell_count);
    return std::log(table_.initial_row()[j]) + within_.log_density(n, point.value);
}

double GridProposal::step_log_density(int t, double, const StatePoint& parent, int parent_cell,
                                      const StatePoint& point, const ModelParameters&) const {
    const int k = parent_cell >= 0 ? parent_cell : locate(parent);
    const int j = locate(point);
    const int n = cell_of_joint(j, grid_.cell_count);
    return std::log(table_.row(t, k)[j]) + within_.log_density(n, point.value);
}

int GridProposal::locate(const StatePoint& point) const {
    return joint_index(grid_.locate(point.value), point.regime, grid_.cell_count);
}

}  // namespace gridpg
