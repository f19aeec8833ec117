#pragma once

#include <span>

#include "gridpg/ssm.hpp"

namespace gridpg {

struct ProposalDraw {
    StatePoint point;
    double log_q = 0.0;
    int cell = -1;  // joint grid-cell index when the proposal is grid-based
};

// Importance distribution plugged into the SMC recursions.
//
// Implementations must report a finite log_q for every point they can emit
// and must cover the full state space. step/initial log densities are also
// evaluable at arbitrary points so the engines can weight a pinned reference
// trajectory. prepare_* hooks run once per step before the per-particle
// proposal loop; stateful proposals use them to stage per-step tables.
class Proposal {
public:
    virtual ~Proposal() = default;

    virtual void begin_sweep(const ObservationSeries&, const ModelParameters&) const {}
    virtual void prepare_initial(double /*y1*/, const ModelParameters&) const {}
    virtual void prepare_step(int /*t*/, double /*yt*/, std::span<const StatePoint> /*parents*/,
                              std::span<const int> /*parent_cells*/,
                              const ModelParameters&) const {}

    virtual ProposalDraw propose_initial(double y1, const ModelParameters& theta,
                                         RandomSource& rng) const = 0;
    virtual ProposalDraw propose_step(int t, double yt, const StatePoint& parent, int parent_cell,
                                      const ModelParameters& theta, RandomSource& rng) const = 0;

    virtual double initial_log_density(double y1, const StatePoint& point,
                                       const ModelParameters& theta) const = 0;
    virtual double step_log_density(int t, double yt, const StatePoint& parent, int parent_cell,
                                    const StatePoint& point, const ModelParameters& theta) const = 0;

    // Joint cell bookkeeping index for a point; -1 when not grid-based.
    virtual int locate(const StatePoint&) const { return -1; }
};

// Bootstrap proposal: simulate from the model prior, so the incremental
// weight reduces to the observation likelihood.
class PriorProposal final : public Proposal {
public:
    explicit PriorProposal(const SsmModel& model) : model_(&model) {}

    ProposalDraw propose_initial(double y1, const ModelParameters& theta,
                                 RandomSource& rng) const override;
    ProposalDraw propose_step(int t, double yt, const StatePoint& parent, int parent_cell,
                              const ModelParameters& theta, RandomSource& rng) const override;
    double initial_log_density(double y1, const StatePoint& point,
                               const ModelParameters& theta) const override;
    double step_log_density(int t, double yt, const StatePoint& parent, int parent_cell,
                            const StatePoint& point, const ModelParameters& theta) const override;

private:
    const SsmModel* model_;
};

}  // namespace gridpg
