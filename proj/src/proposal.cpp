#include "gridpg/proposal.hpp"

namespace gridpg {

ProposalDraw PriorProposal::propose_initial(double y1, const ModelParameters& theta,
                                            RandomSource& rng) const {
    (void)y1;
    ProposalDraw d;
    d.point = model_->simulate_initial(theta, rng);
    d.log_q = model_->initial_log_density(d.point, theta);
    return d;
}

ProposalDraw PriorProposal::propose_step(int t, double yt, const StatePoint& parent,
                                         int parent_cell, const ModelParameters& theta,
                                         RandomSource& rng) const {
    (void)t;
    (void)yt;
    (void)parent_cell;
    ProposalDraw d;
    d.point = model_->simulate_transition(parent, theta, rng);
    d.log_q = model_->transition_log_density(d.point, parent, theta);
    return d;
}

double PriorProposal::initial_log_density(double y1, const StatePoint& point,
                                          const ModelParameters& theta) const {
    (void)y1;
    return model_->initial_log_density(point, theta);
}

double PriorProposal::step_log_density(int t, double yt, const StatePoint& parent, int parent_cell,
                                       const StatePoint& point, const ModelParameters& theta) const {
    (void)t;
    (void)yt;
    (void)parent_cell;
    return model_->transition_log_density(point, parent, theta);
}

}  // namespace gridpg
