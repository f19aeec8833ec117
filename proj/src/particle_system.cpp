#include "gridpg/particle_system.hpp"

namespace gridpg {

void ParticleSystem::start(int particles, int steps) {
    particle_count = particles;
    step_count = steps;
    points.assign(steps, std::vector<StatePoint>(particles));
    ancestry.assign(steps, std::vector<int>(particles));
    for (int m = 0; m < particles; ++m) ancestry[0][m] = m;
    cells.assign(steps, std::vector<int>(particles, -1));
    step_weights.assign(steps, std::vector<double>(particles, 0.0));
    ledger.reset(particles);
    step_ess.assign(steps, 0.0);
    step_resampled.assign(steps, 0);
    ancestor_switched.assign(steps, 0);
    ancestor_fallbacks = 0;
}

StatePath ParticleSystem::trajectory(int m) const {
    StatePath path(step_count);
    int idx = m;
    for (int t = step_count - 1; t >= 0; --t) {
        path[t] = points[t][idx];
        idx = ancestry[t][idx];
    }
    return path;
}

}  // namespace gridpg
