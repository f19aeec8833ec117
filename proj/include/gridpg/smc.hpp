#pragma once

#include "gridpg/particle_system.hpp"
#include "gridpg/proposal.hpp"

namespace gridpg {

// Plain SMC: propose all M particles at t = 1, then for t >= 2 resample when
// ESS < psi * M (identity ancestry otherwise) and update weights
// multiplicatively in log space. Requires M >= 2.
ParticleSystem smc_run(const SsmModel& model, const Proposal& proposal, const ObservationSeries& y,
                       const ModelParameters& theta, int particles, double resample_threshold,
                       RandomSource& rng);

// Conditional SMC: slot M holds the reference trajectory at every step with
// ancestor M; the other M-1 particles follow the plain SMC steps and all M
// are weighted uniformly through the proposal density, reference included.
ParticleSystem csmc_run(const SsmModel& model, const Proposal& proposal, const ObservationSeries& y,
                        const ModelParameters& theta, int particles, double resample_threshold,
                        const StatePath& reference, RandomSource& rng);

// Conditional SMC with ancestor sampling: as csmc_run, but at every t >= 2
// the reference ancestor is redrawn proportionally to
// w_{1:t-1}^m * p(ref_t | parent_m) before trajectories are recomposed.
ParticleSystem csmc_as_run(const SsmModel& model, const Proposal& proposal,
                           const ObservationSeries& y, const ModelParameters& theta, int particles,
                           double resample_threshold, const StatePath& reference,
                           RandomSource& rng);

// In-place variants that reuse the system's buffers across sweeps.
void smc_run_into(ParticleSystem& out, const SsmModel& model, const Proposal& proposal,
                  const ObservationSeries& y, const ModelParameters& theta, int particles,
                  double resample_threshold, RandomSource& rng);
void csmc_run_into(ParticleSystem& out, const SsmModel& model, const Proposal& proposal,
                   const ObservationSeries& y, const ModelParameters& theta, int particles,
                   double resample_threshold, const StatePath& reference, RandomSource& rng);
void csmc_as_run_into(ParticleSystem& out, const SsmModel& model, const Proposal& proposal,
                      const ObservationSeries& y, const ModelParameters& theta, int particles,
                      double resample_threshold, const StatePath& reference, RandomSource& rng);

// Normalized probabilities that each parent trajectory generated the
// reference point, using the exact model transition density and the
// cumulative (pre-reset) weights. Returns an empty vector when every term
// carries zero mass, in which case callers retain the current ancestor.
std::vector<double> ancestor_weights(const WeightLedger& ledger,
                                     std::span<const StatePoint> parents,
                                     const StatePoint& ref_point, const ModelParameters& theta,
                                     const SsmModel& model);

}  // namespace gridpg
