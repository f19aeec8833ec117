#include "gridpg/smc.hpp"

#include <cmath>

#include "gridpg/common.hpp"
#include "gridpg/numeric.hpp"

namespace gridpg {

namespace {

enum class Mode { kPlain, kConditional, kConditionalAs };

void run_engine(Mode mode, ParticleSystem& sys, const SsmModel& model, const Proposal& proposal,
                const ObservationSeries& y, const ModelParameters& theta, int particles,
                double resample_threshold, const StatePath* reference, RandomSource& rng) {
    const int T = y.length();
    const int M = particles;
    const bool conditional = mode != Mode::kPlain;
    const int ref_slot = M - 1;

    if (T < 1) throw ConfigError("smc: empty observation series");
    if (M < (conditional ? 1 : 2)) throw ConfigError("smc: too few particles");
    if (conditional && static_cast<int>(reference->size()) != T)
        throw ConfigError("csmc: reference length must match the observation series");
    model.validate(theta);

    sys.start(M, T);
    proposal.begin_sweep(y, theta);

    // t = 1: propose the free slots, pin the reference, weight everything.
    proposal.prepare_initial(y.values[0], theta);
    const int free_count = conditional ? M - 1 : M;
    if (conditional) {
        sys.points[0][ref_slot] = (*reference)[0];
        sys.cells[0][ref_slot] = proposal.locate((*reference)[0]);
    }
    for (int m = 0; m < free_count; ++m) {
        ProposalDraw d = proposal.propose_initial(y.values[0], theta, rng);
        sys.points[0][m] = d.point;
        sys.cells[0][m] = d.cell;
        sys.ledger.set_log_weight(m, model.initial_log_density(d.point, theta) +
                                         model.observation_log_density(y.values[0], d.point, theta) -
                                         d.log_q);
    }
    if (conditional) {
        const StatePoint& ref = (*reference)[0];
        const double log_q = proposal.initial_log_density(y.values[0], ref, theta);
        sys.ledger.set_log_weight(ref_slot, model.initial_log_density(ref, theta) +
                                                model.observation_log_density(y.values[0], ref, theta) -
                                                log_q);
    }
    sys.ledger.renormalize();
    sys.step_weights[0].assign(sys.ledger.normalized().begin(), sys.ledger.normalized().end());
    sys.step_ess[0] = sys.ledger.ess();

    for (int t = 1; t < T; ++t) {
        auto& a = sys.ancestry[t];
        const auto& parents = sys.points[t - 1];

        if (conditional) {
            sys.points[t][ref_slot] = (*reference)[t];
            sys.cells[t][ref_slot] = proposal.locate((*reference)[t]);
        }

        // Reference ancestor draw happens against the pre-reset ledger.
        if (mode == Mode::kConditionalAs) {
            const auto w = ancestor_weights(sys.ledger, parents, (*reference)[t], theta, model);
            if (w.empty()) {
                a[ref_slot] = ref_slot;
                ++sys.ancestor_fallbacks;
            } else {
                a[ref_slot] = draw_categorical(rng, w);
            }
            sys.ancestor_switched[t] = a[ref_slot] != ref_slot;
        } else if (conditional) {
            a[ref_slot] = ref_slot;
        }

        const bool resample = sys.ledger.ess() < resample_threshold * M;
        sys.step_resampled[t] = resample;
        if (resample) {
            const auto cdf = sys.ledger.normalized_cdf();
            for (int m = 0; m < free_count; ++m) a[m] = rng.categorical_from_cdf(cdf);
            sys.ledger.reset_uniform();
        } else {
            for (int m = 0; m < free_count; ++m) a[m] = m;
        }

        proposal.prepare_step(t, y.values[t], parents, sys.cells[t - 1], theta);

        for (int m = 0; m < free_count; ++m) {
            const StatePoint& parent = parents[a[m]];
            ProposalDraw d =
                proposal.propose_step(t, y.values[t], parent, sys.cells[t - 1][a[m]], theta, rng);
            sys.points[t][m] = d.point;
            sys.cells[t][m] = d.cell;
            sys.ledger.add_log_weight(m, model.transition_log_density(d.point, parent, theta) +
                                             model.observation_log_density(y.values[t], d.point, theta) -
                                             d.log_q);
        }
        if (conditional) {
            const StatePoint& ref = (*reference)[t];
            const StatePoint& parent = parents[a[ref_slot]];
            const double log_q = proposal.step_log_density(t, y.values[t], parent,
                                                           sys.cells[t - 1][a[ref_slot]], ref, theta);
            sys.ledger.add_log_weight(ref_slot,
                                      model.transition_log_density(ref, parent, theta) +
                                          model.observation_log_density(y.values[t], ref, theta) -
                                          log_q);
        }
        sys.ledger.renormalize();
        sys.step_weights[t].assign(sys.ledger.normalized().begin(), sys.ledger.normalized().end());
        sys.step_ess[t] = sys.ledger.ess();
    }
}

}  // namespace

std::vector<double> ancestor_weights(const WeightLedger& ledger,
                                     std::span<const StatePoint> parents,
                                     const StatePoint& ref_point, const ModelParameters& theta,
                                     const SsmModel& model) {
    const int M = static_cast<int>(parents.size());
    if (ledger.size() != M) throw ConfigError("ancestor_weights: ledger/parent size mismatch");
    std::vector<double> log_w(M);
    const auto lw = ledger.log_weights();
    for (int m = 0; m < M; ++m)
        log_w[m] = lw[m] + model.transition_log_density(ref_point, parents[m], theta);
    std::vector<double> w(M);
    if (!normalize_log_weights(log_w, w)) return {};
    return w;
}

void smc_run_into(ParticleSystem& out, const SsmModel& model, const Proposal& proposal,
                  const ObservationSeries& y, const ModelParameters& theta, int particles,
                  double resample_threshold, RandomSource& rng) {
    run_engine(Mode::kPlain, out, model, proposal, y, theta, particles, resample_threshold, nullptr,
               rng);
}

void csmc_run_into(ParticleSystem& out, const SsmModel& model, const Proposal& proposal,
                   const ObservationSeries& y, const ModelParameters& theta, int particles,
                   double resample_threshold, const StatePath& reference, RandomSource& rng) {
    run_engine(Mode::kConditional, out, model, proposal, y, theta, particles, resample_threshold,
               &reference, rng);
}

void csmc_as_run_into(ParticleSystem& out, const SsmModel& model, const Proposal& proposal,
                      const ObservationSeries& y, const ModelParameters& theta, int particles,
                      double resample_threshold, const StatePath& reference, RandomSource& rng) {
    run_engine(Mode::kConditionalAs, out, model, proposal, y, theta, particles, resample_threshold,
               &reference, rng);
}

ParticleSystem smc_run(const SsmModel& model, const Proposal& proposal, const ObservationSeries& y,
                       const ModelParameters& theta, int particles, double resample_threshold,
                       RandomSource& rng) {
    ParticleSystem sys;
    smc_run_into(sys, model, proposal, y, theta, particles, resample_threshold, rng);
    return sys;
}

ParticleSystem csmc_run(const SsmModel& model, const Proposal& proposal, const ObservationSeries& y,
                        const ModelParameters& theta, int particles, double resample_threshold,
                        const StatePath& reference, RandomSource& rng) {
    ParticleSystem sys;
    csmc_run_into(sys, model, proposal, y, theta, particles, resample_threshold, reference, rng);
    return sys;
}

ParticleSystem csmc_as_run(const SsmModel& model, const Proposal& proposal,
                           const ObservationSeries& y, const ModelParameters& theta, int particles,
                           double resample_threshold, const StatePath& reference,
                           RandomSource& rng) {
    ParticleSystem sys;
    csmc_as_run_into(sys, model, proposal, y, theta, particles, resample_threshold, reference, rng);
    return sys;
}

}  // namespace gridpg
