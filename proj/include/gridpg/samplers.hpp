#pragma once

#include <functional>
#include <optional>

#include "gridpg/freeze.hpp"
#include "gridpg/smc.hpp"

namespace gridpg {

// Parameter-update hook targeting p(theta | x_{1:T}, y_{1:T}); Gibbs or
// Metropolis-Hastings inside. Must return parameters satisfying the model's
// invariants and be deterministic given the rng stream.
using ParameterUpdater = std::function<ModelParameters(
    const ModelParameters&, const StatePath&, const ObservationSeries&, RandomSource&)>;

inline ParameterUpdater fixed_parameter_updater() {
    return [](const ModelParameters& theta, const StatePath&, const ObservationSeries&,
              RandomSource&) { return theta; };
}

enum class SamplerKind { kPg, kPgas, kGpgas };

struct GridSettings {
    int cells = 25;           // N, outer cells included
    double lo = -12.0;
    double hi = 12.0;
    double floor = 1e-12;     // probability bound before row normalization
    double outer_variance = 0.0;  // <= 0 selects 10% of the finite range

    double resolved_outer_variance() const {
        return outer_variance > 0.0 ? outer_variance : 0.1 * (hi - lo);
    }
};

struct SamplerConfig {
    SamplerKind kind = SamplerKind::kPgas;
    int particles = 50;                 // M
    long iterations = 1000;             // S
    double resample_threshold = 0.25;   // psi, as a fraction of M
    std::uint64_t seed = 1;
    GridSettings grid;                  // GPGAS only
    FreezePolicy freeze;                // GPGAS only

    // Strict invariants used by the benchmark layer; the drivers themselves
    // accept M = 1 (a legal degenerate chain that never moves).
    void validate() const;
};

// Per-iteration SMC health metrics.
struct DiagnosticsRecord {
    std::vector<std::vector<double>> ess;                      // S x T
    std::vector<std::vector<std::uint8_t>> resampled;          // S x T
    std::vector<std::vector<std::uint8_t>> ancestor_switched;  // S x T
    std::vector<int> states_not_updated;                       // S
    std::vector<long> tilted_row_builds;                       // S
    std::vector<int> transition_builds;                        // S
    std::vector<double> iteration_seconds;                     // S
    long ancestor_fallbacks = 0;
};

struct ChainRecord {
    std::vector<ModelParameters> theta;  // S samples
    std::vector<StatePath> paths;        // S samples
    DiagnosticsRecord diagnostics;
};

// One trajectory drawn with the final normalized weights, reconstructed
// through the ancestry indices.
StatePath sample_trajectory(const ParticleSystem& system, RandomSource& rng);

// Particle Gibbs: per iteration a theta update, a conditional SMC sweep with
// the previous path as reference, and an always-accepted trajectory draw.
ChainRecord pg_run(const SsmModel& model, const Proposal& proposal, const ParameterUpdater& update,
                   const ObservationSeries& y, const SamplerConfig& config,
                   const ModelParameters& theta0, const StatePath* x0 = nullptr);

// As pg_run but with ancestor sampling in the sweep.
ChainRecord pgas_run(const SsmModel& model, const Proposal& proposal,
                     const ParameterUpdater& update, const ObservationSeries& y,
                     const SamplerConfig& config, const ModelParameters& theta0,
                     const StatePath* x0 = nullptr);

// Grid PGAS: rebuilds the HMM approximation and tilted proposal at each
// iteration's theta (exactly one transition-matrix build pre-freeze, zero
// after freezing) and runs the ancestor-sampling sweep with the grid
// proposal. Ancestor weights always use the exact model transition density.
ChainRecord gpgas_run(const SsmModel& model, const ParameterUpdater& update,
                      const ObservationSeries& y, const SamplerConfig& config,
                      const ModelParameters& theta0, const StatePath* x0 = nullptr);

}  // namespace gridpg
