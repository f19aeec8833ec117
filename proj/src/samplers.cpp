#include "gridpg/samplers.hpp"

#include <chrono>
#include <cmath>
#include <optional>

#include "gridpg/common.hpp"
#include "gridpg/grid_proposal.hpp"

namespace gridpg {

namespace {

using Clock = std::chrono::steady_clock;

StatePath simulate_initial_path(const SsmModel& model, const ModelParameters& theta, int T,
                                RandomSource& rng) {
    StatePath path;
    path.reserve(T);
    StatePoint x = model.simulate_initial(theta, rng);
    path.push_back(x);
    for (int t = 1; t < T; ++t) {
        x = model.simulate_transition(x, theta, rng);
        path.push_back(x);
    }
    return path;
}

int count_states_not_updated(const StatePath& current, const StatePath& previous) {
    int count = 0;
    for (size_t t = 0; t < current.size(); ++t)
        if (current[t] == previous[t]) ++count;
    return count;
}

// Shared driver loop. `build_proposal` runs before each sweep and returns
// the proposal plus the number of transition-matrix builds it performed.
template <typename PrepareFn>
ChainRecord run_chain(const SsmModel& model, const ParameterUpdater& update,
                      const ObservationSeries& y, const SamplerConfig& config,
                      const ModelParameters& theta0, const StatePath* x0, bool ancestor_sampling,
                      PrepareFn&& prepare) {
    const int T = y.length();
    const long S = config.iterations;
    if (config.particles < 1) throw ConfigError("sampler: need at least one particle");
    if (S < 1) throw ConfigError("sampler: need at least one iteration");
    if (T < 1) throw ConfigError("sampler: empty observation series");
    model.validate(theta0);

    RngStream root(config.seed);

    StatePath path;
    if (x0) {
        if (static_cast<int>(x0->size()) != T)
            throw ConfigError("sampler: initial path length must match the observations");
        path = *x0;
    } else {
        RngStream init = root.child(0);
        path = simulate_initial_path(model, theta0, T, init);
    }

    ChainRecord record;
    record.theta.reserve(S);
    record.paths.reserve(S);
    auto& diag = record.diagnostics;
    diag.ess.reserve(S);
    diag.resampled.reserve(S);
    diag.ancestor_switched.reserve(S);
    diag.states_not_updated.reserve(S);
    diag.tilted_row_builds.reserve(S);
    diag.transition_builds.reserve(S);
    diag.iteration_seconds.reserve(S);

    ModelParameters theta = theta0;
    ParticleSystem sys;

    for (long s = 1; s <= S; ++s) {
        const auto tic = Clock::now();

        RngStream theta_rng = root.child(1, static_cast<std::uint64_t>(s));
        theta = update(theta, path, y, theta_rng);

        auto [proposal, transition_builds, row_counter] = prepare(s, theta);

        RngStream sweep_rng = root.child(2, static_cast<std::uint64_t>(s));
        if (ancestor_sampling)
            csmc_as_run_into(sys, model, *proposal, y, theta, config.particles,
                             config.resample_threshold, path, sweep_rng);
        else
            csmc_run_into(sys, model, *proposal, y, theta, config.particles,
                          config.resample_threshold, path, sweep_rng);

        RngStream draw_rng = root.child(3, static_cast<std::uint64_t>(s));
        StatePath next = sample_trajectory(sys, draw_rng);

        diag.ess.push_back(sys.step_ess);
        diag.resampled.push_back(sys.step_resampled);
        diag.ancestor_switched.push_back(sys.ancestor_switched);
        diag.ancestor_fallbacks += sys.ancestor_fallbacks;
        diag.states_not_updated.push_back(count_states_not_updated(next, path));
        diag.tilted_row_builds.push_back(row_counter ? row_counter() : 0);
        diag.transition_builds.push_back(transition_builds);

        path = std::move(next);
        record.theta.push_back(theta);
        record.paths.push_back(path);

        diag.iteration_seconds.push_back(std::chrono::duration<double>(Clock::now() - tic).count());
    }
    return record;
}

struct PreparedSweep {
    const Proposal* proposal;
    int transition_builds;
    std::function<long()> row_counter;
};

}  // namespace

void SamplerConfig::validate() const {
    if (particles < 2) throw ConfigError("sampler config: M must be at least 2");
    if (iterations < 1) throw ConfigError("sampler config: S must be at least 1");
    if (!(resample_threshold > 0.0 && resample_threshold <= 1.0))
        throw ConfigError("sampler config: psi must lie in (0, 1]");
    if (kind == SamplerKind::kGpgas) {
        if (grid.cells < 3) throw ConfigError("sampler config: grid needs at least 3 cells");
        if (!(grid.lo < grid.hi)) throw ConfigError("sampler config: grid range is empty");
        if (!(grid.floor > 0.0)) throw ConfigError("sampler config: probability floor must be positive");
        if (freeze.freeze_after < 0) throw ConfigError("sampler config: freeze_after must be >= 0");
        if (freeze.window < 1) throw ConfigError("sampler config: freeze window must be >= 1");
    }
}

StatePath sample_trajectory(const ParticleSystem& system, RandomSource& rng) {
    if (system.particle_count < 1 || system.step_count < 1)
        throw ConfigError("sample_trajectory: empty particle system");
    const int m = rng.categorical_from_cdf(system.ledger.normalized_cdf());
    return system.trajectory(m);
}

ChainRecord pg_run(const SsmModel& model, const Proposal& proposal, const ParameterUpdater& update,
                   const ObservationSeries& y, const SamplerConfig& config,
                   const ModelParameters& theta0, const StatePath* x0) {
    return run_chain(model, update, y, config, theta0, x0, /*ancestor_sampling=*/false,
                     [&](long, const ModelParameters&) {
                         return PreparedSweep{&proposal, 0, nullptr};
                     });
}

ChainRecord pgas_run(const SsmModel& model, const Proposal& proposal,
                     const ParameterUpdater& update, const ObservationSeries& y,
                     const SamplerConfig& config, const ModelParameters& theta0,
                     const StatePath* x0) {
    return run_chain(model, update, y, config, theta0, x0, /*ancestor_sampling=*/true,
                     [&](long, const ModelParameters&) {
                         return PreparedSweep{&proposal, 0, nullptr};
                     });
}

ChainRecord gpgas_run(const SsmModel& model, const ParameterUpdater& update,
                      const ObservationSeries& y, const SamplerConfig& config,
                      const ModelParameters& theta0, const StatePath* x0) {
    const Grid grid = build_grid(config.grid.lo, config.grid.hi, config.grid.cells);
    std::optional<GridProposal> proposal;

    // theta history [theta^(0) ..] feeding the freeze-time windowed mean.
    std::vector<ModelParameters> history;
    history.push_back(theta0);
    bool frozen = false;

    auto prepare = [&](long s, const ModelParameters& theta) {
        int builds = 0;
        if (!frozen) {
            std::shared_ptr<const HmmApprox> hmm;
            if (s <= config.freeze.freeze_after) {
                hmm = std::make_shared<const HmmApprox>(
                    approx_hmm(grid, theta, model, y, config.grid.floor));
                history.push_back(theta);
            } else {
                hmm = std::make_shared<const HmmApprox>(
                    freeze_hmm(config.freeze, history, grid, model, y, config.grid.floor));
                history.clear();
                history.shrink_to_fit();
                frozen = true;
            }
            builds = 1;
            if (proposal)
                proposal->set_hmm(std::move(hmm));
            else
                proposal.emplace(grid, std::move(hmm), config.grid.resolved_outer_variance());
        }
        GridProposal* p = &*proposal;
        return PreparedSweep{p, builds, [p]() { return p->tilted_rows_built(); }};
    };
    return run_chain(model, update, y, config, theta0, x0, /*ancestor_sampling=*/true, prepare);
}

}  // namespace gridpg
