#include "gridpg/bench/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <memory>
#include <sstream>

#include <json.hpp>

#include "gridpg/common.hpp"
#include "gridpg/models/linear_gaussian.hpp"
#include "gridpg/oracles/kalman.hpp"

namespace gridpg {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

std::string sampler_name(SamplerKind kind) {
    switch (kind) {
        case SamplerKind::kPg: return "pg";
        case SamplerKind::kPgas: return "pgas";
        case SamplerKind::kGpgas: return "gpgas";
    }
    return "?";
}

struct ModelBundle {
    std::unique_ptr<SsmModel> model;
    ParameterUpdater updater;
};

ModelBundle make_model(const RunConfig& config) {
    ModelBundle b;
    if (config.model == "sv") {
        b.model = std::make_unique<SvModel>();
        if (config.fix_parameters) {
            b.updater = fixed_parameter_updater();
        } else {
            const SvPriors priors = config.priors;
            b.updater = [priors](const ModelParameters& theta, const StatePath& path,
                                 const ObservationSeries& y, RandomSource& rng) {
                return sv_gibbs_update(theta, path, y, priors, rng);
            };
        }
    } else if (config.model == "linear_gaussian") {
        b.model = std::make_unique<LinearGaussianModel>();
        b.updater = fixed_parameter_updater();
    } else {
        throw ConfigError("unknown model: " + config.model);
    }
    return b;
}

struct ReplicateResult {
    ResultRow row;
    json chain_json;
};

ReplicateResult run_replicate(const RunConfig& config, const Dataset& data,
                              const GroundTruth* truth, int replicate) {
    const ModelBundle bundle = make_model(config);
    SamplerConfig sampler = config.sampler;
    sampler.seed = config.replicate_seed(replicate);

    const auto tic = Clock::now();
    ChainRecord chain;
    switch (sampler.kind) {
        case SamplerKind::kPg: {
            PriorProposal proposal(*bundle.model);
            chain = pg_run(*bundle.model, proposal, bundle.updater, data.y, sampler, config.theta);
            break;
        }
        case SamplerKind::kPgas: {
            PriorProposal proposal(*bundle.model);
            chain = pgas_run(*bundle.model, proposal, bundle.updater, data.y, sampler, config.theta);
            break;
        }
        case SamplerKind::kGpgas:
            chain = gpgas_run(*bundle.model, bundle.updater, data.y, sampler, config.theta);
            break;
    }
    const double elapsed = std::chrono::duration<double>(Clock::now() - tic).count();

    const int T = data.length();
    const long S = sampler.iterations;

    ResultRow row;
    row.sampler = sampler_name(sampler.kind);
    row.grid_cells = sampler.kind == SamplerKind::kGpgas ? sampler.grid.cells : 0;
    row.particles = sampler.particles;
    row.psi = sampler.resample_threshold;
    row.seed = sampler.seed;
    row.iterations = S;
    row.wallclock_s = config.timing ? elapsed : 0.0;

    double not_updated = 0.0;
    for (int c : chain.diagnostics.states_not_updated) not_updated += c;
    row.not_updated_rate = not_updated / (static_cast<double>(S) * T);

    double ess_sum = 0.0;
    for (const auto& per_t : chain.diagnostics.ess)
        for (double e : per_t) ess_sum += e;
    row.mean_ess = ess_sum / (static_cast<double>(S) * T);

    const PooledMoments pooled = pool_chain_moments(chain.paths, config.warmup);
    if (truth) {
        const MraeResult m = mrae(pooled.mean, truth->mean);
        const MraeResult v = mrae(pooled.variance, truth->variance);
        row.mrae_mean = m.value;
        row.mrae_var = v.value;
        row.zero_guarded = m.zero_guarded || v.zero_guarded;
        if (data.truth) {
            std::vector<int> regimes(T);
            for (int t = 0; t < T; ++t) regimes[t] = (*data.truth)[t].regime;
            const SwitchingBreakdown br = switching_breakdown(pooled.mean, truth->mean, regimes);
            if (br.switching) row.mrae_mean_switch = br.switching->value;
            if (br.nonswitching) row.mrae_mean_nonswitch = br.nonswitching->value;
        }
    }

    // Chain artifact: thinned theta draws plus per-iteration diagnostics.
    json out;
    out["model"] = config.model;
    out["sampler"] = row.sampler;
    out["N"] = row.grid_cells;
    out["M"] = row.particles;
    out["psi"] = row.psi;
    out["seed"] = row.seed;
    out["iterations"] = S;
    out["warmup"] = config.warmup;
    out["thin"] = config.thin;
    out["wallclock_s"] = row.wallclock_s;
    out["mrae_zero_guarded"] = row.zero_guarded;
    json theta = json::array();
    for (long s = 0; s < S; s += config.thin) theta.push_back(chain.theta[s].values);
    out["theta"] = std::move(theta);
    out["posterior_mean"] = pooled.mean;
    out["posterior_variance"] = pooled.variance;
    if (!pooled.regime2_prob.empty()) out["regime2_prob"] = pooled.regime2_prob;
    json diag;
    diag["states_not_updated"] = chain.diagnostics.states_not_updated;
    diag["transition_builds"] = chain.diagnostics.transition_builds;
    diag["tilted_row_builds"] = chain.diagnostics.tilted_row_builds;
    diag["ancestor_fallbacks"] = chain.diagnostics.ancestor_fallbacks;
    std::vector<double> mean_ess_per_iter(S);
    std::vector<int> resamples_per_iter(S);
    for (long s = 0; s < S; ++s) {
        double acc = 0.0;
        int rs = 0;
        for (double e : chain.diagnostics.ess[s]) acc += e;
        for (auto f : chain.diagnostics.resampled[s]) rs += f;
        mean_ess_per_iter[s] = acc / T;
        resamples_per_iter[s] = rs;
    }
    diag["mean_ess"] = mean_ess_per_iter;
    diag["resample_count"] = resamples_per_iter;
    if (config.timing) diag["iteration_seconds"] = chain.diagnostics.iteration_seconds;
    out["diagnostics"] = std::move(diag);

    return ReplicateResult{std::move(row), std::move(out)};
}

}  // namespace

PooledMoments pool_chain_moments(const std::vector<StatePath>& paths, long warmup) {
    if (paths.empty()) throw ConfigError("pool_chain_moments: empty chain");
    const long S = static_cast<long>(paths.size());
    if (warmup >= S) throw ConfigError("pool_chain_moments: warmup consumes the whole chain");
    const int T = static_cast<int>(paths.front().size());
    const long n = S - warmup;

    PooledMoments out;
    out.mean.assign(T, 0.0);
    out.variance.assign(T, 0.0);
    out.regime2_prob.assign(T, 0.0);
    bool any_regime2 = false;
    for (long s = warmup; s < S; ++s) {
        for (int t = 0; t < T; ++t) {
            out.mean[t] += paths[s][t].value;
            if (paths[s][t].regime == 2) {
                out.regime2_prob[t] += 1.0;
                any_regime2 = true;
            }
        }
    }
    for (int t = 0; t < T; ++t) {
        out.mean[t] /= n;
        out.regime2_prob[t] /= n;
    }
    for (long s = warmup; s < S; ++s)
        for (int t = 0; t < T; ++t) {
            const double d = paths[s][t].value - out.mean[t];
            out.variance[t] += d * d;
        }
    for (int t = 0; t < T; ++t) out.variance[t] /= (n > 1 ? n - 1 : 1);
    if (!any_regime2) out.regime2_prob.clear();
    return out;
}

void write_ground_truth_json(const std::string& path, const GroundTruth& gt) {
    json j;
    j["source"] = gt.source;
    j["particles"] = gt.particles;
    j["iterations"] = gt.iterations;
    j["warmup"] = gt.warmup;
    j["seeds"] = gt.seeds;
    j["mean"] = gt.mean;
    j["variance"] = gt.variance;
    if (!gt.regime2_prob.empty()) j["regime2_prob"] = gt.regime2_prob;
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open ground truth file for writing: " + path);
    out << j.dump(2) << '\n';
}

GroundTruth read_ground_truth_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open ground truth file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("ground truth JSON parse error: ") + e.what());
    }
    GroundTruth gt;
    gt.source = j.value("source", std::string("?"));
    gt.particles = j.value("particles", 0);
    gt.iterations = j.value("iterations", 0L);
    gt.warmup = j.value("warmup", 0L);
    if (j.contains("seeds")) gt.seeds = j["seeds"].get<std::vector<std::uint64_t>>();
    gt.mean = j["mean"].get<std::vector<double>>();
    gt.variance = j["variance"].get<std::vector<double>>();
    if (j.contains("regime2_prob")) gt.regime2_prob = j["regime2_prob"].get<std::vector<double>>();
    return gt;
}

std::string result_row_csv(const ResultRow& r) {
    std::ostringstream out;
    out << r.sampler << ',' << r.grid_cells << ',' << r.particles << ',' << format_double(r.psi)
        << ',' << r.seed << ',' << r.iterations << ',' << format_double(r.wallclock_s) << ','
        << format_double(r.mrae_mean) << ',' << format_double(r.mrae_var) << ','
        << format_double(r.mrae_mean_switch) << ',' << format_double(r.mrae_mean_nonswitch) << ','
        << format_double(r.not_updated_rate) << ',' << format_double(r.mean_ess);
    return out.str();
}

void write_results_csv(const std::string& path, const std::vector<ResultRow>& rows) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open results file for writing: " + path);
    out << kResultsCsvHeader << '\n';
    for (const ResultRow& r : rows) out << result_row_csv(r) << '\n';
    if (!out) throw ConfigError("failed writing results file: " + path);
}

std::vector<ResultRow> read_results_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open results file: " + path);
    std::string line;
    if (!std::getline(in, line) || line != kResultsCsvHeader)
        throw ConfigError("unexpected results header in " + path);
    std::vector<ResultRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        ResultRow r;
        std::string field;
        auto next = [&]() {
            if (!std::getline(row, field, ',')) throw ConfigError("short results row: " + line);
            return field;
        };
        r.sampler = next();
        r.grid_cells = std::stoi(next());
        r.particles = std::stoi(next());
        r.psi = std::stod(next());
        r.seed = std::stoull(next());
        r.iterations = std::stol(next());
        r.wallclock_s = std::stod(next());
        r.mrae_mean = std::stod(next());
        r.mrae_var = std::stod(next());
        r.mrae_mean_switch = std::stod(next());
        r.mrae_mean_nonswitch = std::stod(next());
        r.not_updated_rate = std::stod(next());
        r.mean_ess = std::stod(next());
        rows.push_back(std::move(r));
    }
    return rows;
}

Dataset resolve_dataset(const RunConfig& config) {
    if (!config.dataset_path.empty()) return read_dataset_csv(config.dataset_path);
    if (!config.simulate) throw ConfigError("no dataset configured");
    const ModelBundle bundle = make_model(config);
    const ModelParameters theta =
        config.simulate->theta.values.empty() ? config.theta : config.simulate->theta;
    auto [path, y] = simulate_dataset(*bundle.model, theta, config.simulate->T, config.simulate->seed);
    Dataset data;
    data.y = std::move(y);
    data.truth = std::move(path);
    return data;
}

std::vector<ResultRow> run_experiment(const RunConfig& config) {
    config.validate();
    const Dataset data = resolve_dataset(config);

    GroundTruth truth;
    bool have_truth = false;
    if (!config.ground_truth_path.empty()) {
        truth = read_ground_truth_json(config.ground_truth_path);
        if (truth.length() != data.length())
            throw ConfigError("ground truth length does not match the dataset");
        have_truth = true;
    }

    std::filesystem::create_directories(config.output_dir);

    std::vector<ReplicateResult> results(config.replicates);
    const int workers = std::min(config.parallel, config.replicates);
    if (workers <= 1) {
        for (int r = 0; r < config.replicates; ++r)
            results[r] = run_replicate(config, data, have_truth ? &truth : nullptr, r);
    } else {
        std::atomic<int> cursor{0};
        std::vector<std::future<void>> futures;
        futures.reserve(workers);
        for (int w = 0; w < workers; ++w)
            futures.push_back(std::async(std::launch::async, [&]() {
                for (int r = cursor.fetch_add(1); r < config.replicates; r = cursor.fetch_add(1))
                    results[r] = run_replicate(config, data, have_truth ? &truth : nullptr, r);
            }));
        for (auto& f : futures) f.get();
    }

    std::vector<ResultRow> rows;
    rows.reserve(config.replicates);
    for (int r = 0; r < config.replicates; ++r) {
        rows.push_back(results[r].row);
        std::ostringstream name;
        name << sampler_name(config.sampler.kind) << "_N" << rows.back().grid_cells << "_M"
             << rows.back().particles << "_seed" << rows.back().seed << ".json";
        std::ofstream out(std::filesystem::path(config.output_dir) / name.str());
        out << results[r].chain_json.dump(2) << '\n';
    }
    write_results_csv((std::filesystem::path(config.output_dir) / "results.csv").string(), rows);
    return rows;
}

GroundTruth make_ground_truth(const RunConfig& config, const std::string& out_path) {
    config.validate();
    const Dataset data = resolve_dataset(config);

    GroundTruth gt;
    if (config.model == "linear_gaussian") {
        // Exact moments from the Kalman smoother; no sampling involved.
        const KalmanMoments km =
            kalman_smoother(LinearGaussianModel::spec_from(config.theta), data.y.values);
        gt.mean = km.smoothed_mean;
        gt.variance = km.smoothed_var;
        gt.source = "kalman";
    } else {
        SamplerConfig sampler = config.sampler;
        sampler.kind = SamplerKind::kPgas;
        const std::uint64_t seed0 = config.replicate_seed(0);
        const std::uint64_t seed1 = config.replicate_seed(1);

        auto run_one = [&](std::uint64_t seed) {
            const ModelBundle bundle = make_model(config);
            SamplerConfig sc = sampler;
            sc.seed = seed;
            PriorProposal proposal(*bundle.model);
            ChainRecord chain =
                pgas_run(*bundle.model, proposal, bundle.updater, data.y, sc, config.theta);
            return pool_chain_moments(chain.paths, config.warmup);
        };

        auto f1 = std::async(std::launch::async, run_one, seed1);
        const PooledMoments a = run_one(seed0);
        const PooledMoments b = f1.get();

        // Self-consistency gate: RMS disagreement of the per-t means within
        // twice the combined batch-means stderr would need per-chain series;
        // at pooled level we gate on RMS(delta) <= 2 * RMS(se_combined) using
        // the pooled variance / effective chain length proxy, plus a hard cap
        // on the worst-t z-score.
        const int T = data.length();
        const long n = sampler.iterations - config.warmup;
        double rms_delta = 0.0, rms_se = 0.0, worst_z = 0.0;
        for (int t = 0; t < T; ++t) {
            const double delta = a.mean[t] - b.mean[t];
            // Conservative effective-sample deflation for MCMC correlation.
            const double se2 = (a.variance[t] + b.variance[t]) / std::max(1.0, n / 20.0);
            rms_delta += delta * delta;
            rms_se += se2;
            worst_z = std::max(worst_z, std::abs(delta) / std::sqrt(se2));
        }
        rms_delta = std::sqrt(rms_delta / T);
        rms_se = std::sqrt(rms_se / T);
        if (rms_delta > 2.0 * rms_se || worst_z > 6.0) {
            std::ostringstream msg;
            msg << "ground truth seeds disagree (rms delta " << rms_delta << " vs allowance "
                << 2.0 * rms_se << ", worst z " << worst_z << "); refusing to bless";
            throw DegenerateWeightsError(msg.str());
        }

        gt.mean.resize(T);
        gt.variance.resize(T);
        for (int t = 0; t < T; ++t) {
            gt.mean[t] = 0.5 * (a.mean[t] + b.mean[t]);
            gt.variance[t] = 0.5 * (a.variance[t] + b.variance[t]);
        }
        if (!a.regime2_prob.empty() && !b.regime2_prob.empty()) {
            gt.regime2_prob.resize(T);
            for (int t = 0; t < T; ++t)
                gt.regime2_prob[t] = 0.5 * (a.regime2_prob[t] + b.regime2_prob[t]);
        }
        gt.source = "pgas";
        gt.seeds = {seed0, seed1};
    }
    gt.particles = config.sampler.particles;
    gt.iterations = config.sampler.iterations;
    gt.warmup = config.warmup;

    if (!out_path.empty()) write_ground_truth_json(out_path, gt);
    return gt;
}

std::string summarize_results(const std::vector<ResultRow>& rows) {
    struct Key {
        std::string sampler;
        int N, M;
        double psi;
        bool operator<(const Key& o) const {
            return std::tie(sampler, N, M, psi) < std::tie(o.sampler, o.N, o.M, o.psi);
        }
    };
    struct Acc {
        int count = 0;
        double wall = 0, mean = 0, var = 0, sw = 0, nsw = 0, nur = 0, ess = 0;
        int sw_n = 0, nsw_n = 0;
    };
    std::map<Key, Acc> groups;
    for (const ResultRow& r : rows) {
        Acc& a = groups[Key{r.sampler, r.grid_cells, r.particles, r.psi}];
        ++a.count;
        a.wall += r.wallclock_s;
        a.mean += r.mrae_mean;
        a.var += r.mrae_var;
        if (!std::isnan(r.mrae_mean_switch)) {
            a.sw += r.mrae_mean_switch;
            ++a.sw_n;
        }
        if (!std::isnan(r.mrae_mean_nonswitch)) {
            a.nsw += r.mrae_mean_nonswitch;
            ++a.nsw_n;
        }
        a.nur += r.not_updated_rate;
        a.ess += r.mean_ess;
    }
    std::ostringstream out;
    out << "sampler,N,M,psi,replicates,wallclock_s_mean,mrae_mean_avg,mrae_var_avg,"
           "mrae_mean_switch_avg,mrae_mean_nonswitch_avg,not_updated_rate_avg,mean_ess_avg\n";
    for (const auto& [key, a] : groups) {
        out << key.sampler << ',' << key.N << ',' << key.M << ',' << format_double(key.psi) << ','
            << a.count << ',' << format_double(a.wall / a.count) << ','
            << format_double(a.mean / a.count) << ',' << format_double(a.var / a.count) << ','
            << format_double(a.sw_n ? a.sw / a.sw_n : std::nan("")) << ','
            << format_double(a.nsw_n ? a.nsw / a.nsw_n : std::nan("")) << ','
            << format_double(a.nur / a.count) << ',' << format_double(a.ess / a.count) << '\n';
    }
    return out.str();
}

}  // namespace gridpg
