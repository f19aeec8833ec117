// Command-line harness: simulate datasets, run sampler configurations,
// produce ground-truth references, and aggregate result tables.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "gridpg/bench/experiment.hpp"
#include "gridpg/common.hpp"

using namespace gridpg;

namespace {

struct CommonFlags {
    std::string config_path;
    // CLI overrides; negative / empty sentinels mean "not given".
    std::string model, dataset, output_dir, ground_truth, sampler_kind;
    int M = -1, N = -1, replicates = -1, T = -1, parallel = -1;
    long S = -1, warmup = -1;
    double psi = -1.0;
    std::int64_t seed = -1, seed_base = -1, sim_seed = -1;
    int timing = -1;
};

void add_common_flags(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config_path, "JSON config file supplying every field");
    cmd->add_option("--model", f.model, "sv | linear_gaussian");
    cmd->add_option("--dataset", f.dataset, "dataset CSV path");
    cmd->add_option("--sampler", f.sampler_kind, "pg | pgas | gpgas");
    cmd->add_option("--output-dir", f.output_dir, "output directory");
    cmd->add_option("--ground-truth", f.ground_truth, "ground truth JSON path");
    cmd->add_option("-M,--particles", f.M, "particle count");
    cmd->add_option("-N,--grid-cells", f.N, "grid cell count (gpgas)");
    cmd->add_option("-S,--iterations", f.S, "MCMC iterations");
    cmd->add_option("--psi", f.psi, "resampling threshold in (0,1]");
    cmd->add_option("--seed", f.seed, "sampler seed");
    cmd->add_option("--seed-base", f.seed_base, "first replicate seed");
    cmd->add_option("--warmup", f.warmup, "warmup iterations discarded by metrics");
    cmd->add_option("--replicates", f.replicates, "replicate count");
    cmd->add_option("--sim-T", f.T, "simulated series length");
    cmd->add_option("--sim-seed", f.sim_seed, "simulation seed");
    cmd->add_option("--parallel", f.parallel, "replicate worker threads");
    cmd->add_option("--timing", f.timing, "1 records wall-clock, 0 writes zeros");
}

RunConfig build_config(const CommonFlags& f) {
    RunConfig cfg;
    if (!f.config_path.empty()) cfg = load_run_config(f.config_path);
    if (!f.model.empty()) {
        cfg.model = f.model;
        cfg.theta = default_theta(f.model);
        if (f.model == "linear_gaussian") cfg.fix_parameters = true;
    }
    if (!f.dataset.empty()) cfg.dataset_path = f.dataset;
    if (!f.sampler_kind.empty()) {
        if (f.sampler_kind == "pg") cfg.sampler.kind = SamplerKind::kPg;
        else if (f.sampler_kind == "pgas") cfg.sampler.kind = SamplerKind::kPgas;
        else if (f.sampler_kind == "gpgas") cfg.sampler.kind = SamplerKind::kGpgas;
        else throw ConfigError("unknown sampler kind: " + f.sampler_kind);
    }
    if (!f.output_dir.empty()) cfg.output_dir = f.output_dir;
    if (!f.ground_truth.empty()) cfg.ground_truth_path = f.ground_truth;
    if (f.M > 0) cfg.sampler.particles = f.M;
    if (f.N > 0) cfg.sampler.grid.cells = f.N;
    if (f.S > 0) cfg.sampler.iterations = f.S;
    if (f.psi > 0) cfg.sampler.resample_threshold = f.psi;
    if (f.seed >= 0) cfg.sampler.seed = static_cast<std::uint64_t>(f.seed);
    if (f.seed_base >= 0) cfg.seed_base = static_cast<std::uint64_t>(f.seed_base);
    if (f.warmup >= 0) cfg.warmup = f.warmup;
    if (f.replicates > 0) cfg.replicates = f.replicates;
    if (f.parallel > 0) cfg.parallel = f.parallel;
    if (f.timing >= 0) cfg.timing = f.timing != 0;
    if (f.T > 0 || f.sim_seed >= 0) {
        SimulateSettings sim = cfg.simulate.value_or(SimulateSettings{});
        if (f.T > 0) sim.T = f.T;
        if (f.sim_seed >= 0) sim.seed = static_cast<std::uint64_t>(f.sim_seed);
        cfg.simulate = sim;
    }
    return cfg;
}

int run_simulate(const CommonFlags& f, const std::string& out_path) {
    RunConfig cfg = build_config(f);
    if (!cfg.simulate) cfg.simulate = SimulateSettings{};
    cfg.dataset_path.clear();
    const Dataset data = resolve_dataset(cfg);
    write_dataset_csv(out_path, data);
    std::cout << "wrote " << data.length() << " rows to " << out_path << "\n";
    return 0;
}

int run_run(const CommonFlags& f) {
    const RunConfig cfg = build_config(f);
    const auto rows = run_experiment(cfg);
    std::cout << kResultsCsvHeader << "\n";
    for (const auto& row : rows) std::cout << result_row_csv(row) << "\n";
    std::cout << "results written to " << cfg.output_dir << "\n";
    return 0;
}

int run_ground_truth(const CommonFlags& f, const std::string& out_path) {
    const RunConfig cfg = build_config(f);
    const GroundTruth gt = make_ground_truth(cfg, out_path);
    std::cout << "ground truth (" << gt.source << ", T=" << gt.length() << ") written to "
              << out_path << "\n";
    return 0;
}

int run_report(const std::vector<std::string>& result_files, const std::string& out_path) {
    std::vector<ResultRow> rows;
    for (const std::string& path : result_files) {
        auto more = read_results_csv(path);
        rows.insert(rows.end(), more.begin(), more.end());
    }
    const std::string summary = summarize_results(rows);
    if (out_path.empty()) {
        std::cout << summary;
    } else {
        std::ofstream out(out_path);
        if (!out) throw ConfigError("cannot open report output: " + out_path);
        out << summary;
        std::cout << "summary written to " << out_path << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"state-space model inference benchmarks (PG / PGAS / GPGAS)"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::string out_path;
    std::vector<std::string> result_files;

    CLI::App* simulate = app.add_subcommand("simulate", "simulate a dataset CSV");
    add_common_flags(simulate, flags);
    simulate->add_option("--out", out_path, "output CSV path")->required();

    CLI::App* run = app.add_subcommand("run", "run a sampler configuration");
    add_common_flags(run, flags);

    CLI::App* ground = app.add_subcommand("ground-truth", "produce a blessed reference run");
    add_common_flags(ground, flags);
    ground->add_option("--out", out_path, "output JSON path")->required();

    CLI::App* report = app.add_subcommand("report", "aggregate result CSVs");
    report->add_option("--results", result_files, "result CSV files")->required();
    report->add_option("--out", out_path, "summary CSV path (stdout when omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) return run_simulate(flags, out_path);
        if (run->parsed()) return run_run(flags);
        if (ground->parsed()) return run_ground_truth(flags, out_path);
        if (report->parsed()) return run_report(result_files, out_path);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 1;
    } catch (const ParameterDomainError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 1;
    } catch (const DegenerateWeightsError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
