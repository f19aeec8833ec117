#pragma once

#include <string>
#include <vector>

#include "gridpg/bench/config.hpp"
#include "gridpg/bench/dataset_io.hpp"
#include "gridpg/bench/metrics.hpp"

namespace gridpg {

// Per-t posterior summaries of the continuous state plus provenance.
struct GroundTruth {
    std::vector<double> mean;          // E[x_t | y]
    std::vector<double> variance;      // Var[x_t | y]
    std::vector<double> regime2_prob;  // P(s_t = 2 | y); empty for R = 1

    std::string source;  // "pgas" | "kalman"
    int particles = 0;
    long iterations = 0;
    long warmup = 0;
    std::vector<std::uint64_t> seeds;

    int length() const { return static_cast<int>(mean.size()); }
};

void write_ground_truth_json(const std::string& path, const GroundTruth& gt);
GroundTruth read_ground_truth_json(const std::string& path);

struct ResultRow {
    std::string sampler;  // "pg" | "pgas" | "gpgas"
    int grid_cells = 0;   // 0 for non-grid samplers
    int particles = 0;
    double psi = 0.0;
    std::uint64_t seed = 0;
    long iterations = 0;
    double wallclock_s = 0.0;
    double mrae_mean = std::nan("");
    double mrae_var = std::nan("");
    double mrae_mean_switch = std::nan("");
    double mrae_mean_nonswitch = std::nan("");
    double not_updated_rate = 0.0;
    double mean_ess = 0.0;
    bool zero_guarded = false;  // recorded in the chain JSON, not the CSV
};

inline constexpr const char* kResultsCsvHeader =
    "sampler,N,M,psi,seed,iterations,wallclock_s,mrae_mean,mrae_var,"
    "mrae_mean_switch,mrae_mean_nonswitch,not_updated_rate,mean_ess";

std::string result_row_csv(const ResultRow& row);
void write_results_csv(const std::string& path, const std::vector<ResultRow>& rows);
std::vector<ResultRow> read_results_csv(const std::string& path);

// Pooled per-t posterior summaries of a chain after warmup.
struct PooledMoments {
    std::vector<double> mean, variance, regime2_prob;
};
PooledMoments pool_chain_moments(const std::vector<StatePath>& paths, long warmup);

// Runs every replicate of the configured experiment, writes
// <output_dir>/results.csv and one chain JSON per replicate, and returns the
// rows. Wall-clock covers the sampling loop only.
std::vector<ResultRow> run_experiment(const RunConfig& config);

// Long PGAS reference run (two independent seeds, self-consistency gated) or
// the exact Kalman moments for the linear-Gaussian model. Writes the JSON
// artifact when `out_path` is nonempty.
GroundTruth make_ground_truth(const RunConfig& config, const std::string& out_path = "");

// Loads a dataset per the config (file or in-process simulation).
Dataset resolve_dataset(const RunConfig& config);

// Aggregates result rows over seeds per configuration; used by `report`.
std::string summarize_results(const std::vector<ResultRow>& rows);

}  // namespace gridpg
