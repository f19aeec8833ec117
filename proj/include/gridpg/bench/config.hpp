#pragma once

#include <optional>
#include <string>

#include "gridpg/models/sv.hpp"
#include "gridpg/samplers.hpp"

namespace gridpg {

struct SimulateSettings {
    int T = 100;
    std::uint64_t seed = 1;
    ModelParameters theta;  // empty selects the model's default parameters
};

// Full description of one experiment; every field is addressable from the
// JSON config file (schema in docs/formats.md) and overridable by CLI flags.
struct RunConfig {
    std::string model = "sv";  // "sv" | "linear_gaussian"
    ModelParameters theta;     // initial (or fixed) parameter values
    bool fix_parameters = false;
    SvPriors priors;

    std::string dataset_path;                   // read this file ...
    std::optional<SimulateSettings> simulate;   // ... or simulate in-process

    SamplerConfig sampler;

    std::string output_dir = ".";
    long warmup = 0;
    int replicates = 1;
    std::optional<std::uint64_t> seed_base;     // defaults to sampler.seed
    std::string ground_truth_path;              // metrics reference, optional
    int thin = 1;                               // theta stride in chain JSON
    bool timing = true;                         // false writes wallclock as 0
    int parallel = 1;                           // replicate worker threads

    std::uint64_t replicate_seed(int r) const {
        return (seed_base ? *seed_base : sampler.seed) + static_cast<std::uint64_t>(r);
    }

    void validate() const;
};

ModelParameters default_theta(const std::string& model);

RunConfig load_run_config(const std::string& json_path);
RunConfig parse_run_config(const std::string& json_text);

}  // namespace gridpg
