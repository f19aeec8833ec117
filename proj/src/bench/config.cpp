#include "gridpg/bench/config.hpp"

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "gridpg/common.hpp"
#include "gridpg/models/linear_gaussian.hpp"

namespace gridpg {

using nlohmann::json;

namespace {

ModelParameters theta_from_json(const std::string& model, const json& j) {
    if (j.is_array()) return ModelParameters{j.get<std::vector<double>>()};
    if (!j.is_object()) throw ConfigError("config: theta must be an array or object");
    if (model == "sv") {
        ModelParameters th = default_theta("sv");
        th[SvModel::kGamma1] = j.value("gamma1", th[SvModel::kGamma1]);
        th[SvModel::kGamma2] = j.value("gamma2", th[SvModel::kGamma2]);
        th[SvModel::kPhi] = j.value("phi", th[SvModel::kPhi]);
        th[SvModel::kSigma2Eta] = j.value("sigma2_eta", th[SvModel::kSigma2Eta]);
        th[SvModel::kMu] = j.value("mu", th[SvModel::kMu]);
        th[SvModel::kPi11] = j.value("pi11", th[SvModel::kPi11]);
        return th;
    }
    if (model == "linear_gaussian") {
        ModelParameters th = default_theta("linear_gaussian");
        th[LinearGaussianModel::kStateCoef] = j.value("state_coef", th[LinearGaussianModel::kStateCoef]);
        th[LinearGaussianModel::kStateVar] = j.value("state_var", th[LinearGaussianModel::kStateVar]);
        th[LinearGaussianModel::kObsCoef] = j.value("obs_coef", th[LinearGaussianModel::kObsCoef]);
        th[LinearGaussianModel::kObsVar] = j.value("obs_var", th[LinearGaussianModel::kObsVar]);
        th[LinearGaussianModel::kInitMean] = j.value("init_mean", th[LinearGaussianModel::kInitMean]);
        th[LinearGaussianModel::kInitVar] = j.value("init_var", th[LinearGaussianModel::kInitVar]);
        return th;
    }
    throw ConfigError("config: unknown model '" + model + "'");
}

SamplerKind kind_from_string(const std::string& s) {
    if (s == "pg") return SamplerKind::kPg;
    if (s == "pgas") return SamplerKind::kPgas;
    if (s == "gpgas") return SamplerKind::kGpgas;
    throw ConfigError("config: unknown sampler kind '" + s + "'");
}

}  // namespace

ModelParameters default_theta(const std::string& model) {
    if (model == "sv") return SvModel::make_params(-5.0, 5.0, 0.95, 0.1, 1.0, 0.85);
    if (model == "linear_gaussian") return LinearGaussianModel::make_params(KalmanModelSpec{});
    throw ConfigError("config: unknown model '" + model + "'");
}

void RunConfig::validate() const {
    if (model != "sv" && model != "linear_gaussian")
        throw ConfigError("config: unknown model '" + model + "'");
    if (model == "linear_gaussian" && !fix_parameters)
        throw ConfigError("config: linear_gaussian runs require fix_parameters");
    if (dataset_path.empty() && !simulate)
        throw ConfigError("config: either dataset or simulate settings are required");
    if (!dataset_path.empty() && !std::filesystem::exists(dataset_path))
        throw ConfigError("config: dataset file does not exist: " + dataset_path);
    if (!ground_truth_path.empty() && !std::filesystem::exists(ground_truth_path))
        throw ConfigError("config: ground truth file does not exist: " + ground_truth_path);
    if (replicates < 1) throw ConfigError("config: replicates must be >= 1");
    if (warmup < 0 || warmup >= sampler.iterations)
        throw ConfigError("config: warmup must lie in [0, iterations)");
    if (thin < 1) throw ConfigError("config: thin must be >= 1");
    if (parallel < 1) throw ConfigError("config: parallel must be >= 1");
    if (simulate && simulate->T < 1) throw ConfigError("config: simulate.T must be >= 1");
    sampler.validate();
}

RunConfig parse_run_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: JSON parse error: ") + e.what());
    }

    RunConfig cfg;
    cfg.model = j.value("model", cfg.model);
    cfg.fix_parameters = j.value("fix_parameters", cfg.fix_parameters);
    cfg.theta = j.contains("theta") ? theta_from_json(cfg.model, j["theta"])
                                    : default_theta(cfg.model);

    if (j.contains("priors")) {
        const json& p = j["priors"];
        cfg.priors.gamma1_mean = p.value("gamma1_mean", cfg.priors.gamma1_mean);
        cfg.priors.gamma1_var = p.value("gamma1_var", cfg.priors.gamma1_var);
        cfg.priors.gamma2_mean = p.value("gamma2_mean", cfg.priors.gamma2_mean);
        cfg.priors.gamma2_var = p.value("gamma2_var", cfg.priors.gamma2_var);
        cfg.priors.phi_mean = p.value("phi_mean", cfg.priors.phi_mean);
        cfg.priors.phi_var = p.value("phi_var", cfg.priors.phi_var);
        cfg.priors.sigma2_shape = p.value("sigma2_shape", cfg.priors.sigma2_shape);
        cfg.priors.sigma2_rate = p.value("sigma2_rate", cfg.priors.sigma2_rate);
        cfg.priors.mu_mean = p.value("mu_mean", cfg.priors.mu_mean);
        cfg.priors.mu_var = p.value("mu_var", cfg.priors.mu_var);
        cfg.priors.pi11_a = p.value("pi11_a", cfg.priors.pi11_a);
        cfg.priors.pi11_b = p.value("pi11_b", cfg.priors.pi11_b);
    }

    cfg.dataset_path = j.value("dataset", cfg.dataset_path);
    if (j.contains("simulate")) {
        const json& s = j["simulate"];
        SimulateSettings sim;
        sim.T = s.value("T", sim.T);
        sim.seed = s.value("seed", sim.seed);
        sim.theta = s.contains("theta") ? theta_from_json(cfg.model, s["theta"]) : cfg.theta;
        cfg.simulate = sim;
    }

    if (j.contains("sampler")) {
        const json& s = j["sampler"];
        cfg.sampler.kind = kind_from_string(s.value("kind", std::string("pgas")));
        cfg.sampler.particles = s.value("M", cfg.sampler.particles);
        cfg.sampler.iterations = s.value("S", cfg.sampler.iterations);
        cfg.sampler.resample_threshold = s.value("psi", cfg.sampler.resample_threshold);
        cfg.sampler.seed = s.value("seed", cfg.sampler.seed);
        if (s.contains("grid")) {
            const json& g = s["grid"];
            cfg.sampler.grid.cells = g.value("N", cfg.sampler.grid.cells);
            cfg.sampler.grid.lo = g.value("lo", cfg.sampler.grid.lo);
            cfg.sampler.grid.hi = g.value("hi", cfg.sampler.grid.hi);
            cfg.sampler.grid.floor = g.value("floor", cfg.sampler.grid.floor);
            cfg.sampler.grid.outer_variance = g.value("outer_variance", cfg.sampler.grid.outer_variance);
        }
        if (s.contains("freeze")) {
            const json& f = s["freeze"];
            cfg.sampler.freeze.freeze_after = f.value("after", cfg.sampler.freeze.freeze_after);
            cfg.sampler.freeze.window = f.value("window", cfg.sampler.freeze.window);
        }
    }

    cfg.output_dir = j.value("output_dir", cfg.output_dir);
    cfg.warmup = j.value("warmup", cfg.warmup);
    cfg.replicates = j.value("replicates", cfg.replicates);
    if (j.contains("seed_base")) cfg.seed_base = j["seed_base"].get<std::uint64_t>();
    cfg.ground_truth_path = j.value("ground_truth", cfg.ground_truth_path);
    cfg.thin = j.value("thin", cfg.thin);
    cfg.timing = j.value("timing", cfg.timing);
    cfg.parallel = j.value("parallel", cfg.parallel);
    return cfg;
}

RunConfig load_run_config(const std::string& json_path) {
    std::ifstream in(json_path);
    if (!in) throw ConfigError("cannot open config file: " + json_path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_run_config(text);
}

}  // namespace gridpg
