#include "lucelab/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

namespace lucelab {

namespace {

using nlohmann::json;

std::vector<double> parse_double_csv(const std::string& text) {
    std::vector<double> values;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t pos = 0;
            values.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError("cannot parse number: '" + item + "'");
        }
    }
    if (values.empty()) throw ConfigError("empty numeric list");
    return values;
}

std::vector<OptionId> parse_option_csv(const std::string& text) {
    std::vector<OptionId> ids;
    for (double v : parse_double_csv(text)) {
        const auto id = static_cast<OptionId>(v);
        if (static_cast<double>(id) != v) throw ConfigError("option ids must be integers");
        ids.push_back(id);
    }
    return ids;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// %.17g: enough digits for exact double round-trips.
std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << content;
    out.flush();
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace

std::string options_to_json(const CliOptions& options) {
    const ScenarioConfig& c = options.config;
    json j;
    j["scenario"] = to_string(c.scenario);
    j["model"] = to_string(c.model);
    j["policy"] = to_string(c.policy);
    j["K"] = c.K;
    j["L"] = c.L;
    j["T"] = c.T;
    j["runs"] = c.runs;
    j["theta"] = c.theta_true;
    if (!c.alpha.empty()) j["alpha"] = c.alpha;
    j["promoted_option"] = c.promoted_option;
    j["init_phase_length"] = c.init_phase_length;
    if (!c.init_pool.empty()) j["init_pool"] = c.init_pool;
    j["thompson_sweeps"] = c.budget.thompson_sweeps;
    j["estimate_samples"] = c.budget.estimate_samples;
    j["estimate_burn_in"] = c.budget.estimate_burn_in;
    j["thin"] = c.budget.thin;
    j["seed"] = c.master_seed;
    j["workers"] = options.workers;
    j["out_dir"] = options.out_dir;
    j["format"] = options.format;
    j["keep_trajectories"] = options.keep_trajectories;
    return j.dump(2) + "\n";
}

CliOptions options_from_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
    }
    CliOptions options;
    ScenarioConfig& c = options.config;
    try {
        if (j.contains("scenario")) c.scenario = scenario_from_string(j["scenario"]);
        if (j.contains("model")) c.model = model_from_string(j["model"]);
        if (j.contains("policy")) c.policy = policy_from_string(j["policy"]);
        if (j.contains("K")) c.K = j["K"];
        if (j.contains("L")) c.L = j["L"];
        if (j.contains("T")) c.T = j["T"];
        if (j.contains("runs")) c.runs = j["runs"];
        if (j.contains("theta")) c.theta_true = j["theta"].get<std::vector<double>>();
        if (j.contains("alpha")) c.alpha = j["alpha"].get<std::vector<double>>();
        if (j.contains("promoted_option")) c.promoted_option = j["promoted_option"];
        if (j.contains("init_phase_length")) c.init_phase_length = j["init_phase_length"];
        if (j.contains("init_pool")) c.init_pool = j["init_pool"].get<std::vector<OptionId>>();
        if (j.contains("thompson_sweeps")) c.budget.thompson_sweeps = j["thompson_sweeps"];
        if (j.contains("estimate_samples")) c.budget.estimate_samples = j["estimate_samples"];
        if (j.contains("estimate_burn_in")) c.budget.estimate_burn_in = j["estimate_burn_in"];
        if (j.contains("thin")) c.budget.thin = j["thin"];
        if (j.contains("seed")) c.master_seed = j["seed"];
        if (j.contains("workers")) options.workers = j["workers"];
        if (j.contains("out_dir")) options.out_dir = j["out_dir"];
        if (j.contains("format")) options.format = j["format"];
        if (j.contains("keep_trajectories")) options.keep_trajectories = j["keep_trajectories"];
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad config field type: ") + e.what());
    }
    return options;
}

CliOptions parse_invocation(int argc, const char* const* argv) {
    CLI::App app{"lucelab: presentation-conditioned preference inference simulations"};

    std::string config_path, scenario, model, policy, theta_csv, alpha_csv, init_pool_csv;
    std::string out_dir, format;
    int K = 0, L = 0, T = 0, runs = 0, promoted = 0, init_phase = 0;
    int sweeps = 0, samples = 0, burn_in = 0, thin = 0, workers = 0;
    std::uint64_t seed = 0;
    bool keep = false;

    app.add_option("--config", config_path, "JSON config file (flags override its fields)");
    app.add_option("--scenario", scenario, "free|promotion|censorship|unfair");
    app.add_option("--model", model, "dirichlet-luce|dirichlet-multinomial");
    app.add_option("--policy", policy, "thompson|greedy");
    app.add_option("--K", K, "number of options");
    app.add_option("--L", L, "presentation size");
    app.add_option("--T", T, "interactions per run");
    app.add_option("--runs", runs, "independent runs");
    app.add_option("--seed", seed, "master seed (fallback: LUCELAB_SEED)");
    app.add_option("--theta", theta_csv, "true preferences, comma-separated");
    app.add_option("--alpha", alpha_csv, "prior pseudo-counts, comma-separated");
    app.add_option("--promoted-option", promoted, "0-based promoted option (promotion scenario)");
    app.add_option("--init-phase-length", init_phase, "constrained initial interactions");
    app.add_option("--init-pool", init_pool_csv, "0-based initial pool, comma-separated");
    app.add_option("--thompson-sweeps", sweeps, "Gibbs sweeps per Thompson draw");
    app.add_option("--estimate-samples", samples, "samples for the final estimate");
    app.add_option("--estimate-burn-in", burn_in, "burn-in for the final estimate");
    app.add_option("--thin", thin, "thinning for the final estimate");
    app.add_option("--workers", workers, "parallel episodes (0 = all cores)");
    app.add_option("--out-dir", out_dir, "output directory");
    app.add_option("--format", format, "csv|json");
    app.add_flag("--keep-trajectories", keep, "also write the per-interaction log");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested{app.help()};
    } catch (const CLI::ParseError& e) {
        throw ConfigError(e.what());
    }

    CliOptions options;
    if (const char* env_seed = std::getenv("LUCELAB_SEED")) {
        try {
            options.config.master_seed = std::stoull(env_seed);
        } catch (const std::exception&) {
            throw ConfigError("LUCELAB_SEED is not an integer");
        }
    }
    if (!config_path.empty()) {
        const std::uint64_t env_fallback = options.config.master_seed;
        const std::string text = read_file(config_path);
        options = options_from_json(text);
        if (!json::parse(text).contains("seed")) {
            options.config.master_seed = env_fallback;
        }
    }

    ScenarioConfig& c = options.config;
    if (app.count("--scenario")) c.scenario = scenario_from_string(scenario);
    if (app.count("--model")) c.model = model_from_string(model);
    if (app.count("--policy")) c.policy = policy_from_string(policy);
    if (app.count("--K")) c.K = K;
    if (app.count("--L")) c.L = L;
    if (app.count("--T")) c.T = T;
    if (app.count("--runs")) c.runs = runs;
    if (app.count("--seed")) c.master_seed = seed;
    if (app.count("--theta")) c.theta_true = parse_double_csv(theta_csv);
    if (app.count("--alpha")) c.alpha = parse_double_csv(alpha_csv);
    if (app.count("--promoted-option")) c.promoted_option = promoted;
    if (app.count("--init-phase-length")) c.init_phase_length = init_phase;
    if (app.count("--init-pool")) c.init_pool = parse_option_csv(init_pool_csv);
    if (app.count("--thompson-sweeps")) c.budget.thompson_sweeps = sweeps;
    if (app.count("--estimate-samples")) c.budget.estimate_samples = samples;
    if (app.count("--estimate-burn-in")) c.budget.estimate_burn_in = burn_in;
    if (app.count("--thin")) c.budget.thin = thin;
    if (app.count("--workers")) options.workers = workers;
    if (app.count("--out-dir")) options.out_dir = out_dir;
    if (app.count("--format")) options.format = format;
    if (keep) options.keep_trajectories = true;

    if (options.format != "csv" && options.format != "json") {
        throw ConfigError("format must be csv or json");
    }
    c.validate();
    return options;
}

void emit_results(const CliOptions& options, const ExperimentSummary& summary,
                  double wall_seconds) {
    namespace fs = std::filesystem;
    const fs::path dir(options.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory: " + dir.string());

    const ScenarioConfig& c = options.config;

    json js;
    js["scenario"] = to_string(c.scenario);
    js["model"] = to_string(c.model);
    js["policy"] = to_string(c.policy);
    js["K"] = c.K;
    js["L"] = c.L;
    js["T"] = c.T;
    js["runs"] = c.runs;
    js["seed"] = c.master_seed;
    js["theta_true"] = c.theta_true;
    js["mean_estimate"] = summary.mean_estimate;
    js["std_estimate"] = summary.std_estimate;
    js["mean_abs_error"] = summary.mean_abs_error;
    js["late_window_top_l_rate"] = summary.late_window_top_l_rate;
    js["run_estimates"] = summary.run_estimates;
    js["std_convention"] = "population";
    js["late_window"] = late_window_length(c.T);
    js["wall_seconds"] = wall_seconds;
    js["version"] = "0.1.0";
    write_file(dir / "summary.json", js.dump(2) + "\n");

    if (options.format == "json") {
        json rows = json::array();
        for (std::size_t r = 0; r < summary.run_estimates.size(); ++r) {
            for (std::size_t k = 0; k < summary.run_estimates[r].size(); ++k) {
                rows.push_back({{"run", r},
                                {"option", k},
                                {"theta_true", c.theta_true[k]},
                                {"theta_hat", summary.run_estimates[r][k]},
                                {"abs_error", std::abs(summary.run_estimates[r][k] - c.theta_true[k])}});
            }
        }
        write_file(dir / "estimates.json", rows.dump(2) + "\n");
    } else {
        std::ostringstream csv;
        csv << "run,option,theta_true,theta_hat,abs_error\n";
        for (std::size_t r = 0; r < summary.run_estimates.size(); ++r) {
            for (std::size_t k = 0; k < summary.run_estimates[r].size(); ++k) {
                csv << r << ',' << k << ',' << fmt17(c.theta_true[k]) << ','
                    << fmt17(summary.run_estimates[r][k]) << ','
                    << fmt17(std::abs(summary.run_estimates[r][k] - c.theta_true[k])) << '\n';
            }
        }
        write_file(dir / "estimates.csv", csv.str());
    }

    if (options.keep_trajectories && !summary.trajectories.empty()) {
        std::ostringstream csv;
        csv << "run,t,presentation,choice\n";
        for (const auto& traj : summary.trajectories) {
            for (const auto& rec : traj.records) {
                csv << traj.run_index << ',' << rec.t << ',' << rec.presented.to_string() << ','
                    << rec.chosen << '\n';
            }
        }
        write_file(dir / "trajectory.csv", csv.str());
    }

    write_file(dir / "config.echo.json", options_to_json(options));
}

}  // namespace lucelab
