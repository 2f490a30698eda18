#ifndef LUCELAB_HARNESS_HPP
#define LUCELAB_HARNESS_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lucelab/core.hpp"
#include "lucelab/model.hpp"
#include "lucelab/policy.hpp"

namespace lucelab {

enum class Scenario { free_play, promotion, censorship, unfair_comparison };
enum class ModelKind { dirichlet_luce, dirichlet_multinomial };

std::string to_string(Scenario s);
std::string to_string(ModelKind m);
std::string to_string(PolicyKind p);
Scenario scenario_from_string(const std::string& s);
ModelKind model_from_string(const std::string& s);
PolicyKind policy_from_string(const std::string& s);

struct SamplerBudget {
    int thompson_sweeps = 5;
    int estimate_samples = 4000;
    int estimate_burn_in = 1000;
    int thin = 1;
};

// Full experiment description. Defaults reproduce the desk-scale setup:
// two of five options per presentation, 10000 interactions, 10 runs.
struct ScenarioConfig {
    Scenario scenario = Scenario::free_play;
    int K = 5;
    int L = 2;
    int T = 10000;
    int runs = 10;
    std::vector<double> theta_true = {0.40, 0.25, 0.16, 0.11, 0.08};
    ModelKind model = ModelKind::dirichlet_luce;
    PolicyKind policy = PolicyKind::thompson;
    std::vector<double> alpha;  // empty: flat prior of ones
    OptionId promoted_option = 2;
    int init_phase_length = 100;
    std::vector<OptionId> init_pool;  // empty: scenario default
    SamplerBudget budget;
    std::uint64_t master_seed = 0;

    std::vector<double> effective_alpha() const;
    std::vector<OptionId> effective_init_pool() const;
    void validate() const;  // throws ConfigError
};

struct EpisodeTrajectory {
    int run_index = 0;
    std::vector<InteractionRecord> records;
    PreferenceVector final_estimate;
    // Estimate right after the constrained phase (censorship and
    // unfair-comparison scenarios; the figures' left panels).
    std::optional<PreferenceVector> post_phase_estimate;
    std::vector<std::int64_t> presented_counts;
    std::vector<std::int64_t> chosen_counts;
};

struct Metrics {
    std::vector<double> abs_error;
    std::vector<double> presentation_frequency;
    double late_window_top_l_rate = 0.0;
};

struct ExperimentSummary {
    std::vector<double> mean_estimate;
    std::vector<double> std_estimate;  // population std across runs
    std::vector<double> mean_abs_error;
    double late_window_top_l_rate = 0.0;
    std::vector<std::vector<double>> run_estimates;
    std::vector<EpisodeTrajectory> trajectories;  // filled only on request
};

// Constructs the inference engine for one episode.
std::unique_ptr<PreferenceModel> make_model(const ScenarioConfig& config);

// Constraint active at interaction t (1-based):
//   free:       none
//   promotion:  forced = {promoted_option} for all t
//   censorship: pool = init_pool for t <= init_phase_length
//   unfair:     pool = init_pool (|pool| = L, so the presentation is the
//               fixed pair) for t <= init_phase_length
PresentationConstraint constraint_schedule(const ScenarioConfig& config, int t);

// Deterministic given (master_seed, run_index): policy, user, and
// estimator rng streams are derived independently.
EpisodeTrajectory run_episode(const ScenarioConfig& config, int run_index);

ExperimentSummary run_experiment(const ScenarioConfig& config, int workers = 0,
                                 bool keep_trajectories = false);

int late_window_length(int t_total);  // max(1000, T/10), capped at T

Metrics compute_metrics(const EpisodeTrajectory& trajectory, const PreferenceVector& theta_true,
                        int L);

}  // namespace lucelab

#endif  // LUCELAB_HARNESS_HPP
