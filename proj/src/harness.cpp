#include "lucelab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>

#include "lucelab/dirichlet_luce.hpp"
#include "lucelab/dirichlet_multinomial.hpp"
#include "lucelab/errors.hpp"

namespace lucelab {

std::string to_string(Scenario s) {
    switch (s) {
        case Scenario::free_play: return "free";
        case Scenario::promotion: return "promotion";
        case Scenario::censorship: return "censorship";
        case Scenario::unfair_comparison: return "unfair";
    }
    return "?";
}

std::string to_string(ModelKind m) {
    return m == ModelKind::dirichlet_luce ? "dirichlet-luce" : "dirichlet-multinomial";
}

std::string to_string(PolicyKind p) {
    return p == PolicyKind::thompson ? "thompson" : "greedy";
}

Scenario scenario_from_string(const std::string& s) {
    if (s == "free") return Scenario::free_play;
    if (s == "promotion") return Scenario::promotion;
    if (s == "censorship") return Scenario::censorship;
    if (s == "unfair" || s == "unfair_comparison") return Scenario::unfair_comparison;
    throw ConfigError("unknown scenario: " + s);
}

ModelKind model_from_string(const std::string& s) {
    if (s == "dirichlet-luce" || s == "dirichlet_luce") return ModelKind::dirichlet_luce;
    if (s == "dirichlet-multinomial" || s == "dirichlet_multinomial")
        return ModelKind::dirichlet_multinomial;
    throw ConfigError("unknown model: " + s);
}

PolicyKind policy_from_string(const std::string& s) {
    if (s == "thompson") return PolicyKind::thompson;
    if (s == "greedy") return PolicyKind::greedy;
    throw ConfigError("unknown policy: " + s);
}

std::vector<double> ScenarioConfig::effective_alpha() const {
    if (!alpha.empty()) return alpha;
    return std::vector<double>(static_cast<std::size_t>(K), 1.0);
}

std::vector<OptionId> ScenarioConfig::effective_init_pool() const {
    if (!init_pool.empty()) return init_pool;
    if (scenario == Scenario::censorship) return {3, 4};
    if (scenario == Scenario::unfair_comparison) return {0, 1};
    return {};
}

void ScenarioConfig::validate() const {
    if (K < 2) throw ConfigError("K must be >= 2");
    if (L < 1 || L > K) throw ConfigError("L must be in [1, K]");
    if (T < 0) throw ConfigError("T must be non-negative");
    if (runs < 1) throw ConfigError("runs must be >= 1");
    if (static_cast<int>(theta_true.size()) != K) {
        throw ConfigError("theta_true must have K components");
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < theta_true.size(); ++k) {
        if (!(theta_true[k] > 0.0)) throw ConfigError("theta_true components must be positive");
        if (k > 0 && !(theta_true[k] < theta_true[k - 1])) {
            throw ConfigError("theta_true must be strictly decreasing");
        }
        sum += theta_true[k];
    }
    if (std::abs(sum - 1.0) > 1e-9) throw ConfigError("theta_true must sum to 1");
    if (!alpha.empty()) {
        if (static_cast<int>(alpha.size()) != K) throw ConfigError("alpha must have K components");
        for (double a : alpha) {
            if (!(a > 0.0)) throw ConfigError("alpha components must be positive");
        }
    }
    if (scenario == Scenario::promotion) {
        if (promoted_option < 0 || promoted_option >= K) {
            throw ConfigError("promoted option outside [0, K)");
        }
    }
    if (scenario == Scenario::censorship || scenario == Scenario::unfair_comparison) {
        if (init_phase_length < 0) throw ConfigError("init phase length must be non-negative");
        const auto pool = effective_init_pool();
        std::set<OptionId> uniq(pool.begin(), pool.end());
        if (uniq.size() != pool.size()) throw ConfigError("init pool has duplicates");
        for (OptionId p : pool) {
            if (p < 0 || p >= K) throw ConfigError("init pool option outside [0, K)");
        }
        if (static_cast<int>(pool.size()) < L) throw ConfigError("init pool smaller than L");
        if (scenario == Scenario::unfair_comparison && static_cast<int>(pool.size()) != L) {
            throw ConfigError("unfair-comparison pool must have exactly L options");
        }
    }
    if (budget.thompson_sweeps < 1 || budget.estimate_samples < 1 || budget.thin < 1 ||
        budget.estimate_burn_in < 0) {
        throw ConfigError("invalid sampler budget");
    }
}

namespace {

class DirichletLuceModel final : public PreferenceModel {
  public:
    DirichletLuceModel(std::vector<double> alpha, SamplerBudget budget)
        : post_(std::move(alpha)), budget_(budget) {}

    void observe(const Presentation& c, OptionId k) override { post_.observe(c, k); }

    PreferenceVector draw(Rng& rng) override {
        ensure_chain(rng);
        return draw_posterior_sample(post_, *chain_, budget_.thompson_sweeps, rng);
    }

    // Short warm-chain average; stands in for the posterior mean in the
    // greedy mechanism without a fresh long chain per interaction.
    PreferenceVector point_estimate(Rng& rng) override {
        ensure_chain(rng);
        std::vector<double> acc(post_.alpha().size(), 0.0);
        for (int s = 0; s < budget_.thompson_sweeps; ++s) {
            const PreferenceVector theta = draw_posterior_sample(post_, *chain_, 1, rng);
            for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += theta[k];
        }
        for (double& a : acc) a /= static_cast<double>(budget_.thompson_sweeps);
        return PreferenceVector(std::move(acc));
    }

    PreferenceVector final_estimate(Rng& rng) override {
        if (post_.interaction_count() == 0) return prior_mean();
        return posterior_mean_mc(post_, budget_.estimate_samples, budget_.estimate_burn_in,
                                 budget_.thin, rng);
    }

    int option_count() const override { return post_.option_count(); }

  private:
    void ensure_chain(Rng& rng) {
        if (!chain_) chain_ = init_gibbs_state(post_, rng);
    }

    PreferenceVector prior_mean() const {
        const auto& a = post_.alpha();
        const double total = std::accumulate(a.begin(), a.end(), 0.0);
        std::vector<double> mean(a.size());
        for (std::size_t k = 0; k < a.size(); ++k) mean[k] = a[k] / total;
        return PreferenceVector(std::move(mean));
    }

    DirichletLucePosterior post_;
    std::optional<GibbsState> chain_;
    SamplerBudget budget_;
};

class DirichletMultinomialModel final : public PreferenceModel {
  public:
    explicit DirichletMultinomialModel(std::vector<double> alpha) : post_(std::move(alpha)) {}

    void observe(const Presentation& c, OptionId k) override { post_.observe(c, k); }
    PreferenceVector draw(Rng& rng) override { return post_.sample(rng); }
    PreferenceVector point_estimate(Rng&) override { return post_.posterior_mean(); }
    PreferenceVector final_estimate(Rng&) override { return post_.posterior_mean(); }
    int option_count() const override { return post_.option_count(); }

  private:
    DirichletPosterior post_;
};

std::vector<OptionId> true_top_l(const PreferenceVector& theta_true, int L) {
    std::vector<OptionId> order(theta_true.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](OptionId a, OptionId b) {
        return theta_true[static_cast<std::size_t>(a)] > theta_true[static_cast<std::size_t>(b)];
    });
    order.resize(static_cast<std::size_t>(L));
    std::sort(order.begin(), order.end());
    return order;
}

}  // namespace

std::unique_ptr<PreferenceModel> make_model(const ScenarioConfig& config) {
    if (config.model == ModelKind::dirichlet_luce) {
        return std::make_unique<DirichletLuceModel>(config.effective_alpha(), config.budget);
    }
    return std::make_unique<DirichletMultinomialModel>(config.effective_alpha());
}

PresentationConstraint constraint_schedule(const ScenarioConfig& config, int t) {
    PresentationConstraint constraint;
    switch (config.scenario) {
        case Scenario::free_play:
            break;
        case Scenario::promotion:
            constraint.forced.insert(config.promoted_option);
            break;
        case Scenario::censorship:
        case Scenario::unfair_comparison:
            if (t <= config.init_phase_length) {
                const auto pool = config.effective_init_pool();
                constraint.pool.insert(pool.begin(), pool.end());
            }
            break;
    }
    return constraint;
}

EpisodeTrajectory run_episode(const ScenarioConfig& config, int run_index) {
    config.validate();

    Rng policy_rng = Rng::for_stream(config.master_seed, static_cast<std::uint64_t>(run_index), 0);
    Rng user_rng = Rng::for_stream(config.master_seed, static_cast<std::uint64_t>(run_index), 1);
    Rng estimator_rng = Rng::for_stream(config.master_seed, static_cast<std::uint64_t>(run_index), 2);

    const PreferenceVector theta_true(config.theta_true);
    auto model = make_model(config);

    const bool has_phase =
        config.scenario == Scenario::censorship || config.scenario == Scenario::unfair_comparison;

    std::vector<InteractionRecord> records;
    records.reserve(static_cast<std::size_t>(config.T));
    std::vector<std::int64_t> presented(static_cast<std::size_t>(config.K), 0);
    std::vector<std::int64_t> chosen(static_cast<std::size_t>(config.K), 0);
    std::optional<PreferenceVector> post_phase;

    for (int t = 1; t <= config.T; ++t) {
        const PresentationConstraint constraint = constraint_schedule(config, t);
        const Presentation c =
            select_presentation(*model, config.policy, config.L, constraint, policy_rng);
        const OptionId k = sample_user_choice(theta_true, c, user_rng);
        model->observe(c, k);
        for (OptionId j : c) ++presented[static_cast<std::size_t>(j)];
        ++chosen[static_cast<std::size_t>(k)];
        records.push_back({t, c, k});
        if (has_phase && t == config.init_phase_length) {
            post_phase = model->final_estimate(estimator_rng);
        }
    }

    PreferenceVector final_estimate = model->final_estimate(estimator_rng);
    return EpisodeTrajectory{run_index, std::move(records), std::move(final_estimate),
                             std::move(post_phase), std::move(presented), std::move(chosen)};
}

int late_window_length(int t_total) {
    return std::min(t_total, std::max(1000, t_total / 10));
}

Metrics compute_metrics(const EpisodeTrajectory& trajectory, const PreferenceVector& theta_true,
                        int L) {
    const std::size_t K = theta_true.size();
    Metrics m;
    m.abs_error.resize(K);
    for (std::size_t k = 0; k < K; ++k) {
        m.abs_error[k] = std::abs(trajectory.final_estimate[k] - theta_true[k]);
    }

    const auto t_total = static_cast<int>(trajectory.records.size());
    m.presentation_frequency.assign(K, 0.0);
    if (t_total > 0) {
        for (std::size_t k = 0; k < K; ++k) {
            m.presentation_frequency[k] =
                static_cast<double>(trajectory.presented_counts[k]) / static_cast<double>(t_total);
        }
        const std::vector<OptionId> best = true_top_l(theta_true, L);
        const int window = late_window_length(t_total);
        int hits = 0;
        for (int t = t_total - window; t < t_total; ++t) {
            if (trajectory.records[static_cast<std::size_t>(t)].presented.members() == best) ++hits;
        }
        m.late_window_top_l_rate = static_cast<double>(hits) / static_cast<double>(window);
    }
    return m;
}

ExperimentSummary run_experiment(const ScenarioConfig& config, int workers, bool keep_trajectories) {
    config.validate();
    if (workers <= 0) {
        workers = static_cast<int>(std::thread::hardware_concurrency());
        if (workers < 1) workers = 1;
    }
    workers = std::min(workers, config.runs);

    std::vector<std::optional<EpisodeTrajectory>> episodes(static_cast<std::size_t>(config.runs));
    std::atomic<int> next_run{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (;;) {
            const int run = next_run.fetch_add(1);
            if (run >= config.runs) return;
            try {
                episodes[static_cast<std::size_t>(run)] = run_episode(config, run);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) threads.emplace_back(worker);
        for (auto& th : threads) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    const std::size_t K = static_cast<std::size_t>(config.K);
    const PreferenceVector theta_true(config.theta_true);
    ExperimentSummary summary;
    summary.mean_estimate.assign(K, 0.0);
    summary.std_estimate.assign(K, 0.0);
    summary.mean_abs_error.assign(K, 0.0);

    for (const auto& ep : episodes) {
        const Metrics m = compute_metrics(*ep, theta_true, config.L);
        std::vector<double> est(ep->final_estimate.begin(), ep->final_estimate.end());
        for (std::size_t k = 0; k < K; ++k) {
            summary.mean_estimate[k] += est[k];
            summary.mean_abs_error[k] += m.abs_error[k];
        }
        summary.late_window_top_l_rate += m.late_window_top_l_rate;
        summary.run_estimates.push_back(std::move(est));
    }
    const double n = static_cast<double>(config.runs);
    for (std::size_t k = 0; k < K; ++k) {
        summary.mean_estimate[k] /= n;
        summary.mean_abs_error[k] /= n;
    }
    summary.late_window_top_l_rate /= n;
    for (std::size_t k = 0; k < K; ++k) {
        double var = 0.0;
        for (const auto& est : summary.run_estimates) {
            const double d = est[k] - summary.mean_estimate[k];
            var += d * d;
        }
        summary.std_estimate[k] = std::sqrt(var / n);  // population std
    }
    if (keep_trajectories) {
        for (auto& ep : episodes) summary.trajectories.push_back(std::move(*ep));
    }
    return summary;
}

}  // namespace lucelab
