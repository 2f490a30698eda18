// Acceptance suite: one pass/fail line per criterion. Exit code is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "lucelab/cli.hpp"
#include "lucelab/dirichlet_luce.hpp"
#include "lucelab/dirichlet_multinomial.hpp"
#include "lucelab/harness.hpp"
#include "lucelab/oracle.hpp"

using namespace lucelab;

namespace {

struct Check {
    bool ok;
    std::string detail;
};

void require(std::ostringstream& out, bool cond, const std::string& what, bool& ok) {
    if (!cond) {
        ok = false;
        out << " [" << what << " FAILED]";
    }
}

ScenarioConfig default_config() {
    return ScenarioConfig{};  // K=5, L=2, T=10000, runs=10, defaults throughout
}

// --- criterion 1: Gibbs vs grid oracle at K=3 ------------------------------

Check criterion_oracle_equivalence() {
    bool ok = true;
    std::ostringstream out;

    DirichletLucePosterior single({1, 1, 1});
    single.observe(canonical_presentation({0, 1}, 3), 0);
    Rng rng(1001);
    const PreferenceVector mc = posterior_mean_mc(single, 4000, 1000, 10, rng);
    const PreferenceVector grid = grid_posterior_mean(single, GridSpec{400});
    const std::vector<double> known = {4.0 / 9, 2.0 / 9, 1.0 / 3};
    for (std::size_t k = 0; k < 3; ++k) {
        require(out, std::abs(mc[k] - grid[k]) <= 0.02, "mc-vs-grid", ok);
        require(out, std::abs(mc[k] - known[k]) <= 0.005, "mc-vs-(4/9,2/9,1/3)", ok);
    }

    // 10 random observations over random pairs
    DirichletLucePosterior random_ds({1, 1, 1});
    Rng gen(1002);
    const PreferenceVector theta({0.5, 0.3, 0.2});
    for (int i = 0; i < 10; ++i) {
        const OptionId a = static_cast<OptionId>(gen.next_u64() % 3);
        OptionId b = static_cast<OptionId>(gen.next_u64() % 3);
        if (b == a) b = (b + 1) % 3;
        const Presentation c = canonical_presentation({a, b}, 3);
        random_ds.observe(c, sample_user_choice(theta, c, gen));
    }
    const PreferenceVector mc2 = posterior_mean_mc(random_ds, 4000, 1000, 5, rng);
    const PreferenceVector grid2 = grid_posterior_mean(random_ds, GridSpec{400});
    for (std::size_t k = 0; k < 3; ++k) {
        require(out, std::abs(mc2[k] - grid2[k]) <= 0.02, "random-dataset mc-vs-grid", ok);
    }
    out << " single=(" << mc[0] << "," << mc[1] << "," << mc[2] << ")";
    return {ok, out.str()};
}

// --- criterion 2: reduction to Dirichlet-Multinomial ------------------------

Check criterion_reduction() {
    bool ok = true;
    std::ostringstream out;
    const int K = 5;
    DirichletLucePosterior dl(std::vector<double>(K, 1.0));
    DirichletPosterior dm(std::vector<double>(K, 1.0));
    const Presentation full = canonical_presentation({0, 1, 2, 3, 4}, K);
    const PreferenceVector theta({0.40, 0.25, 0.16, 0.11, 0.08});
    Rng gen(2001);
    for (int i = 0; i < 200; ++i) {
        const OptionId k = sample_user_choice(theta, full, gen);
        dl.observe(full, k);
        dm.observe(full, k);
    }
    Rng rng(2002);
    const PreferenceVector mc = posterior_mean_mc(dl, 8000, 1000, 2, rng);
    const PreferenceVector analytic = dm.posterior_mean();
    double worst = 0.0;
    for (std::size_t k = 0; k < static_cast<std::size_t>(K); ++k) {
        worst = std::max(worst, std::abs(mc[k] - analytic[k]));
    }
    require(out, worst <= 0.01, "reduction identity", ok);
    out << " max|DL-DM|=" << worst;
    return {ok, out.str()};
}

// --- criterion 3: unexplored independence ------------------------------------

Check criterion_unexplored_independence() {
    bool ok = true;
    std::ostringstream out;
    const int n_obs = 20;
    DirichletLucePosterior dl({1, 1, 1});
    DirichletPosterior dm({1, 1, 1});
    const Presentation c01 = canonical_presentation({0, 1}, 3);
    for (int i = 0; i < n_obs; ++i) {
        const OptionId k = i % 3 == 0 ? 1 : 0;
        dl.observe(c01, k);
        dm.observe(c01, k);
    }
    Rng rng(3001);
    const PreferenceVector dl_mean = posterior_mean_mc(dl, 8000, 1000, 2, rng);
    const PreferenceVector dm_mean = dm.posterior_mean();
    require(out, std::abs(dl_mean[2] - 1.0 / 3) <= 0.01, "DL keeps prior mean", ok);
    require(out, std::abs(dm_mean[2] - 1.0 / (3.0 + n_obs)) <= 1e-12, "DM analytic mean", ok);
    require(out, dm_mean[2] < 1.0 / 3, "DM negative bias", ok);
    out << " DL_2=" << dl_mean[2] << " DM_2=" << dm_mean[2];
    return {ok, out.str()};
}

// --- criterion 4: promotion ---------------------------------------------------

Check criterion_promotion() {
    bool ok = true;
    std::ostringstream out;
    ScenarioConfig config = default_config();
    config.scenario = Scenario::promotion;
    config.master_seed = 4001;

    const ExperimentSummary dl = run_experiment(config, 4);
    config.model = ModelKind::dirichlet_multinomial;
    const ExperimentSummary dm = run_experiment(config, 4);

    const double truth = 0.16;
    require(out, std::abs(dl.mean_estimate[2] - truth) <= 0.05, "DL unbiased on promoted", ok);
    require(out, dm.mean_estimate[2] - truth >= 0.05, "DM overestimates promoted", ok);
    out << " DL_2=" << dl.mean_estimate[2] << " DM_2=" << dm.mean_estimate[2];
    return {ok, out.str()};
}

// --- criterion 5: censorship --------------------------------------------------

Check criterion_censorship() {
    bool ok = true;
    std::ostringstream out;
    ScenarioConfig config = default_config();
    config.scenario = Scenario::censorship;
    config.master_seed = 5001;

    const ExperimentSummary dl = run_experiment(config, 4);
    config.model = ModelKind::dirichlet_multinomial;
    const ExperimentSummary dm = run_experiment(config, 4);

    require(out, dl.late_window_top_l_rate >= 0.8, "DL presents true top-2 late", ok);
    const double dl_low = std::min(dl.mean_estimate[0], dl.mean_estimate[1]);
    const double dl_high = std::max(dl.mean_estimate[3], dl.mean_estimate[4]);
    require(out, dl_low > dl_high, "DL ranks 0,1 above 3,4", ok);
    const double dm_excess = dm.mean_estimate[3] + dm.mean_estimate[4] - (0.11 + 0.08);
    require(out, dm_excess >= 0.1, "DM overestimates censored-phase pair", ok);
    out << " DL_rate=" << dl.late_window_top_l_rate << " DM_excess=" << dm_excess;
    return {ok, out.str()};
}

// --- criterion 6: unfair comparison -------------------------------------------

Check criterion_unfair_comparison() {
    bool ok = true;
    std::ostringstream out;
    ScenarioConfig config = default_config();
    config.scenario = Scenario::unfair_comparison;
    config.master_seed = 6001;

    int good_runs = 0;
    for (int run = 0; run < config.runs; ++run) {
        const EpisodeTrajectory traj = run_episode(config, run);
        const bool initial_bias = traj.post_phase_estimate.has_value() &&
                                  (*traj.post_phase_estimate)[1] < config.theta_true[1];
        const bool recovered = traj.final_estimate[1] > traj.final_estimate[2];
        if (initial_bias && recovered) ++good_runs;
    }
    require(out, good_runs >= 9, "initial bias then recovery in >=9/10 runs", ok);
    out << " good_runs=" << good_runs << "/10";
    return {ok, out.str()};
}

// --- criterion 7: invariant suites --------------------------------------------

Check criterion_invariants() {
    bool ok = true;
    std::ostringstream out;
    Rng rng(7001);

    // IIA ratio and normalization over randomized cases
    for (int rep = 0; rep < 10000 && ok; ++rep) {
        const int K = 3 + static_cast<int>(rng.next_u64() % 4);
        std::vector<double> w(static_cast<std::size_t>(K));
        double total = 0.0;
        for (double& x : w) {
            x = rng.gamma(1.0, 1.0) + 1e-9;
            total += x;
        }
        for (double& x : w) x /= total;
        const PreferenceVector theta(std::move(w));

        std::vector<OptionId> m1 = {0, 1}, m2 = {0, 1};
        for (OptionId k = 2; k < K; ++k) {
            if (rng.uniform() < 0.5) m1.push_back(k);
            if (rng.uniform() < 0.5) m2.push_back(k);
        }
        const Presentation c1 = canonical_presentation(std::move(m1), K);
        const Presentation c2 = canonical_presentation(std::move(m2), K);
        const double r1 = luce_choice_probability(theta, c1, 0) / luce_choice_probability(theta, c1, 1);
        const double r2 = luce_choice_probability(theta, c2, 0) / luce_choice_probability(theta, c2, 1);
        require(out, std::abs(r1 - r2) <= 1e-12 * std::max(r1, r2), "IIA ratio", ok);

        double norm = 0.0;
        for (OptionId k : c1) norm += luce_choice_probability(theta, c1, k);
        require(out, std::abs(norm - 1.0) <= 1e-12, "normalization", ok);
    }

    // Thompson constraint satisfaction over randomized cases
    ScenarioConfig config = default_config();
    config.T = 0;
    auto model = make_model(config);
    for (int rep = 0; rep < 10000 && ok; ++rep) {
        PresentationConstraint constraint;
        for (OptionId k = 0; k < 5; ++k) {
            if (rng.uniform() < 0.75) constraint.pool.insert(k);
        }
        while (static_cast<int>(constraint.pool.size()) < 2) {
            constraint.pool.insert(static_cast<OptionId>(rng.next_u64() % 5));
        }
        if (rng.uniform() < 0.5) {
            constraint.forced.insert(*constraint.pool.begin());
        }
        const Presentation p = select_presentation(*model, PolicyKind::thompson, 2, constraint, rng);
        require(out, p.size() == 2, "|P| = L", ok);
        for (OptionId k : constraint.forced) require(out, p.contains(k), "forced in P", ok);
        for (OptionId k : p) require(out, constraint.pool.contains(k), "P in pool", ok);
    }

    // sufficient-statistic identity after a simulated episode
    ScenarioConfig episode = default_config();
    episode.T = 500;
    episode.budget.estimate_samples = 200;
    episode.budget.estimate_burn_in = 100;
    {
        DirichletLucePosterior post(std::vector<double>(5, 1.0));
        const EpisodeTrajectory traj = run_episode(episode, 0);
        for (const auto& rec : traj.records) post.observe(rec.presented, rec.chosen);
        std::int64_t c_total = 0, n_total = 0;
        for (std::int64_t c : post.choice_counts()) c_total += c;
        for (const auto& [c, n] : post.exposure_counts()) n_total += n;
        require(out, c_total == 500 && n_total == 500, "sum c_k = sum n_C = T", ok);
    }

    // bit-exact determinism replay of a full episode
    {
        const EpisodeTrajectory a = run_episode(episode, 3);
        const EpisodeTrajectory b = run_episode(episode, 3);
        bool same = a.records.size() == b.records.size();
        for (std::size_t i = 0; same && i < a.records.size(); ++i) {
            same = a.records[i].presented == b.records[i].presented &&
                   a.records[i].chosen == b.records[i].chosen;
        }
        for (std::size_t k = 0; same && k < 5; ++k) {
            same = a.final_estimate[k] == b.final_estimate[k];
        }
        require(out, same, "bit-exact replay", ok);
    }
    return {ok, out.str()};
}

// --- criterion 8: sampler marginal vs Beta(2,1) -------------------------------

Check criterion_marginal() {
    bool ok = true;
    std::ostringstream out;
    DirichletLucePosterior post({1, 1});
    post.observe(canonical_presentation({0, 1}, 2), 0);

    Rng rng(8001);
    GibbsState state = init_gibbs_state(post, rng);
    for (int s = 0; s < 200; ++s) gibbs_sweep(state, post, rng);

    const int bins = 50, n = 10000;
    std::vector<double> hist(bins, 0.0);
    for (int i = 0; i < n; ++i) {
        const PreferenceVector theta = draw_posterior_sample(post, state, 5, rng);
        int b = static_cast<int>(theta[0] * bins);
        b = std::min(std::max(b, 0), bins - 1);
        hist[static_cast<std::size_t>(b)] += 1.0 / n;
    }
    double tv = 0.0;
    for (int b = 0; b < bins; ++b) {
        const double lo = static_cast<double>(b) / bins;
        const double hi = static_cast<double>(b + 1) / bins;
        tv += std::abs(hist[static_cast<std::size_t>(b)] - (hi * hi - lo * lo));  // Beta(2,1) cdf x^2
    }
    tv *= 0.5;
    require(out, tv <= 0.05, "TV(Gibbs, Beta(2,1)) <= 0.05", ok);
    out << " TV=" << tv;
    return {ok, out.str()};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
        {"1 oracle equivalence (K=3 Gibbs vs grid)", criterion_oracle_equivalence},
        {"2 reduction to Dirichlet-Multinomial on full-set data", criterion_reduction},
        {"3 unexplored independence vs baseline negative bias", criterion_unexplored_independence},
        {"4 promotion: DL unbiased, DM overestimates", criterion_promotion},
        {"5 censorship: DL discovers top-2, DM overestimates", criterion_censorship},
        {"6 unfair comparison: initial bias then recovery", criterion_unfair_comparison},
        {"7 invariant suites", criterion_invariants},
        {"8 sampler marginal vs Beta(2,1)", criterion_marginal},
    };

    int failures = 0;
    for (const auto& [name, fn] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Check result{false, ""};
        try {
            result = fn();
        } catch (const std::exception& e) {
            result = {false, std::string(" [exception: ") + e.what() + "]"};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << (result.ok ? "PASS" : "FAIL") << "  criterion " << name << result.detail
                  << " (" << secs << " s)" << std::endl;
        if (!result.ok) ++failures;
    }
    return failures;
}
