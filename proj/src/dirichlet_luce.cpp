#include "lucelab/dirichlet_luce.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lucelab/errors.hpp"

namespace lucelab {

namespace {
constexpr double kLambdaMin = 1e-300;
constexpr double kLambdaMax = 1e300;
constexpr double kClampRateLimit = 1e-3;
}  // namespace

DirichletLucePosterior::DirichletLucePosterior(std::vector<double> alpha) : alpha_(std::move(alpha)) {
    if (alpha_.size() < 2) throw InvalidPrior("need at least two options");
    for (double a : alpha_) {
        if (!(a > 0.0)) throw InvalidPrior("all prior pseudo-counts must be positive");
    }
    choice_counts_.assign(alpha_.size(), 0);
}

void DirichletLucePosterior::observe(const Presentation& c, OptionId k) {
    if (!c.contains(k)) throw OptionNotPresented(k);
    ++choice_counts_[static_cast<std::size_t>(k)];
    ++exposures_[c];
    ++interactions_;
}

double DirichletLucePosterior::log_unnormalized_density(const PreferenceVector& theta) const {
    double log_p = 0.0;
    for (std::size_t k = 0; k < alpha_.size(); ++k) {
        const double exponent = alpha_[k] + static_cast<double>(choice_counts_[k]) - 1.0;
        const double th = theta[k];
        if (th <= 0.0) {
            if (exponent < 0.0) throw BoundaryDensity();
            if (exponent > 0.0) return -std::numeric_limits<double>::infinity();
            continue;  // exponent == 0, factor is 1
        }
        log_p += exponent * std::log(th);
    }
    for (const auto& [c, n] : exposures_) {
        double mass = 0.0;
        for (OptionId j : c) mass += theta[static_cast<std::size_t>(j)];
        log_p -= static_cast<double>(n) * std::log(mass);
    }
    return log_p;
}

GibbsState init_gibbs_state(const DirichletLucePosterior& post, Rng& rng) {
    GibbsState state;
    const auto& alpha = post.alpha();
    const auto& counts = post.choice_counts();
    state.lambda.resize(alpha.size());
    for (std::size_t k = 0; k < alpha.size(); ++k) {
        state.lambda[k] = rng.gamma(alpha[k] + static_cast<double>(counts[k]), 1.0);
    }
    return state;
}

void gibbs_sweep(GibbsState& state, const DirichletLucePosterior& post, Rng& rng) {
    const auto& alpha = post.alpha();
    const auto& counts = post.choice_counts();
    const std::size_t K = alpha.size();

    // (a) refresh one auxiliary variable per distinct presentation, and
    // accumulate the per-option rate increments on the fly.
    std::vector<double> z_rate(K, 0.0);
    state.z.clear();
    for (const auto& [c, n] : post.exposure_counts()) {
        double mass = 0.0;
        for (OptionId j : c) mass += state.lambda[static_cast<std::size_t>(j)];
        const double z = rng.gamma(static_cast<double>(n), mass);
        state.z.emplace_hint(state.z.end(), c, z);
        for (OptionId j : c) z_rate[static_cast<std::size_t>(j)] += z;
    }

    // (b) option weights given the auxiliaries.
    for (std::size_t k = 0; k < K; ++k) {
        double l = rng.gamma(alpha[k] + static_cast<double>(counts[k]), 1.0 + z_rate[k]);
        if (l < kLambdaMin || l > kLambdaMax || !std::isfinite(l)) {
            l = std::min(std::max(l, kLambdaMin), kLambdaMax);
            ++state.clamp_events;
        }
        state.lambda[k] = l;
    }
    ++state.sweeps;

    if (state.clamp_events > 0 &&
        static_cast<double>(state.clamp_events) > kClampRateLimit * static_cast<double>(state.sweeps)) {
        throw SamplerDivergence("lambda clamp fired on " + std::to_string(state.clamp_events) +
                                " of " + std::to_string(state.sweeps) + " sweeps");
    }
}

PreferenceVector draw_posterior_sample(const DirichletLucePosterior& post, GibbsState& state,
                                       int sweeps, Rng& rng) {
    for (int s = 0; s < sweeps; ++s) gibbs_sweep(state, post, rng);
    double total = 0.0;
    for (double l : state.lambda) total += l;
    std::vector<double> theta(state.lambda.size());
    for (std::size_t k = 0; k < theta.size(); ++k) theta[k] = state.lambda[k] / total;
    return PreferenceVector(std::move(theta));
}

PreferenceVector draw_posterior_sample(const DirichletLucePosterior& post, int sweeps, Rng& rng) {
    GibbsState state = init_gibbs_state(post, rng);
    return draw_posterior_sample(post, state, sweeps, rng);
}

PreferenceVector posterior_mean_mc(const DirichletLucePosterior& post, int samples, int burn_in,
                                   int thin, Rng& rng) {
    GibbsState state = init_gibbs_state(post, rng);
    for (int s = 0; s < burn_in; ++s) gibbs_sweep(state, post, rng);
    std::vector<double> acc(post.alpha().size(), 0.0);
    for (int i = 0; i < samples; ++i) {
        const PreferenceVector theta = draw_posterior_sample(post, state, thin, rng);
        for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += theta[k];
    }
    for (double& a : acc) a /= static_cast<double>(samples);
    return PreferenceVector(std::move(acc));
}

}  // namespace lucelab
