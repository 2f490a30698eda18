#ifndef LUCELAB_DIRICHLET_LUCE_HPP
#define LUCELAB_DIRICHLET_LUCE_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "lucelab/core.hpp"
#include "lucelab/rng.hpp"

namespace lucelab {

// Presentation-conditioned posterior over theta. The trajectory is
// collapsed to sufficient statistics: per-option choice counts c_k and
// per-distinct-presentation exposure counts n_C. Unnormalized density on
// the simplex:
//
//   prod_k theta_k^(alpha_k + c_k - 1) * prod_C (sum_{j in C} theta_j)^(-n_C)
class DirichletLucePosterior {
  public:
    explicit DirichletLucePosterior(std::vector<double> alpha);

    void observe(const Presentation& c, OptionId k);

    // Requires theta strictly interior when any exponent alpha_k+c_k-1 < 0.
    double log_unnormalized_density(const PreferenceVector& theta) const;

    int option_count() const { return static_cast<int>(alpha_.size()); }
    const std::vector<double>& alpha() const { return alpha_; }
    const std::vector<std::int64_t>& choice_counts() const { return choice_counts_; }
    const std::map<Presentation, std::int64_t>& exposure_counts() const { return exposures_; }
    std::int64_t interaction_count() const { return interactions_; }

  private:
    std::vector<double> alpha_;
    std::vector<std::int64_t> choice_counts_;
    std::map<Presentation, std::int64_t> exposures_;
    std::int64_t interactions_ = 0;
};

// Chain state for the gamma-augmented Gibbs sampler. lambda are
// unnormalized option weights (theta = lambda / sum lambda); z holds one
// auxiliary variable per distinct presentation, refreshed each sweep.
struct GibbsState {
    std::vector<double> lambda;
    std::map<Presentation, double> z;
    std::int64_t sweeps = 0;
    std::int64_t clamp_events = 0;
};

// Fresh state with lambda_k ~ Gamma(alpha_k + c_k, 1); z filled on the
// first sweep.
GibbsState init_gibbs_state(const DirichletLucePosterior& post, Rng& rng);

// One systematic scan:
//   z_C      ~ Gamma(n_C, sum_{j in C} lambda_j)       for each distinct C
//   lambda_k ~ Gamma(alpha_k + c_k, 1 + sum_{C: k in C} z_C)
// The stationary law of lambda / sum lambda is the posterior above.
// Throws SamplerDivergence if the lambda clamp to [1e-300, 1e300] fires
// on more than 0.1% of sweeps.
void gibbs_sweep(GibbsState& state, const DirichletLucePosterior& post, Rng& rng);

// Runs `sweeps` Gibbs sweeps from `state` and returns the normalized
// weights; `state` is advanced in place for warm reuse.
PreferenceVector draw_posterior_sample(const DirichletLucePosterior& post, GibbsState& state,
                                       int sweeps, Rng& rng);

// Fresh-chain convenience overload.
PreferenceVector draw_posterior_sample(const DirichletLucePosterior& post, int sweeps, Rng& rng);

// Chain average of theta: `burn_in` discarded sweeps, then `samples`
// states taken every `thin` sweeps.
PreferenceVector posterior_mean_mc(const DirichletLucePosterior& post, int samples, int burn_in,
                                   int thin, Rng& rng);

}  // namespace lucelab

#endif  // LUCELAB_DIRICHLET_LUCE_HPP
