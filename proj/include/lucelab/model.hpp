#ifndef LUCELAB_MODEL_HPP
#define LUCELAB_MODEL_HPP

#include "lucelab/core.hpp"
#include "lucelab/rng.hpp"

namespace lucelab {

// Uniform posterior surface the policy and harness see; the experiment
// swaps the inference engine behind it and nothing else.
class PreferenceModel {
  public:
    virtual ~PreferenceModel() = default;

    virtual void observe(const Presentation& c, OptionId k) = 0;

    // Posterior draw for Thompson sampling.
    virtual PreferenceVector draw(Rng& rng) = 0;

    // Posterior mean for the greedy mechanism. Monte Carlo models may
    // consume rng; the analytic baseline ignores it.
    virtual PreferenceVector point_estimate(Rng& rng) = 0;

    // Final reported estimate (long chain or analytic mean).
    virtual PreferenceVector final_estimate(Rng& rng) = 0;

    virtual int option_count() const = 0;
};

}  // namespace lucelab

#endif  // LUCELAB_MODEL_HPP
