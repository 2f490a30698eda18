#ifndef LUCELAB_POLICY_HPP
#define LUCELAB_POLICY_HPP

#include <set>

#include "lucelab/core.hpp"
#include "lucelab/model.hpp"
#include "lucelab/rng.hpp"

namespace lucelab {

enum class PolicyKind { thompson, greedy };

// Scenario constraints on a single presentation: `forced` options must
// appear, candidates outside `pool` may not.
struct PresentationConstraint {
    std::set<OptionId> forced;
    std::set<OptionId> pool;  // empty means all of [K]

    static PresentationConstraint unconstrained() { return {}; }
    bool is_unconstrained() const { return forced.empty() && pool.empty(); }
};

// Top-L by theta restricted to the constraint; forced options occupy
// their slots first. Exact ties are broken uniformly at random (index
// order would systematically privilege low indices).
Presentation rank_top_l(const PreferenceVector& theta, int L,
                        const PresentationConstraint& constraint, Rng& rng);

// Thompson: rank a posterior draw. Greedy: rank the posterior mean.
Presentation select_presentation(PreferenceModel& model, PolicyKind kind, int L,
                                 const PresentationConstraint& constraint, Rng& rng);

}  // namespace lucelab

#endif  // LUCELAB_POLICY_HPP
