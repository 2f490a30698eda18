#include "lucelab/policy.hpp"

#include <algorithm>
#include <vector>

#include "lucelab/errors.hpp"

namespace lucelab {

namespace {

std::set<OptionId> effective_pool(const PresentationConstraint& constraint, int K) {
    if (!constraint.pool.empty()) return constraint.pool;
    std::set<OptionId> all;
    for (OptionId k = 0; k < K; ++k) all.insert(k);
    return all;
}

}  // namespace

Presentation rank_top_l(const PreferenceVector& theta, int L,
                        const PresentationConstraint& constraint, Rng& rng) {
    const int K = static_cast<int>(theta.size());
    const std::set<OptionId> pool = effective_pool(constraint, K);

    if (L < 1 || L > static_cast<int>(pool.size())) {
        throw InfeasibleConstraint("L=" + std::to_string(L) + " exceeds pool size " +
                                   std::to_string(pool.size()));
    }
    if (static_cast<int>(constraint.forced.size()) > L) {
        throw InfeasibleConstraint("more forced options than presentation slots");
    }
    for (OptionId f : constraint.forced) {
        if (!pool.contains(f)) throw InfeasibleConstraint("forced option outside pool");
    }
    for (OptionId p : pool) {
        if (p < 0 || p >= K) throw InfeasibleConstraint("pool option outside [K]");
    }

    struct Candidate {
        OptionId id;
        double weight;
        double tie_key;
    };
    std::vector<Candidate> candidates;
    for (OptionId p : pool) {
        if (!constraint.forced.contains(p)) {
            candidates.push_back({p, theta[static_cast<std::size_t>(p)], rng.uniform()});
        }
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.weight != b.weight) return a.weight > b.weight;
        return a.tie_key < b.tie_key;
    });

    std::vector<OptionId> members(constraint.forced.begin(), constraint.forced.end());
    const int free_slots = L - static_cast<int>(constraint.forced.size());
    for (int i = 0; i < free_slots; ++i) members.push_back(candidates[static_cast<std::size_t>(i)].id);
    return canonical_presentation(std::move(members), K);
}

Presentation select_presentation(PreferenceModel& model, PolicyKind kind, int L,
                                 const PresentationConstraint& constraint, Rng& rng) {
    const PreferenceVector theta =
        kind == PolicyKind::thompson ? model.draw(rng) : model.point_estimate(rng);
    return rank_top_l(theta, L, constraint, rng);
}

}  // namespace lucelab
