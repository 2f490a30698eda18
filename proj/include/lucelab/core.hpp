#ifndef LUCELAB_CORE_HPP
#define LUCELAB_CORE_HPP

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "lucelab/rng.hpp"

namespace lucelab {

// Options are 0-based internally; human-readable output adds 1.
using OptionId = int;

// Point on the (K-1)-simplex. Validated on construction: non-negative
// components summing to 1 within 1e-9.
class PreferenceVector {
  public:
    explicit PreferenceVector(std::vector<double> weights);

    double operator[](std::size_t k) const { return weights_[k]; }
    std::size_t size() const { return weights_.size(); }
    const std::vector<double>& weights() const { return weights_; }

    auto begin() const { return weights_.begin(); }
    auto end() const { return weights_.end(); }

  private:
    std::vector<double> weights_;
};

// Canonical non-empty subset of [K]: sorted ascending, no duplicates.
class Presentation {
  public:
    const std::vector<OptionId>& members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    bool contains(OptionId k) const;

    auto begin() const { return members_.begin(); }
    auto end() const { return members_.end(); }

    auto operator<=>(const Presentation&) const = default;

    // Members serialized as "i|j|..." in canonical order.
    std::string to_string() const;

  private:
    friend Presentation canonical_presentation(std::vector<OptionId> options, int option_count);
    explicit Presentation(std::vector<OptionId> sorted_members) : members_(std::move(sorted_members)) {}
    std::vector<OptionId> members_;
};

// Sorts and deduplicates; idempotent. Throws EmptyPresentation or
// UnknownOption (id outside [0, option_count)).
Presentation canonical_presentation(std::vector<OptionId> options, int option_count);

struct InteractionRecord {
    int t = 0;  // 1-based interaction index
    Presentation presented;
    OptionId chosen = 0;
};

// Luce choice rule: p(k|C) = theta_k / sum_{j in C} theta_j.
// Throws OptionNotPresented if k not in C, DegeneratePresentation if the
// presented mass is zero.
double luce_choice_probability(const PreferenceVector& theta, const Presentation& c, OptionId k);

// Draws k in C with the Luce probabilities above.
OptionId sample_user_choice(const PreferenceVector& theta, const Presentation& c, Rng& rng);

}  // namespace lucelab

#endif  // LUCELAB_CORE_HPP
