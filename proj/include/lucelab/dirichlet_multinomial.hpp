#ifndef LUCELAB_DIRICHLET_MULTINOMIAL_HPP
#define LUCELAB_DIRICHLET_MULTINOMIAL_HPP

#include <cstdint>
#include <vector>

#include "lucelab/core.hpp"
#include "lucelab/rng.hpp"

namespace lucelab {

// Presentation-ignoring baseline: conjugate Dirichlet posterior updated
// with raw choice counts. The observe signature accepts the presentation
// so the harness can swap models behind one interface, but only the
// choice is recorded.
class DirichletPosterior {
  public:
    explicit DirichletPosterior(std::vector<double> alpha);

    void observe(const Presentation& c, OptionId k);

    // Component k: (alpha_k + c_k) / (sum alpha + sum c).
    PreferenceVector posterior_mean() const;

    // Exact Dirichlet(alpha + c) draw via normalized gamma variates.
    PreferenceVector sample(Rng& rng) const;

    int option_count() const { return static_cast<int>(alpha_.size()); }
    const std::vector<double>& alpha() const { return alpha_; }
    const std::vector<std::int64_t>& choice_counts() const { return counts_; }

  private:
    std::vector<double> alpha_;
    std::vector<std::int64_t> counts_;
};

}  // namespace lucelab

#endif  // LUCELAB_DIRICHLET_MULTINOMIAL_HPP
