#include "lucelab/dirichlet_multinomial.hpp"

#include "lucelab/errors.hpp"

namespace lucelab {

DirichletPosterior::DirichletPosterior(std::vector<double> alpha) : alpha_(std::move(alpha)) {
    if (alpha_.size() < 2) throw InvalidPrior("need at least two options");
    for (double a : alpha_) {
        if (!(a > 0.0)) throw InvalidPrior("all prior pseudo-counts must be positive");
    }
    counts_.assign(alpha_.size(), 0);
}

void DirichletPosterior::observe(const Presentation& c, OptionId k) {
    if (!c.contains(k)) throw OptionNotPresented(k);
    ++counts_[static_cast<std::size_t>(k)];
}

PreferenceVector DirichletPosterior::posterior_mean() const {
    double total = 0.0;
    for (std::size_t k = 0; k < alpha_.size(); ++k) total += alpha_[k] + static_cast<double>(counts_[k]);
    std::vector<double> mean(alpha_.size());
    for (std::size_t k = 0; k < alpha_.size(); ++k) {
        mean[k] = (alpha_[k] + static_cast<double>(counts_[k])) / total;
    }
    return PreferenceVector(std::move(mean));
}

PreferenceVector DirichletPosterior::sample(Rng& rng) const {
    std::vector<double> lambda(alpha_.size());
    double total = 0.0;
    for (std::size_t k = 0; k < alpha_.size(); ++k) {
        lambda[k] = rng.gamma(alpha_[k] + static_cast<double>(counts_[k]), 1.0);
        total += lambda[k];
    }
    for (double& l : lambda) l /= total;
    return PreferenceVector(std::move(lambda));
}

}  // namespace lucelab
