#include "lucelab/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lucelab/errors.hpp"

namespace lucelab {

PreferenceVector::PreferenceVector(std::vector<double> weights) : weights_(std::move(weights)) {
    double sum = 0.0;
    for (double w : weights_) {
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw ConfigError("preference weights must be finite and non-negative");
        }
        sum += w;
    }
    if (weights_.empty() || std::abs(sum - 1.0) > 1e-9) {
        throw ConfigError("preference weights must sum to 1 (got " + std::to_string(sum) + ")");
    }
}

bool Presentation::contains(OptionId k) const {
    return std::binary_search(members_.begin(), members_.end(), k);
}

std::string Presentation::to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (i > 0) out << '|';
        out << members_[i];
    }
    return out.str();
}

Presentation canonical_presentation(std::vector<OptionId> options, int option_count) {
    if (options.empty()) throw EmptyPresentation();
    std::sort(options.begin(), options.end());
    options.erase(std::unique(options.begin(), options.end()), options.end());
    for (OptionId id : options) {
        if (id < 0 || id >= option_count) throw UnknownOption(id, option_count);
    }
    return Presentation(std::move(options));
}

double luce_choice_probability(const PreferenceVector& theta, const Presentation& c, OptionId k) {
    if (!c.contains(k)) throw OptionNotPresented(k);
    double mass = 0.0;
    for (OptionId j : c) mass += theta[static_cast<std::size_t>(j)];
    if (mass <= 0.0) throw DegeneratePresentation();
    return theta[static_cast<std::size_t>(k)] / mass;
}

OptionId sample_user_choice(const PreferenceVector& theta, const Presentation& c, Rng& rng) {
    double mass = 0.0;
    for (OptionId j : c) mass += theta[static_cast<std::size_t>(j)];
    if (mass <= 0.0) throw DegeneratePresentation();
    const double u = rng.uniform() * mass;
    double acc = 0.0;
    for (OptionId j : c) {
        acc += theta[static_cast<std::size_t>(j)];
        if (u < acc) return j;
    }
    return c.members().back();  // u == mass up to rounding
}

}  // namespace lucelab
