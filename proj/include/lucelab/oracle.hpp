#ifndef LUCELAB_ORACLE_HPP
#define LUCELAB_ORACLE_HPP

#include <vector>

#include "lucelab/core.hpp"
#include "lucelab/dirichlet_luce.hpp"

namespace lucelab {

// Simplex discretized into compositions with denominator m, evaluated at
// interior cell centers. Brute-force reference for K <= 4 only.
struct GridSpec {
    int resolution = 400;
};

// Quadrature posterior mean: sum_i w(theta_i) theta_i / sum_i w(theta_i)
// with w = exp(log_unnormalized_density), normalized in log space.
PreferenceVector grid_posterior_mean(const DirichletLucePosterior& post, const GridSpec& grid);

// Normalized histogram of theta_k under the grid-weighted posterior.
std::vector<double> grid_marginal_histogram(const DirichletLucePosterior& post, OptionId k,
                                            int bins, const GridSpec& grid);

}  // namespace lucelab

#endif  // LUCELAB_ORACLE_HPP
