#include "lucelab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "lucelab/errors.hpp"

namespace lucelab {

namespace {

double grid_point_count(int m, int K) {
    // C(m + K - 1, K - 1)
    double n = 1.0;
    for (int i = 1; i < K; ++i) n = n * (m + i) / i;
    return n;
}

void validate(const DirichletLucePosterior& post, const GridSpec& grid) {
    const int K = post.option_count();
    if (K > 4) throw OracleTooLarge(K);
    if (grid.resolution < 10) throw ConfigError("grid resolution must be >= 10");
    if (grid_point_count(grid.resolution, K) > 1e7) {
        throw ConfigError("grid has more than 1e7 points");
    }
}

// Enumerates compositions (a_0..a_{K-1}) of m, maps each to the interior
// cell center theta_k = (a_k + 1/2) / (m + K/2), and hands (theta,
// log-weight) to the visitor. Log-sum-exp is the caller's job.
void for_each_cell(const DirichletLucePosterior& post, int m,
                   const std::function<void(const std::vector<double>&, double)>& visit) {
    const int K = post.option_count();
    const double denom = static_cast<double>(m) + 0.5 * static_cast<double>(K);
    std::vector<int> comp(static_cast<std::size_t>(K), 0);
    std::vector<double> theta(static_cast<std::size_t>(K), 0.0);

    std::function<void(int, int)> recurse = [&](int k, int remaining) {
        if (k == K - 1) {
            comp[static_cast<std::size_t>(k)] = remaining;
            for (int j = 0; j < K; ++j) {
                theta[static_cast<std::size_t>(j)] =
                    (static_cast<double>(comp[static_cast<std::size_t>(j)]) + 0.5) / denom;
            }
            // cell centers sum to (sum a_k + K/2) / (m + K/2) = 1 and are
            // strictly interior, so the density is always finite here
            const double log_w = post.log_unnormalized_density(PreferenceVector(theta));
            visit(theta, log_w);
            return;
        }
        for (int a = 0; a <= remaining; ++a) {
            comp[static_cast<std::size_t>(k)] = a;
            recurse(k + 1, remaining - a);
        }
    };
    recurse(0, m);
}

}  // namespace

PreferenceVector grid_posterior_mean(const DirichletLucePosterior& post, const GridSpec& grid) {
    validate(post, grid);
    const int K = post.option_count();

    // pass 1: max log-weight for stable exponentiation
    double max_log_w = -std::numeric_limits<double>::infinity();
    for_each_cell(post, grid.resolution,
                  [&](const std::vector<double>&, double log_w) { max_log_w = std::max(max_log_w, log_w); });
    if (!std::isfinite(max_log_w)) throw NumericUnderflow("all grid weights vanished");

    double total_w = 0.0;
    std::vector<double> acc(static_cast<std::size_t>(K), 0.0);
    for_each_cell(post, grid.resolution, [&](const std::vector<double>& theta, double log_w) {
        const double w = std::exp(log_w - max_log_w);
        total_w += w;
        for (int k = 0; k < K; ++k) acc[static_cast<std::size_t>(k)] += w * theta[static_cast<std::size_t>(k)];
    });
    if (total_w <= 0.0) throw NumericUnderflow("grid weight mass is zero");

    double sum = 0.0;
    for (double& a : acc) {
        a /= total_w;
        sum += a;
    }
    for (double& a : acc) a /= sum;  // cell centers sum slightly off 1; renormalize
    return PreferenceVector(std::move(acc));
}

std::vector<double> grid_marginal_histogram(const DirichletLucePosterior& post, OptionId k,
                                            int bins, const GridSpec& grid) {
    validate(post, grid);
    if (bins < 1) throw ConfigError("bins must be positive");
    if (k < 0 || k >= post.option_count()) throw UnknownOption(k, post.option_count());

    double max_log_w = -std::numeric_limits<double>::infinity();
    for_each_cell(post, grid.resolution,
                  [&](const std::vector<double>&, double log_w) { max_log_w = std::max(max_log_w, log_w); });
    if (!std::isfinite(max_log_w)) throw NumericUnderflow("all grid weights vanished");

    std::vector<double> hist(static_cast<std::size_t>(bins), 0.0);
    double total_w = 0.0;
    for_each_cell(post, grid.resolution, [&](const std::vector<double>& theta, double log_w) {
        const double w = std::exp(log_w - max_log_w);
        total_w += w;
        int b = static_cast<int>(theta[static_cast<std::size_t>(k)] * bins);
        b = std::min(std::max(b, 0), bins - 1);
        hist[static_cast<std::size_t>(b)] += w;
    });
    if (total_w <= 0.0) throw NumericUnderflow("grid weight mass is zero");
    for (double& h : hist) h /= total_w;
    return hist;
}

}  // namespace lucelab
