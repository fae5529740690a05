#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ttmcmc::kernels {

// serial is the reference; parallel fills per-element terms with OpenMP and
// reduces them serially in index order, so both give bit-identical results.
enum class Exec { serial, parallel };

// Normal-mixture components in log space: log_coef_j = log pi_j + (tau*_j - log 2 pi) / 2.
struct Components {
    std::vector<double> mean;
    std::vector<double> precision;
    std::vector<double> log_coef;
};

Components make_components(std::span<const double> nu, std::span<const double> tau_star,
                           std::span<const double> omega);

// out[i] = log sum_j exp(log_coef_j - precision_j (y_i - mean_j)^2 / 2)
void log_density_terms(std::span<const double> y, const Components& c, std::span<double> out, Exec exec);

double log_likelihood(std::span<const double> y, const Components& c, Exec exec);

// Linear-space mixture density at each x.
void density(std::span<const double> x, const Components& c, std::span<double> out, Exec exec);

inline std::size_t condensed_index(std::size_t n, std::size_t i, std::size_t j) {
    return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

double sup_norm(std::span<const double> a, std::span<const double> b);

// Upper triangle (i < j) of the pairwise sup-norm distances, row-major.
std::vector<double> sup_distance_matrix(const std::vector<std::vector<double>>& rows, Exec exec);

// Calls below this many elements run serially even when Exec::parallel is requested.
inline constexpr std::size_t kParallelThreshold = 4096;

}  // namespace ttmcmc::kernels
