#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ttmcmc/mixture.hpp"
#include "ttmcmc/parallel.hpp"

namespace ttmcmc {

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

class DensityGrid {
public:
    explicit DensityGrid(std::vector<double> points);
    static DensityGrid uniform(double lo, double hi, std::size_t n);
    // n points over [min - 0.5 range, max + 0.5 range].
    static DensityGrid for_data(std::span<const double> data, std::size_t n = 512);

    const std::vector<double>& points() const { return x_; }
    std::size_t size() const { return x_.size(); }

private:
    std::vector<double> x_;
};

struct DensitySample {
    std::vector<double> values;
    std::size_t source = 0;
};

DensitySample evaluate_on_grid(const MixtureParams& params, const DensityGrid& grid,
                               kernels::Exec exec = kernels::Exec::parallel);

double sup_distance(const DensitySample& f, const DensitySample& g);

// Symmetric pairwise sup-norm distances, stored as the condensed upper triangle.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    static DistanceMatrix compute(const std::vector<DensitySample>& samples,
                                  kernels::Exec exec = kernels::Exec::parallel);
    static DistanceMatrix from_condensed(std::size_t n, std::vector<double> condensed);

    std::size_t size() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const;
    const std::vector<double>& condensed() const { return d_; }
    // Distances among samples [begin, end).
    DistanceMatrix block(std::size_t begin, std::size_t end) const;

private:
    std::size_t n_ = 0;
    std::vector<double> d_;
};

// Linear-interpolated quantile of all pairwise distances; 0 when N < 2.
double pairwise_quantile(const DistanceMatrix& d, double q);
inline double default_epsilon(const DistanceMatrix& d) { return pairwise_quantile(d, 0.05); }

std::vector<std::size_t> neighbor_counts(const DistanceMatrix& d, double epsilon);

// argmax_i #{l : d(i, l) < epsilon}; ties go to the smallest index.
std::size_t central_density(const DistanceMatrix& d, double epsilon);
std::size_t central_density(const std::vector<DensitySample>& samples, double epsilon);

struct CredibleRegion {
    std::size_t center = 0;
    double radius = 0.0;
    std::vector<std::size_t> members;
    double probability = 0.0;
};

// Smallest radius n * zeta whose ball (d <= radius) holds at least target_prob of the samples.
CredibleRegion credible_region(const DistanceMatrix& d, std::size_t center, double target_prob = 0.95,
                               double zeta = 1e-5);

// Balls start at radius 0 around each mode. Each sample outside every ball inflates the
// nearest ball by zeta until the union holds target_prob of the samples.
std::vector<CredibleRegion> hpd_region(const DistanceMatrix& d, const std::vector<std::size_t>& modes,
                                       double target_prob = 0.95, double zeta = 1e-5);

double union_probability(const DistanceMatrix& d, const std::vector<CredibleRegion>& balls);

// Greedy peeling: take the central density of the remaining samples, drop its radius-ball, repeat
// until fewer than min_fraction * N samples remain.
std::vector<std::size_t> find_local_modes(const DistanceMatrix& d, double radius, double min_fraction = 0.01);

struct ConvergenceReport {
    std::vector<std::size_t> centers;  // global indices
    std::vector<double> epsilons;      // central-density epsilon per part
    std::vector<double> radii;         // credible radius per part
    double eta1 = 0.0;
    double eta2 = 0.0;
    std::size_t part_size = 0;
};

// Splits N samples into `parts` equal consecutive parts (trailing remainder dropped) and
// compares parts 1 and 2.
ConvergenceReport convergence_diagnostic(const DistanceMatrix& d, std::size_t parts = 2, double target_prob = 0.95,
                                         double zeta = 1e-5);

// Least eta >= 0 with d(center, f) <= radius + eta for every member f.
double containment_increment(const DistanceMatrix& d, std::size_t center, double radius,
                             const std::vector<std::size_t>& members);

struct Autocorrelation {
    bool degenerate = false;  // zero variance
    std::vector<double> acf;  // lags 1..max_lag
};

Autocorrelation k_autocorrelation(std::span<const double> k, std::size_t max_lag);

}  // namespace ttmcmc
