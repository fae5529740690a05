#include "ttmcmc/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ttmcmc::kernels {

namespace {

const double kLog2Pi = std::log(2.0 * std::numbers::pi);

inline double log_density_at(double y, const Components& c) {
    const std::size_t k = c.mean.size();
    double m = -INFINITY;
    double s = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        const double d = y - c.mean[j];
        const double t = c.log_coef[j] - 0.5 * c.precision[j] * d * d;
        if (t > m) {
            s = s * std::exp(m - t) + 1.0;
            m = t;
        } else {
            s += std::exp(t - m);
        }
    }
    return m + std::log(s);
}

inline double density_at(double x, const Components& c) {
    double f = 0.0;
    for (std::size_t j = 0; j < c.mean.size(); ++j) {
        const double d = x - c.mean[j];
        f += std::exp(c.log_coef[j] - 0.5 * c.precision[j] * d * d);
    }
    return f;
}

}  // namespace

Components make_components(std::span<const double> nu, std::span<const double> tau_star,
                           std::span<const double> omega) {
    const std::size_t k = nu.size();
    if (tau_star.size() != k || omega.size() != k || k == 0)
        throw std::invalid_argument("mixture blocks must share a positive length");
    Components c;
    c.mean.assign(nu.begin(), nu.end());
    c.precision.resize(k);
    c.log_coef.resize(k);
    const double wmax = *std::max_element(omega.begin(), omega.end());
    double z = 0.0;
    for (double w : omega) z += std::exp(w - wmax);
    const double log_norm = wmax + std::log(z);
    for (std::size_t j = 0; j < k; ++j) {
        c.precision[j] = std::exp(tau_star[j]);
        c.log_coef[j] = (omega[j] - log_norm) + 0.5 * (tau_star[j] - kLog2Pi);
    }
    return c;
}

void log_density_terms(std::span<const double> y, const Components& c, std::span<double> out, Exec exec) {
    const std::size_t n = y.size();
    if (out.size() != n) throw std::invalid_argument("output size mismatch");
    if (exec == Exec::parallel && n >= kParallelThreshold) {
#pragma omp parallel for schedule(static)
        for (std::size_t i = 0; i < n; ++i) out[i] = log_density_at(y[i], c);
    } else {
        for (std::size_t i = 0; i < n; ++i) out[i] = log_density_at(y[i], c);
    }
}

double log_likelihood(std::span<const double> y, const Components& c, Exec exec) {
    if (y.empty()) throw std::domain_error("log likelihood of empty data");
    if (exec == Exec::serial || y.size() < kParallelThreshold) {
        double s = 0.0;
        for (double v : y) s += log_density_at(v, c);
        return s;
    }
    std::vector<double> terms(y.size());
    log_density_terms(y, c, terms, exec);
    double s = 0.0;
    for (double t : terms) s += t;
    return s;
}

void density(std::span<const double> x, const Components& c, std::span<double> out, Exec exec) {
    const std::size_t n = x.size();
    if (out.size() != n) throw std::invalid_argument("output size mismatch");
    if (exec == Exec::parallel && n * c.mean.size() >= kParallelThreshold) {
#pragma omp parallel for schedule(static)
        for (std::size_t i = 0; i < n; ++i) out[i] = density_at(x[i], c);
    } else {
        for (std::size_t i = 0; i < n; ++i) out[i] = density_at(x[i], c);
    }
}

double sup_norm(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::domain_error("densities on different grids");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = std::fabs(a[i] - b[i]);
        m = d > m ? d : m;
    }
    return m;
}

std::vector<double> sup_distance_matrix(const std::vector<std::vector<double>>& rows, Exec exec) {
    const std::size_t n = rows.size();
    std::vector<double> out(n < 2 ? 0 : n * (n - 1) / 2);
    auto fill_row = [&](std::size_t i) {
        std::size_t base = n > 1 ? condensed_index(n, i, i + 1) : 0;
        for (std::size_t j = i + 1; j < n; ++j) out[base + (j - i - 1)] = sup_norm(rows[i], rows[j]);
    };
    if (exec == Exec::parallel && out.size() >= kParallelThreshold) {
        const auto nn = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 16)
        for (long long i = 0; i < nn; ++i) fill_row(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < n; ++i) fill_row(i);
    }
    return out;
}

}  // namespace ttmcmc::kernels
