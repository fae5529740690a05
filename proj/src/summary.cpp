#include "ttmcmc/summary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ttmcmc {

DensityGrid::DensityGrid(std::vector<double> points) : x_(std::move(points)) {
    if (x_.size() < 2) throw DomainError("grid needs at least 2 points");
    for (std::size_t i = 1; i < x_.size(); ++i)
        if (!(x_[i] > x_[i - 1])) throw DomainError("grid points must be strictly increasing");
}

DensityGrid DensityGrid::uniform(double lo, double hi, std::size_t n) {
    if (n < 2 || !(hi > lo)) throw DomainError("uniform grid needs n >= 2 and hi > lo");
    std::vector<double> x(n);
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) x[i] = lo + step * static_cast<double>(i);
    x.back() = hi;
    return DensityGrid(std::move(x));
}

DensityGrid DensityGrid::for_data(std::span<const double> data, std::size_t n) {
    if (data.empty()) throw DomainError("grid needs data");
    const auto [lo, hi] = std::minmax_element(data.begin(), data.end());
    double range = *hi - *lo;
    if (!(range > 0.0)) range = 1.0;
    return uniform(*lo - 0.5 * range, *hi + 0.5 * range, n);
}

DensitySample evaluate_on_grid(const MixtureParams& params, const DensityGrid& grid, kernels::Exec exec) {
    DensitySample s;
    s.values.resize(grid.size());
    kernels::density(grid.points(), kernels::make_components(params.nu, params.tau_star, params.omega), s.values,
                     exec);
    return s;
}

double sup_distance(const DensitySample& f, const DensitySample& g) {
    if (f.values.size() != g.values.size()) throw DomainError("densities on different grids");
    return kernels::sup_norm(f.values, g.values);
}

DistanceMatrix DistanceMatrix::compute(const std::vector<DensitySample>& samples, kernels::Exec exec) {
    std::vector<std::vector<double>> rows;
    rows.reserve(samples.size());
    for (const auto& s : samples) {
        if (!rows.empty() && s.values.size() != rows.front().size()) throw DomainError("densities on different grids");
        rows.push_back(s.values);
    }
    return from_condensed(samples.size(), kernels::sup_distance_matrix(rows, exec));
}

DistanceMatrix DistanceMatrix::from_condensed(std::size_t n, std::vector<double> condensed) {
    if (condensed.size() != (n < 2 ? 0 : n * (n - 1) / 2)) throw std::invalid_argument("condensed size mismatch");
    DistanceMatrix m;
    m.n_ = n;
    m.d_ = std::move(condensed);
    return m;
}

double DistanceMatrix::operator()(std::size_t i, std::size_t j) const {
    if (i == j) return 0.0;
    if (i > j) std::swap(i, j);
    return d_[kernels::condensed_index(n_, i, j)];
}

DistanceMatrix DistanceMatrix::block(std::size_t begin, std::size_t end) const {
    if (begin > end || end > n_) throw std::out_of_range("block outside the matrix");
    const std::size_t m = end - begin;
    std::vector<double> out;
    out.reserve(m < 2 ? 0 : m * (m - 1) / 2);
    for (std::size_t i = begin; i < end; ++i)
        for (std::size_t j = i + 1; j < end; ++j) out.push_back((*this)(i, j));
    return from_condensed(m, std::move(out));
}

double pairwise_quantile(const DistanceMatrix& d, double q) {
    std::vector<double> v = d.condensed();
    if (v.empty()) return 0.0;
    const double h = q * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(lo), v.end());
    const double a = v[lo];
    if (lo + 1 >= v.size()) return a;
    const double b = *std::min_element(v.begin() + static_cast<std::ptrdiff_t>(lo) + 1, v.end());
    return a + (h - static_cast<double>(lo)) * (b - a);
}

std::vector<std::size_t> neighbor_counts(const DistanceMatrix& d, double epsilon) {
    const std::size_t n = d.size();
    std::vector<std::size_t> c(n, 0);
    const auto& v = d.condensed();
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j, ++idx)
            if (v[idx] < epsilon) {
                ++c[i];
                ++c[j];
            }
    return c;
}

std::size_t central_density(const DistanceMatrix& d, double epsilon) {
    if (d.size() == 0) throw DomainError("central density of an empty sample");
    auto c = neighbor_counts(d, epsilon);
    return static_cast<std::size_t>(std::max_element(c.begin(), c.end()) - c.begin());
}

std::size_t central_density(const std::vector<DensitySample>& samples, double epsilon) {
    return central_density(DistanceMatrix::compute(samples), epsilon);
}

namespace {

std::size_t required_count(std::size_t n, double target) {
    auto c = static_cast<std::size_t>(std::ceil(target * static_cast<double>(n)));
    c = std::min(c, n);
    while (c > 0 && static_cast<double>(c - 1) / static_cast<double>(n) >= target) --c;
    while (c < n && static_cast<double>(c) / static_cast<double>(n) < target) ++c;
    return c;
}

// Smallest integer m with m * zeta >= r.
std::size_t zeta_steps(double r, double zeta) {
    if (r <= 0.0) return 0;
    auto m = static_cast<std::size_t>(std::ceil(r / zeta));
    while (static_cast<double>(m) * zeta < r) ++m;
    while (m > 0 && static_cast<double>(m - 1) * zeta >= r) --m;
    return m;
}

std::vector<std::size_t> ball(const DistanceMatrix& d, std::size_t center, double radius) {
    std::vector<std::size_t> m;
    for (std::size_t l = 0; l < d.size(); ++l)
        if (d(center, l) <= radius) m.push_back(l);
    return m;
}

CredibleRegion make_region(const DistanceMatrix& d, std::size_t center, double radius) {
    CredibleRegion r;
    r.center = center;
    r.radius = radius;
    r.members = ball(d, center, radius);
    r.probability = static_cast<double>(r.members.size()) / static_cast<double>(d.size());
    return r;
}

}  // namespace

CredibleRegion credible_region(const DistanceMatrix& d, std::size_t center, double target_prob, double zeta) {
    const std::size_t n = d.size();
    if (center >= n) throw std::out_of_range("center outside the sample");
    if (!(zeta > 0.0)) throw std::invalid_argument("zeta must be positive");
    std::vector<double> row(n);
    for (std::size_t l = 0; l < n; ++l) row[l] = d(center, l);
    const std::size_t need = required_count(n, target_prob);
    double r_req = 0.0;
    if (need > 0) {
        std::nth_element(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(need - 1), row.end());
        r_req = row[need - 1];
    }
    return make_region(d, center, static_cast<double>(zeta_steps(r_req, zeta)) * zeta);
}

std::vector<CredibleRegion> hpd_region(const DistanceMatrix& d, const std::vector<std::size_t>& modes,
                                       double target_prob, double zeta) {
    const std::size_t n = d.size();
    if (modes.empty()) throw std::invalid_argument("HPD region needs at least one mode");
    if (!(zeta > 0.0)) throw std::invalid_argument("zeta must be positive");
    for (auto m : modes)
        if (m >= n) throw std::out_of_range("mode outside the sample");
    const std::size_t nm = modes.size();

    // Per ball: samples sorted by distance and a cursor past those already inside.
    std::vector<std::vector<std::pair<double, std::size_t>>> order(nm);
    for (std::size_t b = 0; b < nm; ++b) {
        order[b].reserve(n);
        for (std::size_t l = 0; l < n; ++l) order[b].emplace_back(d(modes[b], l), l);
        std::sort(order[b].begin(), order[b].end());
    }
    std::vector<std::size_t> steps(nm, 0), cursor(nm, 0);
    std::vector<char> covered(n, 0);
    std::size_t count = 0;
    const std::size_t need = required_count(n, target_prob);

    auto absorb = [&](std::size_t b) {
        const double r = static_cast<double>(steps[b]) * zeta;
        while (cursor[b] < n && order[b][cursor[b]].first <= r) {
            std::size_t l = order[b][cursor[b]++].second;
            if (!covered[l]) {
                covered[l] = 1;
                ++count;
            }
        }
    };
    for (std::size_t b = 0; b < nm; ++b) absorb(b);

    while (count < need) {
        for (std::size_t l = 0; l < n && count < need; ++l) {
            if (covered[l]) continue;
            std::size_t best = 0;
            double gap = std::numeric_limits<double>::infinity();
            for (std::size_t b = 0; b < nm; ++b) {
                const double g = d(modes[b], l) - static_cast<double>(steps[b]) * zeta;
                if (g < gap) {
                    gap = g;
                    best = b;
                }
            }
            ++steps[best];
            absorb(best);
        }
    }

    std::vector<CredibleRegion> out;
    out.reserve(nm);
    for (std::size_t b = 0; b < nm; ++b) out.push_back(make_region(d, modes[b], static_cast<double>(steps[b]) * zeta));
    return out;
}

double union_probability(const DistanceMatrix& d, const std::vector<CredibleRegion>& balls) {
    std::size_t c = 0;
    for (std::size_t l = 0; l < d.size(); ++l)
        for (const auto& b : balls)
            if (d(b.center, l) <= b.radius) {
                ++c;
                break;
            }
    return d.size() == 0 ? 0.0 : static_cast<double>(c) / static_cast<double>(d.size());
}

std::vector<std::size_t> find_local_modes(const DistanceMatrix& d, double radius, double min_fraction) {
    const std::size_t n = d.size();
    std::vector<std::size_t> modes;
    if (n == 0) return modes;
    const std::size_t min_count =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(min_fraction * static_cast<double>(n))));
    std::vector<char> alive(n, 1);
    std::size_t remaining = n;
    auto counts = neighbor_counts(d, radius);

    while (remaining >= min_count) {
        std::size_t best = n;
        for (std::size_t i = 0; i < n; ++i)
            if (alive[i] && (best == n || counts[i] > counts[best])) best = i;
        modes.push_back(best);
        std::vector<std::size_t> removed;
        for (std::size_t l = 0; l < n; ++l)
            if (alive[l] && (l == best || d(best, l) < radius)) removed.push_back(l);
        for (auto r : removed) alive[r] = 0;
        remaining -= removed.size();
        for (auto r : removed)
            for (std::size_t i = 0; i < n; ++i)
                if (alive[i] && d(i, r) < radius) --counts[i];
    }
    return modes;
}

double containment_increment(const DistanceMatrix& d, std::size_t center, double radius,
                             const std::vector<std::size_t>& members) {
    double far = 0.0;
    for (auto m : members) far = std::max(far, d(center, m));
    double eta = far - radius;
    if (!(eta > 0.0)) return 0.0;
    while (radius + eta < far) eta = std::nextafter(eta, std::numeric_limits<double>::infinity());
    while (eta > 0.0) {
        const double smaller = std::nextafter(eta, 0.0);
        if (radius + smaller < far) break;
        eta = smaller;
    }
    return eta;
}

ConvergenceReport convergence_diagnostic(const DistanceMatrix& d, std::size_t parts, double target_prob,
                                         double zeta) {
    if (parts < 2) throw DomainError("convergence diagnostic needs at least 2 parts");
    const std::size_t size = d.size() / parts;
    if (size < 2) throw DomainError("fewer than 2 samples per part");
    ConvergenceReport rep;
    rep.part_size = size;
    std::vector<std::vector<std::size_t>> members(parts);
    for (std::size_t p = 0; p < parts; ++p) {
        const std::size_t off = p * size;
        DistanceMatrix b = d.block(off, off + size);
        const double eps = default_epsilon(b);
        const std::size_t c = central_density(b, eps);
        CredibleRegion cr = credible_region(b, c, target_prob, zeta);
        rep.centers.push_back(off + c);
        rep.epsilons.push_back(eps);
        rep.radii.push_back(cr.radius);
        for (auto m : cr.members) members[p].push_back(off + m);
    }
    rep.eta1 = containment_increment(d, rep.centers[0], rep.radii[0], members[1]);
    rep.eta2 = containment_increment(d, rep.centers[1], rep.radii[1], members[0]);
    return rep;
}

Autocorrelation k_autocorrelation(std::span<const double> k, std::size_t max_lag) {
    if (k.size() < max_lag + 2) throw DomainError("autocorrelation needs at least max_lag + 2 samples");
    const double n = static_cast<double>(k.size());
    double mean = 0.0;
    for (double v : k) mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : k) var += (v - mean) * (v - mean);
    Autocorrelation out;
    if (var == 0.0) {
        out.degenerate = true;
        return out;
    }
    out.acf.resize(max_lag);
    for (std::size_t lag = 1; lag <= max_lag; ++lag) {
        double s = 0.0;
        for (std::size_t t = 0; t + lag < k.size(); ++t) s += (k[t] - mean) * (k[t + lag] - mean);
        out.acf[lag - 1] = s / var;
    }
    return out;
}

}  // namespace ttmcmc
