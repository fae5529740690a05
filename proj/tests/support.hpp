#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "ttmcmc/kernel.hpp"
#include "ttmcmc/state.hpp"

namespace ttmcmc::testing {

inline double log_phi(double x) {
    return -0.5 * std::log(2.0 * std::numbers::pi) - 0.5 * x * x;
}

// pi(k, x) = w_k prod_i phi(x_i); the marginal of k is w_k.
class ToyTarget : public TargetModel {
public:
    explicit ToyTarget(std::vector<double> w = {0.2, 0.5, 0.3}, std::size_t blocks = 1)
        : w_(std::move(w)), blocks_(blocks) {}

    double log_density(const ParamState& x) const override {
        const std::size_t k = x.dim();
        if (k < 1 || k > w_.size()) return -INFINITY;
        double lp = std::log(w_[k - 1]);
        for (const auto& b : x.blocks)
            for (double v : b) lp += log_phi(v);
        return lp;
    }
    std::size_t num_blocks() const override { return blocks_; }
    std::size_t k_max() const override { return w_.size(); }

private:
    std::vector<double> w_;
    std::size_t blocks_;
};

// Product of standard normals at any dimension up to k_max.
class NormalTarget : public TargetModel {
public:
    explicit NormalTarget(std::size_t k_max = 30, std::size_t blocks = 1) : k_max_(k_max), blocks_(blocks) {}
    double log_density(const ParamState& x) const override {
        double lp = 0.0;
        for (const auto& b : x.blocks)
            for (double v : b) lp += log_phi(v);
        return lp;
    }
    std::size_t num_blocks() const override { return blocks_; }
    std::size_t k_max() const override { return k_max_; }

private:
    std::size_t k_max_;
    std::size_t blocks_;
};

// Zero log density everywhere: acceptance ratios reduce to their proposal factors.
class FlatTarget : public TargetModel {
public:
    explicit FlatTarget(std::size_t k_max = 30, std::size_t blocks = 1) : k_max_(k_max), blocks_(blocks) {}
    double log_density(const ParamState&) const override { return 0.0; }
    std::size_t num_blocks() const override { return blocks_; }
    std::size_t k_max() const override { return k_max_; }

private:
    std::size_t k_max_;
    std::size_t blocks_;
};

inline Kernel additive_kernel(const TargetModel& target, std::vector<TransformFamily> families) {
    Kernel k;
    k.target = &target;
    k.families = std::move(families);
    k.weights = MoveWeights::equal(target.k_max());
    return k;
}

inline DirectionVector full_direction(std::vector<std::int8_t> entries, std::vector<std::size_t> coords) {
    DirectionVector z;
    z.entries = std::move(entries);
    z.coords = std::move(coords);
    return z;
}

// Every coordinate of 0..k-1 except `skip`, with the given labels cycled.
inline DirectionVector direction_except(std::size_t k, const std::vector<std::size_t>& skip, Rng& rng) {
    DirectionVector z;
    for (std::size_t i = 0; i < k; ++i) {
        bool s = false;
        for (auto j : skip) s = s || j == i;
        if (s) continue;
        z.coords.push_back(i);
        z.entries.push_back(static_cast<std::int8_t>(static_cast<int>(rng.index(3)) - 1));
    }
    return z;
}

using VecMap = std::function<std::vector<double>(const std::vector<double>&)>;

// |det| of the Jacobian of f at x by central differences.
inline double fd_abs_det(const VecMap& f, const std::vector<double>& x, double h = 1e-5) {
    const std::size_t n = x.size();
    Eigen::MatrixXd J(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        auto xp = x, xm = x;
        const double step = h * std::max(1.0, std::fabs(x[c]));
        xp[c] += step;
        xm[c] -= step;
        auto fp = f(xp), fm = f(xm);
        if (fp.size() != n) throw std::invalid_argument("map is not square");
        for (std::size_t r = 0; r < n; ++r) J(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            (fp[r] - fm[r]) / (2.0 * step);
    }
    return std::fabs(J.determinant());
}

inline std::vector<double> flatten(const ParamState& x) {
    std::vector<double> v;
    for (const auto& b : x.blocks) v.insert(v.end(), b.begin(), b.end());
    return v;
}

inline ParamState unflatten(const std::vector<double>& v, std::size_t blocks, std::size_t k) {
    ParamState x;
    for (std::size_t b = 0; b < blocks; ++b)
        x.blocks.emplace_back(v.begin() + static_cast<std::ptrdiff_t>(b * k),
                              v.begin() + static_cast<std::ptrdiff_t>((b + 1) * k));
    return x;
}

// Batch-means standard error of the mean of a series.
inline double batch_means_se(const std::vector<double>& s, std::size_t batches = 50) {
    const std::size_t len = s.size() / batches;
    std::vector<double> means(batches, 0.0);
    for (std::size_t b = 0; b < batches; ++b) {
        for (std::size_t i = 0; i < len; ++i) means[b] += s[b * len + i];
        means[b] /= static_cast<double>(len);
    }
    double m = 0.0;
    for (double v : means) m += v;
    m /= static_cast<double>(batches);
    double var = 0.0;
    for (double v : means) var += (v - m) * (v - m);
    var /= static_cast<double>(batches - 1);
    return std::sqrt(var / static_cast<double>(batches));
}

}  // namespace ttmcmc::testing
