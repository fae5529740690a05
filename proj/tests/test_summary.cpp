#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <gtest/gtest.h>

#include "ttmcmc/rng.hpp"
#include "ttmcmc/summary.hpp"

using namespace ttmcmc;

namespace {

DistanceMatrix from_points(const std::vector<double>& p) {
    std::vector<DensitySample> s;
    for (std::size_t i = 0; i < p.size(); ++i) s.push_back({{p[i]}, i});
    return DistanceMatrix::compute(s, kernels::Exec::serial);
}

std::vector<double> two_clusters(std::size_t n_each, Rng& rng) {
    std::vector<double> p;
    for (std::size_t i = 0; i < n_each; ++i) p.push_back(0.05 * rng.normal());
    for (std::size_t i = 0; i < n_each; ++i) p.push_back(10.0 + 0.05 * rng.normal());
    return p;
}

}  // namespace

TEST(Grid, StandardNormalDensity) {
    DensityGrid g({-1.0, 0.0, 1.0});
    MixtureParams p{{0.0}, {0.0}, {0.0}};
    auto s = evaluate_on_grid(p, g, kernels::Exec::serial);
    EXPECT_NEAR(s.values[1], 0.3989423, 1e-7);
    EXPECT_NEAR(s.values[0], s.values[2], 1e-15);
}

TEST(Grid, TrapezoidIntegratesToOne) {
    MixtureParams p{{-2.0, 3.0}, {0.5, -0.2}, {0.3, -0.1}};
    auto g = DensityGrid::uniform(-15.0, 20.0, 4001);
    auto s = evaluate_on_grid(p, g);
    double integral = 0.0;
    for (std::size_t i = 1; i < g.size(); ++i)
        integral += 0.5 * (s.values[i] + s.values[i - 1]) * (g.points()[i] - g.points()[i - 1]);
    EXPECT_NEAR(integral, 1.0, 1e-6);
}

TEST(Grid, Validation) {
    EXPECT_THROW(DensityGrid({1.0}), DomainError);
    EXPECT_THROW(DensityGrid({1.0, 1.0}), DomainError);
    auto g = DensityGrid::uniform(0.0, 1.0, 11);
    EXPECT_EQ(g.points().back(), 1.0);
    std::vector<double> data = {2.0, 4.0};
    auto f = DensityGrid::for_data(data, 5);
    EXPECT_DOUBLE_EQ(f.points().front(), 1.0);
    EXPECT_DOUBLE_EQ(f.points().back(), 5.0);
}

TEST(Distance, SupNormExample) {
    DensitySample f{{0.1, 0.2, 0.3}, 0}, g{{0.1, 0.25, 0.2}, 1};
    EXPECT_NEAR(sup_distance(f, g), 0.1, 1e-15);
    EXPECT_EQ(sup_distance(f, f), 0.0);
}

TEST(Distance, MetricProperties) {
    Rng rng(91);
    std::vector<DensitySample> s;
    for (std::size_t i = 0; i < 30; ++i) {
        DensitySample d;
        for (int c = 0; c < 8; ++c) d.values.push_back(rng.uniform());
        s.push_back(d);
    }
    auto d = DistanceMatrix::compute(s);
    for (std::size_t i = 0; i < 30; ++i) {
        EXPECT_EQ(d(i, i), 0.0);
        for (std::size_t j = 0; j < 30; ++j) {
            EXPECT_EQ(d(i, j), d(j, i));
            for (std::size_t l = 0; l < 30; ++l) EXPECT_LE(d(i, l), d(i, j) + d(j, l) + 1e-15);
        }
    }
    EXPECT_THROW(DistanceMatrix::from_condensed(4, std::vector<double>(5)), std::invalid_argument);
}

TEST(Distance, BlockMatchesSubset) {
    auto d = from_points({0.0, 1.0, 3.0, 7.0, 15.0});
    auto b = d.block(1, 4);
    EXPECT_EQ(b.size(), 3u);
    EXPECT_EQ(b(0, 2), d(1, 3));
    EXPECT_EQ(b(1, 2), d(2, 3));
}

TEST(Quantile, Interpolated) {
    // pairwise distances 1, 2, 3
    auto d = from_points({0.0, 1.0, 3.0});
    EXPECT_DOUBLE_EQ(pairwise_quantile(d, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(pairwise_quantile(d, 0.5), 2.0);
    EXPECT_DOUBLE_EQ(pairwise_quantile(d, 0.75), 2.5);
    EXPECT_DOUBLE_EQ(pairwise_quantile(d, 1.0), 3.0);
    EXPECT_EQ(pairwise_quantile(from_points({1.0}), 0.05), 0.0);
}

TEST(CentralDensity, WorkedExample) {
    // d(0,1)=0.2, d(0,2)=0.3, d(1,2)=0.5 at epsilon 0.4: counts (2, 1, 1)
    auto d = DistanceMatrix::from_condensed(3, {0.2, 0.3, 0.5});
    auto c = neighbor_counts(d, 0.4);
    EXPECT_EQ(c, (std::vector<std::size_t>{2, 1, 1}));
    EXPECT_EQ(central_density(d, 0.4), 0u);
}

TEST(CentralDensity, SingleSampleAndTies) {
    EXPECT_EQ(central_density(DistanceMatrix::from_condensed(1, {}), 0.1), 0u);
    auto d = from_points({0.0, 5.0, 10.0});
    EXPECT_EQ(central_density(d, 1.0), 0u);
}

TEST(CentralDensity, PermutationInvariant) {
    Rng rng(92);
    std::vector<double> p;
    for (int i = 0; i < 60; ++i) p.push_back(rng.normal());
    p.push_back(0.001);  // make the densest point unique in practice
    auto d = from_points(p);
    const double eps = default_epsilon(d);
    const std::size_t c = central_density(d, eps);
    std::vector<std::size_t> perm(p.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::reverse(perm.begin(), perm.end());
    std::vector<double> q;
    for (auto i : perm) q.push_back(p[i]);
    auto dq = from_points(q);
    const std::size_t cq = central_density(dq, eps);
    auto counts = neighbor_counts(d, eps);
    auto counts_q = neighbor_counts(dq, eps);
    EXPECT_EQ(counts[c], counts_q[cq]);
}

TEST(CredibleRegion, ContainsTargetAndIsMinimal) {
    Rng rng(93);
    std::vector<double> p;
    for (int i = 0; i < 200; ++i) p.push_back(rng.normal());
    auto d = from_points(p);
    const double zeta = 1e-3;
    const std::size_t c = central_density(d, default_epsilon(d));
    auto cr = credible_region(d, c, 0.95, zeta);
    EXPECT_GE(cr.probability, 0.95);
    auto count_within = [&](double r) {
        std::size_t n = 0;
        for (std::size_t i = 0; i < p.size(); ++i) n += d(c, i) <= r ? 1 : 0;
        return n;
    };
    EXPECT_EQ(count_within(cr.radius), cr.members.size());
    EXPECT_LT(static_cast<double>(count_within(cr.radius - zeta)) / 200.0, 0.95);
    const double steps = cr.radius / zeta;
    EXPECT_NEAR(steps, std::round(steps), 1e-6);
}

TEST(CredibleRegion, IdenticalSamples) {
    auto d = from_points(std::vector<double>(20, 1.5));
    auto cr = credible_region(d, 0, 0.95, 1e-5);
    EXPECT_EQ(cr.radius, 0.0);
    EXPECT_EQ(cr.members.size(), 20u);
}

TEST(Hpd, SingleModeMatchesCredibleRegion) {
    Rng rng(94);
    std::vector<double> p;
    for (int i = 0; i < 150; ++i) p.push_back(rng.normal());
    auto d = from_points(p);
    const std::size_t c = central_density(d, default_epsilon(d));
    auto cr = credible_region(d, c, 0.9, 1e-3);
    auto hpd = hpd_region(d, {c}, 0.9, 1e-3);
    ASSERT_EQ(hpd.size(), 1u);
    EXPECT_NEAR(hpd[0].radius, cr.radius, 1e-9);
    EXPECT_EQ(hpd[0].members, cr.members);
}

TEST(Hpd, TwoClustersCoverage) {
    Rng rng(95);
    auto p = two_clusters(100, rng);
    auto d = from_points(p);
    auto hpd = hpd_region(d, {0, 100}, 0.95, 1e-3);
    ASSERT_EQ(hpd.size(), 2u);
    const double u = union_probability(d, hpd);
    EXPECT_GE(u, 0.95);
    EXPECT_LE(u, 0.95 + 2.0 / 200.0 + 1e-12);
    // Each ball stays inside its own cluster.
    EXPECT_LT(hpd[0].radius, 5.0);
    EXPECT_LT(hpd[1].radius, 5.0);
    // Union probability counts each sample once.
    std::vector<CredibleRegion> doubled = {hpd[0], hpd[0]};
    EXPECT_DOUBLE_EQ(union_probability(d, doubled), hpd[0].probability);
}

TEST(LocalModes, UnimodalAndBimodal) {
    Rng rng(96);
    std::vector<double> one;
    for (int i = 0; i < 200; ++i) one.push_back(0.1 * rng.normal());
    auto d1 = from_points(one);
    EXPECT_EQ(find_local_modes(d1, 1.0, 0.05).size(), 1u);

    auto two = two_clusters(100, rng);
    auto d2 = from_points(two);
    auto modes = find_local_modes(d2, 1.0, 0.05);
    ASSERT_EQ(modes.size(), 2u);
    EXPECT_GE(d2(modes[0], modes[1]), 1.0);
    EXPECT_NE(modes[0] < 100, modes[1] < 100);
}

TEST(Convergence, IncrementMinimalAndSufficient) {
    Rng rng(97);
    std::vector<double> p;
    for (int i = 0; i < 40; ++i) p.push_back(rng.normal());
    auto d = from_points(p);
    std::vector<std::size_t> members = {3, 7, 11, 19, 25};
    const double r = 0.2;
    const double eta = containment_increment(d, 0, r, members);
    double far = 0.0;
    for (auto m : members) {
        EXPECT_LE(d(0, m), r + eta);
        far = std::max(far, d(0, m));
    }
    EXPECT_GE(eta, 0.0);
    if (eta > 0.0) EXPECT_GT(far, r + std::nextafter(eta, 0.0));
    EXPECT_EQ(containment_increment(d, 0, 100.0, members), 0.0);
}

TEST(Convergence, IdenticalHalves) {
    std::vector<double> half = {0.0, 0.1, 0.2, 0.3, 0.15, 0.05};
    std::vector<double> p = half;
    p.insert(p.end(), half.begin(), half.end());
    auto rep = convergence_diagnostic(from_points(p), 2, 0.95, 1e-5);
    EXPECT_EQ(rep.part_size, 6u);
    EXPECT_EQ(rep.eta1, 0.0);
    EXPECT_EQ(rep.eta2, 0.0);
    EXPECT_EQ(rep.centers[1], rep.centers[0] + 6);
}

TEST(Convergence, SeparatedHalvesDetected) {
    std::vector<double> p;
    for (int i = 0; i < 10; ++i) p.push_back(0.01 * i);
    for (int i = 0; i < 10; ++i) p.push_back(5.0 + 0.01 * i);
    auto rep = convergence_diagnostic(from_points(p), 2, 0.95, 1e-5);
    EXPECT_GT(rep.eta1, 4.5);
    EXPECT_GT(rep.eta2, 4.5);
    EXPECT_THROW(convergence_diagnostic(from_points(p), 1), DomainError);
    EXPECT_THROW(convergence_diagnostic(from_points({1.0, 2.0, 3.0}), 2), DomainError);
}

TEST(Autocorrelation, WhiteNoise) {
    Rng rng(98);
    std::vector<double> k(100000);
    for (auto& v : k) v = static_cast<double>(1 + rng.index(5));
    auto a = k_autocorrelation(k, 10);
    EXPECT_FALSE(a.degenerate);
    ASSERT_EQ(a.acf.size(), 10u);
    EXPECT_LT(std::fabs(a.acf[0]), 0.02);
}

TEST(Autocorrelation, ConstantIsDegenerate) {
    std::vector<double> k(100, 3.0);
    auto a = k_autocorrelation(k, 5);
    EXPECT_TRUE(a.degenerate);
    for (double v : a.acf) EXPECT_TRUE(std::isfinite(v));
    EXPECT_THROW(k_autocorrelation(std::vector<double>(5, 1.0), 5), DomainError);
}

TEST(Autocorrelation, Ar1Lag1) {
    Rng rng(99);
    std::vector<double> x(200000);
    x[0] = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) x[i] = 0.6 * x[i - 1] + rng.normal();
    auto a = k_autocorrelation(x, 2);
    EXPECT_NEAR(a.acf[0], 0.6, 0.01);
    EXPECT_NEAR(a.acf[1], 0.36, 0.01);
}
