#include <cmath>

#include <gtest/gtest.h>

#include "support.hpp"
#include "ttmcmc/chain.hpp"

using namespace ttmcmc;
using namespace ttmcmc::testing;

namespace {

// -inf whenever a coordinate is negative.
class HalfLineTarget : public TargetModel {
public:
    double log_density(const ParamState& x) const override {
        for (const auto& b : x.blocks)
            for (double v : b)
                if (v < 0.0) return -INFINITY;
        return 0.0;
    }
    std::size_t num_blocks() const override { return 1; }
    std::size_t k_max() const override { return 10; }
};

}  // namespace

TEST(Birth, ProposalMatchesWorkedExample) {
    FlatTarget target;
    Kernel kernel = additive_kernel(target, {TransformFamily::additive({0.5, 0.7})});
    const ChainPoint cur = make_point(ParamState::single({1.0, 2.0}), target);
    BirthDraw d{{0}, {0.3}, {full_direction({1}, {1})}};
    const Proposal p = evaluate_birth(cur, kernel, d, kernel.probs);
    ASSERT_EQ(p.point.x.blocks[0].size(), 3u);
    EXPECT_DOUBLE_EQ(p.point.x.blocks[0][0], 1.0 + 0.5 * 0.3);
    EXPECT_DOUBLE_EQ(p.point.x.blocks[0][1], 1.0 - 0.5 * 0.3);
    EXPECT_DOUBLE_EQ(p.point.x.blocks[0][2], 2.0 + 0.7 * 0.3);
    EXPECT_EQ(p.spec.log_jacobian, 0.0);  // |J_b| = 2 * 0.5
    EXPECT_EQ(p.spec.type, MoveType::birth);
}

TEST(Death, JacobianAndEpsStar) {
    FlatTarget target;
    Kernel kernel = additive_kernel(target, {TransformFamily::additive(0.5)});
    const ChainPoint cur = make_point(ParamState::single({1.0, 2.0, 0.4}), target);
    DeathDraw d{{0}, {2}, {0.3}, {full_direction({-1}, {1})}};
    const Proposal p = evaluate_death(cur, kernel, d, kernel.probs);
    EXPECT_EQ(p.spec.log_jacobian, 0.0);  // |J_d| = 1 / (2 * 0.5)
    ASSERT_EQ(p.point.x.blocks[0].size(), 2u);
    EXPECT_DOUBLE_EQ(p.point.x.blocks[0][0], ((1.0 - 0.15) + (0.4 + 0.15)) / 2.0);
    EXPECT_DOUBLE_EQ(p.point.x.blocks[0][1], 2.0 - 0.15);
    EXPECT_DOUBLE_EQ(p.spec.eps_star[0], (1.0 - 0.4) / (2.0 * 0.5));
}

TEST(Death, RestoresPreBirthState) {
    Rng rng(21);
    NormalTarget target;
    for (int n = 0; n < 1000; ++n) {
        const std::size_t k = 1 + rng.index(8);
        const double a = 0.1 + rng.uniform();
        Kernel kernel = additive_kernel(target, {TransformFamily::additive(a)});
        std::vector<double> x(k);
        for (auto& v : x) v = 4.0 * rng.normal();
        const std::size_t j = rng.index(k);
        const double eps = 0.01 + std::fabs(rng.normal());
        DirectionVector z = direction_except(k, {j}, rng);
        const ChainPoint cur = make_point(ParamState::single(x), target);
        const Proposal b = evaluate_birth(cur, kernel, BirthDraw{{j}, {eps}, {z}}, kernel.probs);

        DirectionVector zc = z.conjugate();
        for (auto& c : zc.coords)
            if (c > j) ++c;
        const Proposal d =
            evaluate_death(make_point(b.point.x, target), kernel, DeathDraw{{j}, {j + 1}, {eps}, {zc}}, kernel.probs);
        ASSERT_EQ(d.point.x.blocks[0].size(), k);
        for (std::size_t i = 0; i < k; ++i) EXPECT_NEAR(d.point.x.blocks[0][i], x[i], 1e-12 * std::max(1.0, std::fabs(x[i])));
        EXPECT_NEAR(d.spec.eps_star[0], eps, 1e-12 * std::max(1.0, eps / a));
        EXPECT_NEAR(b.spec.log_jacobian + d.spec.log_jacobian, 0.0, 1e-12);
    }
}

TEST(Related, RoundTripAcrossBlocks) {
    Rng rng(22);
    NormalTarget target(30, 3);
    Kernel kernel = additive_kernel(target, {TransformFamily::additive(0.3), TransformFamily::additive(0.7),
                                             TransformFamily::additive(1.1)});
    for (int n = 0; n < 200; ++n) {
        const std::size_t k = 1 + rng.index(6);
        ParamState x;
        for (int b = 0; b < 3; ++b) {
            std::vector<double> v(k);
            for (auto& e : v) e = 2.0 * rng.normal();
            x.blocks.push_back(v);
        }
        const std::size_t j = rng.index(k);
        std::vector<double> eps = {0.2 + rng.uniform(), 0.2 + rng.uniform(), 0.2 + rng.uniform()};
        std::vector<DirectionVector> z, zc;
        for (int b = 0; b < 3; ++b) {
            z.push_back(direction_except(k, {j}, rng));
            DirectionVector c = z.back().conjugate();
            for (auto& i : c.coords)
                if (i > j) ++i;
            zc.push_back(c);
        }
        const Proposal b = evaluate_birth(make_point(x, target), kernel, BirthDraw{{j}, eps, z}, kernel.probs);
        EXPECT_EQ(b.point.x.dim(), k + 1);
        const Proposal d =
            evaluate_death(make_point(b.point.x, target), kernel, DeathDraw{{j}, {j + 1}, eps, zc}, kernel.probs);
        for (int bl = 0; bl < 3; ++bl)
            for (std::size_t i = 0; i < k; ++i) EXPECT_NEAR(d.point.x.blocks[bl][i], x.blocks[bl][i], 1e-12);
    }
}

TEST(Related, JacobianValues) {
    FlatTarget t3(30, 3);
    Kernel k3 = additive_kernel(t3, {TransformFamily::additive(0.05), TransformFamily::additive(0.05),
                                     TransformFamily::additive(0.05)});
    ParamState x({{1.0, 2.0}, {0.0, 0.5}, {0.1, 0.2}});
    std::vector<DirectionVector> z(3, full_direction({1}, {1}));
    const Proposal p = evaluate_birth(make_point(x, t3), k3, BirthDraw{{0}, {0.1, 0.2, 0.3}, z}, k3.probs);
    EXPECT_NEAR(std::exp(p.spec.log_jacobian), 1e-3, 1e-15);

    FlatTarget t2(30, 2);
    Kernel k2 = additive_kernel(t2, {TransformFamily::additive(1.0), TransformFamily::additive(1.0)});
    ParamState y({{1.0, 2.0}, {0.0, 0.5}});
    std::vector<DirectionVector> z2(2, full_direction({-1}, {0}));
    const Proposal q = evaluate_birth(make_point(y, t2), k2, BirthDraw{{1}, {0.1, 0.2}, z2}, k2.probs);
    EXPECT_NEAR(std::exp(q.spec.log_jacobian), 4.0, 1e-14);
    // prefactor 1/(k+1) with equal interior weights and a flat target
    EXPECT_NEAR(q.spec.log_accept_ratio, -std::log(3.0) + std::log(4.0), 1e-14);
}

TEST(Related, BlockMismatch) {
    FlatTarget t(30, 2);
    Kernel k = additive_kernel(t, {TransformFamily::additive(1.0), TransformFamily::additive(1.0)});
    ChainPoint cur{ParamState({{1.0, 2.0}, {0.0}}), 0.0};
    Rng rng(1);
    EXPECT_THROW(birth_step_related(cur, k, rng), BlockMismatch);
}

TEST(JumpM, PrefactorAndJacobian) {
    FlatTarget target;
    Kernel kernel = additive_kernel(target, {TransformFamily::additive(1.0)});
    const ChainPoint cur = make_point(ParamState::single({0.1, 0.2, 0.3}), target);
    const Proposal p = evaluate_birth(cur, kernel, BirthDraw{{0, 2}, {0.5, 0.7}, {full_direction({1}, {1})}}, kernel.probs);
    EXPECT_NEAR(std::exp(p.spec.log_jacobian), 4.0, 1e-14);
    // 1/((3+2)(3+1)) = 1/20; equal interior weights at k=3 and k=5
    EXPECT_NEAR(p.spec.log_accept_ratio, -std::log(20.0) + std::log(4.0), 1e-14);
    EXPECT_EQ(p.point.x.dim(), 5u);

    const Proposal d = evaluate_death(make_point(p.point.x, target), kernel,
                                      DeathDraw{{0, 3}, {1, 4}, {0.5, 0.7}, {full_direction({-1}, {2})}}, kernel.probs);
    EXPECT_NEAR(d.spec.log_accept_ratio, std::log(20.0) - std::log(4.0), 1e-14);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(d.point.x.blocks[0][i], cur.x.blocks[0][i], 1e-15);
}

TEST(JumpM, SizeErrors) {
    FlatTarget target;
    Kernel kernel = additive_kernel(target, {TransformFamily::additive(1.0)});
    const ChainPoint cur = make_point(ParamState::single({0.1, 0.2, 0.3}), target);
    Rng rng(2);
    EXPECT_THROW(birth_step_m(cur, kernel, 4, rng), JumpSizeError);
    EXPECT_THROW(death_step_m(cur, kernel, 2, rng), JumpSizeError);
    EXPECT_THROW(birth_step_m(cur, kernel, 0, rng), JumpSizeError);
}

TEST(JumpM, OneMatchesBasicStep) {
    NormalTarget target;
    Kernel kernel = additive_kernel(target, {TransformFamily::additive(0.8)});
    const ChainPoint cur = make_point(ParamState::single({0.1, -0.4, 1.3}), target);
    for (std::uint64_t s = 0; s < 50; ++s) {
        Rng r1(s), r2(s);
        const auto a = birth_step(cur, kernel, r1);
        const auto b = birth_step_m(cur, kernel, 1, r2);
        EXPECT_EQ(a.spec.log_accept_ratio, b.spec.log_accept_ratio);
        EXPECT_EQ(a.point.x, b.point.x);
        Rng r3(s), r4(s);
        const auto c = death_step(cur, kernel, r3);
        const auto d = death_step_m(cur, kernel, 1, r4);
        EXPECT_EQ(c.spec.log_accept_ratio, d.spec.log_accept_ratio);
        EXPECT_EQ(c.point.x, d.point.x);
    }
}

TEST(Boundary, UnavailableMoves) {
    ToyTarget target;
    Kernel kernel = additive_kernel(target, {TransformFamily::additive(1.0)});
    Rng rng(3);
    EXPECT_THROW(birth_step(make_point(ParamState::single({0.0, 0.1, 0.2}), target), kernel, rng), MoveUnavailable);
    EXPECT_THROW(death_step(make_point(ParamState::single({0.0}), target), kernel, rng), MoveUnavailable);
}

TEST(Boundary, ChainStaysInSupport) {
    ToyTarget target;
    Kernel kernel = additive_kernel(target, {TransformFamily::additive(1.0)});
    Rng rng(4);
    ChainPoint cur = make_point(ParamState::single({0.0}), target);
    for (int i = 0; i < 100000; ++i) {
        cur = ttmcmc_step(cur, kernel, rng).point;
        ASSERT_GE(cur.x.dim(), 1u);
        ASSERT_LE(cur.x.dim(), 3u);
    }
}

TEST(Acceptance, IndependentOfInnovationDensity) {
    Rng rng(31);
    NormalTarget target(30, 3);
    Kernel tn = additive_kernel(target, {TransformFamily::additive(0.4), TransformFamily::additive(0.6),
                                         TransformFamily::additive(0.9)});
    Kernel ex = tn;
    ex.innovation = InnovationProposal::exponential(1.0);
    for (int n = 0; n < 200; ++n) {
        const std::size_t k = 2 + rng.index(5);
        ParamState x;
        for (int b = 0; b < 3; ++b) {
            std::vector<double> v(k);
            for (auto& e : v) e = rng.normal();
            x.blocks.push_back(v);
        }
        const ChainPoint cur = make_point(x, target);
        const std::size_t j = rng.index(k);
        std::size_t jp = rng.index(k - 1);
        if (jp >= j) ++jp;
        std::vector<double> eps = {0.3 + rng.uniform(), 0.3 + rng.uniform(), 0.3 + rng.uniform()};
        std::vector<DirectionVector> zb, zd;
        for (int b = 0; b < 3; ++b) {
            zb.push_back(direction_except(k, {j}, rng));
            zd.push_back(direction_except(k, {j, jp}, rng));
        }
        EXPECT_EQ(evaluate_birth(cur, tn, BirthDraw{{j}, eps, zb}, tn.probs).spec.log_accept_ratio,
                  evaluate_birth(cur, ex, BirthDraw{{j}, eps, zb}, ex.probs).spec.log_accept_ratio);
        EXPECT_EQ(evaluate_death(cur, tn, DeathDraw{{j}, {jp}, eps, zd}, tn.probs).spec.log_accept_ratio,
                  evaluate_death(cur, ex, DeathDraw{{j}, {jp}, eps, zd}, ex.probs).spec.log_accept_ratio);
        std::vector<DirectionVector> zn;
        for (int b = 0; b < 3; ++b) zn.push_back(direction_except(k, {}, rng));
        EXPECT_EQ(evaluate_no_change(cur, tn, eps[0], zn, tn.probs).spec.log_accept_ratio,
                  evaluate_no_change(cur, ex, eps[0], zn, ex.probs).spec.log_accept_ratio);
    }
}

TEST(NoChange, EqualProbsReduceToTargetRatio) {
    NormalTarget target;
    Kernel kernel = additive_kernel(target, {TransformFamily::additive(0.5)});
    const ChainPoint cur = make_point(ParamState::single({0.2, -0.3}), target);
    const Proposal p = evaluate_no_change(cur, kernel, 0.4, {full_direction({1, -1}, {0, 1})}, kernel.probs);
    EXPECT_DOUBLE_EQ(p.spec.log_accept_ratio, p.point.log_target - cur.log_target);
    EXPECT_EQ(p.spec.log_jacobian, 0.0);
}

TEST(NoChange, ZeroScaleIsIdentity) {
    NormalTarget target;
    Kernel kernel = additive_kernel(target, {TransformFamily::additive(0.0)});
    ChainPoint cur = make_point(ParamState::single({0.2, -0.3, 1.0}), target);
    Rng rng(5);
    for (int i = 0; i < 1000; ++i) {
        const auto r = tmcmc_step(cur, kernel, rng);
        EXPECT_TRUE(r.accepted);
        EXPECT_EQ(r.point.x, cur.x);
    }
}

TEST(NoChange, MultiplicativeJacobian) {
    FlatTarget target;
    Kernel kernel = additive_kernel(target, {TransformFamily::multiplicative()});
    kernel.innovation = InnovationProposal::uniform_signed();
    const ChainPoint cur = make_point(ParamState::single({2.0, 3.0, 4.0}), target);
    const Proposal p = evaluate_no_change(cur, kernel, 0.5, {full_direction({1, 1, -1}, {0, 1, 2})}, kernel.probs);
    EXPECT_NEAR(p.spec.log_jacobian, std::log(0.5), 1e-15);
    EXPECT_DOUBLE_EQ(p.point.x.blocks[0][2], 8.0);
}

TEST(Errors, NonFiniteStates) {
    HalfLineTarget target;
    Kernel kernel = additive_kernel(target, {TransformFamily::additive(1.0)});
    ChainPoint bad{ParamState::single({-1.0}), -INFINITY};
    Rng rng(6);
    EXPECT_THROW(ttmcmc_step(bad, kernel, rng), InvalidState);
    EXPECT_THROW(make_point(ParamState::single({-1.0}), target), InvalidState);
    const ChainPoint cur = make_point(ParamState::single({0.1, 0.2}), target);
    const Proposal p = evaluate_no_change(cur, kernel, 0.5, {full_direction({-1, 1}, {0, 1})}, kernel.probs);
    EXPECT_EQ(p.spec.log_accept_ratio, -INFINITY);
    EXPECT_FALSE(accept(p.spec.log_accept_ratio, rng));
}

TEST(Accept, ConsumesOneUniform) {
    Rng a(9), b(9);
    accept(INFINITY, a);
    b.uniform_open();
    EXPECT_EQ(a.uniform(), b.uniform());
}

TEST(Tmcmc, StandardNormalMean) {
    NormalTarget target(1);
    Kernel kernel = additive_kernel(target, {TransformFamily::additive(2.4)});
    Rng rng(41);
    ChainPoint cur = make_point(ParamState::single({0.0}), target);
    std::vector<double> xs;
    xs.reserve(1000000);
    for (int i = 0; i < 1000000; ++i) {
        cur = tmcmc_step(cur, kernel, rng).point;
        xs.push_back(cur.x.blocks[0][0]);
    }
    double m = 0.0;
    for (double v : xs) m += v;
    m /= static_cast<double>(xs.size());
    const double se = batch_means_se(xs);

    // Reference: textbook random-walk Metropolis with N(0, 2.4^2) increments.
    Rng ref(42);
    double y = 0.0, sy = 0.0;
    std::vector<double> ys;
    ys.reserve(1000000);
    for (int i = 0; i < 1000000; ++i) {
        const double prop = y + 2.4 * ref.normal();
        if (std::log(ref.uniform_open()) < 0.5 * (y * y - prop * prop)) y = prop;
        ys.push_back(y);
        sy += y;
    }
    const double ref_mean = sy / 1e6;
    const double ref_se = batch_means_se(ys);
    EXPECT_LT(std::fabs(m), 3.0 * se);
    EXPECT_LT(std::fabs(ref_mean), 3.0 * ref_se);
    EXPECT_LT(std::fabs(m - ref_mean), 3.0 * std::hypot(se, ref_se));
}
