#include <cmath>

#include <gtest/gtest.h>

#include "ttmcmc/structured.hpp"

using namespace ttmcmc;

TEST(Structured, ZeroModelGivesThirds) {
    std::array<Eigen::VectorXd, 3> mu{Eigen::VectorXd::Zero(4), Eigen::VectorXd::Zero(4), Eigen::VectorXd::Zero(4)};
    std::array<Eigen::MatrixXd, 3> sig{Eigen::MatrixXd::Zero(4, 4), Eigen::MatrixXd::Zero(4, 4),
                                       Eigen::MatrixXd::Zero(4, 4)};
    StructuredMoveModel m(mu, sig);
    Rng rng(1);
    auto p = m.draw(3, rng);
    ASSERT_EQ(p.size(), 3u);
    for (const auto& c : p) {
        EXPECT_NEAR(c.forward, 1.0 / 3.0, 1e-15);
        EXPECT_NEAR(c.backward, 1.0 / 3.0, 1e-15);
    }
}

TEST(Structured, SoftmaxArithmetic) {
    auto p = probs_from_logits(std::log(2.0), 0.0, 0.0);
    EXPECT_NEAR(p[0], 0.5, 1e-15);
    EXPECT_NEAR(p[1], 0.25, 1e-15);
    EXPECT_NEAR(p[2], 0.25, 1e-15);
    auto big = probs_from_logits(800.0, 0.0, -800.0);
    EXPECT_NEAR(big[0], 1.0, 1e-15);
}

TEST(Structured, ProbabilitiesSumToOne) {
    Eigen::MatrixXd s = Eigen::MatrixXd::Identity(5, 5) * 2.0;
    s(0, 1) = s(1, 0) = 0.5;
    std::array<Eigen::VectorXd, 3> mu{Eigen::VectorXd::Constant(5, 0.3), Eigen::VectorXd::Constant(5, -0.2),
                                      Eigen::VectorXd::Zero(5)};
    StructuredMoveModel m(mu, {s, s, s});
    Rng rng(2);
    for (int t = 0; t < 10000; ++t)
        for (const auto& c : m.draw(5, rng)) {
            EXPECT_GT(c.forward, 0.0);
            EXPECT_GT(c.backward, 0.0);
            EXPECT_LE(c.forward + c.backward, 1.0 + 1e-12);
        }
}

TEST(Structured, EstimateFlagsEmptyCells) {
    PilotTrace pilot;
    Rng rng(3);
    for (int t = 0; t < 200; ++t) {
        pilot.x.push_back({rng.normal(), rng.normal()});
        // coordinate 1 never gets the stay label
        pilot.z.push_back({static_cast<std::int8_t>(static_cast<int>(rng.index(3)) - 1),
                           static_cast<std::int8_t>(rng.coin() ? 1 : -1)});
    }
    auto m = StructuredMoveModel::estimate(pilot);
    EXPECT_EQ(m.k_max(), 2u);
    EXPECT_FALSE(m.fallbacks().empty());
    // estimated covariances are symmetric PSD
    for (std::size_t c = 0; c < 3; ++c) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.covariance(c));
        EXPECT_GE(es.eigenvalues().minCoeff(), -1e-12);
    }
}

TEST(Structured, EstimateRecoversLabelMeans) {
    PilotTrace pilot;
    Rng rng(4);
    for (int t = 0; t < 30000; ++t) {
        const int lab = static_cast<int>(rng.index(3));
        const double shift = lab == 0 ? 1.0 : lab == 1 ? -1.0 : 0.0;
        pilot.x.push_back({shift + 0.1 * rng.normal()});
        pilot.z.push_back({static_cast<std::int8_t>(lab == 0 ? 1 : lab == 1 ? -1 : 0)});
    }
    auto m = StructuredMoveModel::estimate(pilot);
    EXPECT_NEAR(m.mean(0)(0), 1.0, 0.01);
    EXPECT_NEAR(m.mean(1)(0), -1.0, 0.01);
    EXPECT_NEAR(m.mean(2)(0), 0.0, 0.01);
    EXPECT_NEAR(m.covariance(0)(0, 0), 0.01, 0.002);
    EXPECT_TRUE(m.fallbacks().empty());
}
