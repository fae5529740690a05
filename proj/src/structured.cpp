#include "ttmcmc/structured.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ttmcmc {

namespace {

constexpr std::array<std::int8_t, 3> kLabels{1, -1, 0};

Eigen::MatrixXd psd_clip(const Eigen::MatrixXd& s) {
    Eigen::MatrixXd sym = 0.5 * (s + s.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
    Eigen::MatrixXd out = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
    return 0.5 * (out + out.transpose());
}

Eigen::MatrixXd sqrt_factor(const Eigen::MatrixXd& s) {
    if (s.rows() == 0) return s;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
    Eigen::VectorXd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * root.asDiagonal();
}

}  // namespace

StructuredMoveModel::StructuredMoveModel(std::array<Eigen::VectorXd, 3> mu, std::array<Eigen::MatrixXd, 3> sigma)
    : mu_(std::move(mu)) {
    const auto n = mu_[0].size();
    for (std::size_t c = 0; c < 3; ++c) {
        if (mu_[c].size() != n || sigma[c].rows() != n || sigma[c].cols() != n)
            throw std::invalid_argument("StructuredMoveModel: inconsistent dimensions");
        sigma_[c] = psd_clip(sigma[c]);
        factors_[c].resize(static_cast<std::size_t>(n) + 1);
        for (Eigen::Index k = 0; k <= n; ++k)
            factors_[c][static_cast<std::size_t>(k)] = sqrt_factor(sigma_[c].topLeftCorner(k, k));
    }
}

StructuredMoveModel StructuredMoveModel::estimate(const PilotTrace& pilot) {
    if (pilot.x.empty() || pilot.x.size() != pilot.z.size())
        throw std::invalid_argument("pilot trace needs matching, nonempty x and z records");
    const std::size_t T = pilot.x.size();
    const Eigen::Index K = static_cast<Eigen::Index>(pilot.x.front().size());
    Eigen::MatrixXd X(static_cast<Eigen::Index>(T), K);
    Eigen::MatrixXi Z(static_cast<Eigen::Index>(T), K);
    for (std::size_t t = 0; t < T; ++t) {
        if (pilot.x[t].size() != static_cast<std::size_t>(K) || pilot.z[t].size() != static_cast<std::size_t>(K))
            throw std::invalid_argument("pilot trace must be recorded at a fixed dimension");
        for (Eigen::Index i = 0; i < K; ++i) {
            X(static_cast<Eigen::Index>(t), i) = pilot.x[t][static_cast<std::size_t>(i)];
            Z(static_cast<Eigen::Index>(t), i) = pilot.z[t][static_cast<std::size_t>(i)];
        }
    }

    const Eigen::VectorXd mean_all = X.colwise().mean().transpose();
    Eigen::MatrixXd cov_all = Eigen::MatrixXd::Zero(K, K);
    if (T > 1) {
        Eigen::MatrixXd c = X.rowwise() - mean_all.transpose();
        cov_all = c.transpose() * c / static_cast<double>(T - 1);
    }

    std::array<Eigen::VectorXd, 3> mu;
    std::array<Eigen::MatrixXd, 3> sigma;
    std::vector<std::string> flags;
    const char* names[3] = {"forward", "backward", "stay"};
    for (std::size_t c = 0; c < 3; ++c) {
        const int label = kLabels[c];
        mu[c] = mean_all;
        sigma[c] = cov_all;
        for (Eigen::Index i = 0; i < K; ++i) {
            double s = 0.0;
            std::size_t n = 0;
            for (Eigen::Index t = 0; t < X.rows(); ++t)
                if (Z(t, i) == label) {
                    s += X(t, i);
                    ++n;
                }
            if (n == 0) flags.push_back(std::string("mean ") + names[c] + " " + std::to_string(i));
            else mu[c][i] = s / static_cast<double>(n);
        }
        for (Eigen::Index i = 0; i < K; ++i)
            for (Eigen::Index j = i; j < K; ++j) {
                double si = 0.0, sj = 0.0;
                std::size_t n = 0;
                for (Eigen::Index t = 0; t < X.rows(); ++t)
                    if (Z(t, i) == label && Z(t, j) == label) {
                        si += X(t, i);
                        sj += X(t, j);
                        ++n;
                    }
                if (n < 2) {
                    flags.push_back(std::string("cov ") + names[c] + " " + std::to_string(i) + "," + std::to_string(j));
                    continue;
                }
                const double mi = si / static_cast<double>(n);
                const double mj = sj / static_cast<double>(n);
                double acc = 0.0;
                for (Eigen::Index t = 0; t < X.rows(); ++t)
                    if (Z(t, i) == label && Z(t, j) == label) acc += (X(t, i) - mi) * (X(t, j) - mj);
                sigma[c](i, j) = sigma[c](j, i) = acc / static_cast<double>(n - 1);
            }
    }
    StructuredMoveModel model(std::move(mu), std::move(sigma));
    model.fallbacks_ = std::move(flags);
    return model;
}

std::array<double, 3> probs_from_logits(double psi_forward, double psi_backward, double psi_stay) {
    const double m = std::max({psi_forward, psi_backward, psi_stay});
    const double a = std::exp(psi_forward - m);
    const double b = std::exp(psi_backward - m);
    const double c = std::exp(psi_stay - m);
    const double s = a + b + c;
    return {a / s, b / s, c / s};
}

std::vector<CoordProbs> StructuredMoveModel::draw(std::size_t k, Rng& rng) const {
    if (k > k_max()) throw std::invalid_argument("structured model covers at most k_max coordinates");
    const auto kk = static_cast<Eigen::Index>(k);
    std::array<Eigen::VectorXd, 3> psi;
    for (std::size_t c = 0; c < 3; ++c) {
        Eigen::VectorXd n(kk);
        for (Eigen::Index i = 0; i < kk; ++i) n[i] = rng.normal();
        psi[c] = mu_[c].head(kk) + factors_[c][k] * n;
    }
    std::vector<CoordProbs> out(k);
    for (Eigen::Index i = 0; i < kk; ++i) {
        auto p = probs_from_logits(psi[0][i], psi[1][i], psi[2][i]);
        out[static_cast<std::size_t>(i)] = {p[0], p[1]};
    }
    return out;
}

std::vector<CoordProbs> structured_probs(const StructuredMoveModel& model, std::size_t k, Rng& rng) {
    return model.draw(k, rng);
}

}  // namespace ttmcmc
