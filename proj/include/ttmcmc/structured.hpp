#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ttmcmc/rng.hpp"
#include "ttmcmc/transform.hpp"

namespace ttmcmc {

// Pilot run at fixed dimension: coordinates and the direction labels that produced them.
struct PilotTrace {
    std::vector<std::vector<double>> x;
    std::vector<std::vector<std::int8_t>> z;
};

// Label j = 0, 1, 2 stands for z = +1, -1, 0. Logits psi_j ~ N(mu_j, Sigma_j);
// (p_i, q_i, 1 - p_i - q_i) = softmax(psi_0i, psi_1i, psi_2i).
class StructuredMoveModel {
public:
    StructuredMoveModel(std::array<Eigen::VectorXd, 3> mu, std::array<Eigen::MatrixXd, 3> sigma);

    static StructuredMoveModel estimate(const PilotTrace& pilot);

    std::size_t k_max() const { return static_cast<std::size_t>(mu_[0].size()); }
    const Eigen::VectorXd& mean(std::size_t label) const { return mu_.at(label); }
    const Eigen::MatrixXd& covariance(std::size_t label) const { return sigma_.at(label); }

    // Entries that fell back to the unconditional moment because their label cell was empty.
    const std::vector<std::string>& fallbacks() const { return fallbacks_; }

    std::vector<CoordProbs> draw(std::size_t k, Rng& rng) const;

private:
    std::array<Eigen::VectorXd, 3> mu_;
    std::array<Eigen::MatrixXd, 3> sigma_;
    std::vector<std::string> fallbacks_;
    std::array<std::vector<Eigen::MatrixXd>, 3> factors_;  // square roots of the leading k x k blocks
};

// Softmax across the three labels at one coordinate.
std::array<double, 3> probs_from_logits(double psi_forward, double psi_backward, double psi_stay);

std::vector<CoordProbs> structured_probs(const StructuredMoveModel& model, std::size_t k, Rng& rng);

}  // namespace ttmcmc
