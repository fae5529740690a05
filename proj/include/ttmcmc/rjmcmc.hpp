#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ttmcmc/kernel.hpp"

namespace ttmcmc {

// Random-walk reversible jump: every coordinate gets its own innovation and a split draws
// one dimension-matching innovation u per block whose density enters the ratio.
struct RjKernel {
    const TargetModel* target = nullptr;
    std::vector<double> scales;  // one per block
    MoveWeights weights;
    InnovationProposal innovation = InnovationProposal::truncated_normal();

    static RjKernel from(const Kernel& kernel, std::size_t num_blocks);
    double scale(std::size_t block) const { return scales.size() == 1 ? scales.front() : scales.at(block); }
};

struct RjMoveSpec {
    MoveType type = MoveType::no_change;
    std::size_t j = 0;
    std::size_t j_prime = 0;
    std::vector<std::vector<double>> walk;          // per block, per updated coordinate
    std::vector<std::vector<std::int8_t>> signs;    // matching walk
    std::vector<double> split;                      // u per block; reconstructed for death
    double log_proposal_density = 0.0;              // sum of log rho(u)
    double log_jacobian = 0.0;
    double log_accept_ratio = 0.0;

    std::size_t walk_count() const;
};

struct RjDraw {
    std::size_t j = 0;
    std::size_t j_prime = 0;
    std::vector<double> split;                      // birth only
    std::vector<std::vector<double>> walk;          // per block, coordinates in increasing order
    std::vector<std::vector<std::int8_t>> signs;
};

struct RjProposal {
    ChainPoint point;
    RjMoveSpec spec;
};

struct RjStepResult {
    ChainPoint point;
    RjMoveSpec spec;
    bool accepted = false;
};

RjProposal evaluate_rj_birth(const ChainPoint& cur, const RjKernel& kernel, const RjDraw& draw);
RjProposal evaluate_rj_death(const ChainPoint& cur, const RjKernel& kernel, const RjDraw& draw);
RjProposal evaluate_rj_no_change(const ChainPoint& cur, const RjKernel& kernel, const RjDraw& draw);

RjStepResult rj_birth(const ChainPoint& cur, const RjKernel& kernel, Rng& rng);
RjStepResult rj_death(const ChainPoint& cur, const RjKernel& kernel, Rng& rng);
RjStepResult rj_no_change(const ChainPoint& cur, const RjKernel& kernel, Rng& rng);
RjStepResult rj_step(const ChainPoint& cur, const RjKernel& kernel, Rng& rng);

}  // namespace ttmcmc
