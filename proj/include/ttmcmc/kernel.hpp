#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "ttmcmc/moves.hpp"
#include "ttmcmc/rng.hpp"
#include "ttmcmc/state.hpp"
#include "ttmcmc/transform.hpp"

namespace ttmcmc {

// Everything a TTMCMC step needs besides the current point and the random stream.
struct Kernel {
    const TargetModel* target = nullptr;
    std::vector<TransformFamily> families;  // one per block
    MoveWeights weights;
    DirectionProbs probs;
    InnovationProposal innovation = InnovationProposal::truncated_normal();
    // When set, replaces `probs` with a fresh draw at every step (structured moves).
    std::function<DirectionProbs(std::size_t k, Rng&)> probs_source;

    const TransformFamily& family(std::size_t block) const;
    std::size_t k_max() const { return weights.k_max(); }
};

// Coordinate j of `block` splits into (T(x_j, eps[eps]), T^b(x_j, eps[eps])) at positions j, j+1.
struct Split {
    std::size_t block = 0;
    std::size_t j = 0;
    std::size_t eps = 0;
};

// Coordinates j, j' of `block` merge into (T^b(x_j, e) + T(x_j', e)) / 2 at j; j' is removed.
struct Merge {
    std::size_t block = 0;
    std::size_t j = 0;
    std::size_t j_prime = 0;
    std::size_t eps = 0;
};

// Non-split coordinates of block b move with eps[0] in the direction z[b].
ParamState birth_map(const ParamState& x, const std::vector<Split>& splits, const std::vector<double>& eps,
                     const std::vector<DirectionVector>& z, const std::vector<TransformFamily>& families);

struct DeathImage {
    ParamState x;
    std::vector<double> eps_star;  // one per merge
};

DeathImage death_map(const ParamState& x, const std::vector<Merge>& merges, const std::vector<double>& eps,
                     const std::vector<DirectionVector>& z, const std::vector<TransformFamily>& families);

ParamState no_change_map(const ParamState& x, double eps, const std::vector<DirectionVector>& z,
                         const std::vector<TransformFamily>& families);

// Explicit random inputs of a move. For one block, j holds m split indices and eps has m entries.
// For m related blocks, j holds one shared index and eps has one entry per block.
struct BirthDraw {
    std::vector<std::size_t> j;
    std::vector<double> eps;
    std::vector<DirectionVector> z;
};

struct DeathDraw {
    std::vector<std::size_t> j;
    std::vector<std::size_t> j_prime;
    std::vector<double> eps;
    std::vector<DirectionVector> z;
};

struct Proposal {
    ChainPoint point;
    MoveSpec spec;
};

struct StepResult {
    ChainPoint point;
    MoveSpec spec;
    bool accepted = false;
};

Proposal evaluate_birth(const ChainPoint& cur, const Kernel& kernel, const BirthDraw& draw,
                        const DirectionProbs& probs);
Proposal evaluate_death(const ChainPoint& cur, const Kernel& kernel, const DeathDraw& draw,
                        const DirectionProbs& probs);
Proposal evaluate_no_change(const ChainPoint& cur, const Kernel& kernel, double eps,
                            const std::vector<DirectionVector>& z, const DirectionProbs& probs);

// Metropolis-Hastings decision in log space; always consumes one uniform.
bool accept(double log_accept_ratio, Rng& rng);

StepResult tmcmc_step(const ChainPoint& cur, const Kernel& kernel, Rng& rng);
StepResult birth_step(const ChainPoint& cur, const Kernel& kernel, Rng& rng);
StepResult death_step(const ChainPoint& cur, const Kernel& kernel, Rng& rng);
StepResult birth_step_m(const ChainPoint& cur, const Kernel& kernel, std::size_t m, Rng& rng);
StepResult death_step_m(const ChainPoint& cur, const Kernel& kernel, std::size_t m, Rng& rng);
StepResult birth_step_related(const ChainPoint& cur, const Kernel& kernel, Rng& rng);
StepResult death_step_related(const ChainPoint& cur, const Kernel& kernel, Rng& rng);

// Draws the move type and dispatches; single-block kernels jump by weights.jump().
StepResult ttmcmc_step(const ChainPoint& cur, const Kernel& kernel, Rng& rng);

}  // namespace ttmcmc
