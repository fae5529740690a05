#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ttmcmc/rng.hpp"
#include "ttmcmc/transform.hpp"

namespace ttmcmc {

enum class MoveType { birth, death, no_change };

std::string to_string(MoveType t);

struct MoveTriple {
    double birth = 0.0;
    double death = 0.0;
    double no_change = 1.0;
};

// Move-type probabilities for every dimension k in [1, k_max].
class MoveWeights {
public:
    MoveWeights() = default;
    explicit MoveWeights(std::vector<MoveTriple> per_k, std::size_t jump = 1);

    // Interior weights everywhere; unavailable moves at the boundary hand their mass to no-change.
    static MoveWeights with_interior(std::size_t k_max, MoveTriple interior, std::size_t jump = 1);
    static MoveWeights equal(std::size_t k_max, std::size_t jump = 1);

    std::size_t k_max() const { return per_k_.size(); }
    std::size_t jump() const { return jump_; }
    const MoveTriple& at(std::size_t k) const;
    double birth(std::size_t k) const { return at(k).birth; }
    double death(std::size_t k) const { return at(k).death; }
    double no_change(std::size_t k) const { return at(k).no_change; }

    bool birth_available(std::size_t k) const;
    bool death_available(std::size_t k) const;

private:
    void validate() const;
    std::vector<MoveTriple> per_k_;
    std::size_t jump_ = 1;
};

MoveType draw_move_type(std::size_t k, const MoveWeights& weights, Rng& rng);

struct MoveSpec {
    MoveType type = MoveType::no_change;
    std::size_t jump = 1;
    std::vector<std::size_t> j;
    std::vector<std::size_t> j_prime;
    std::vector<DirectionVector> z;  // one per block
    std::vector<double> epsilons;
    std::vector<double> eps_star;
    double log_jacobian = 0.0;
    double log_accept_ratio = 0.0;
};

// Falling factorial (a)_r.
double falling_factorial(double a, std::size_t r);

}  // namespace ttmcmc
