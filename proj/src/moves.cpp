#include "ttmcmc/moves.hpp"

#include <cmath>
#include <stdexcept>

#include "ttmcmc/state.hpp"

namespace ttmcmc {

std::string to_string(MoveType t) {
    switch (t) {
    case MoveType::birth: return "birth";
    case MoveType::death: return "death";
    case MoveType::no_change: return "no_change";
    }
    return "?";
}

MoveWeights::MoveWeights(std::vector<MoveTriple> per_k, std::size_t jump) : per_k_(std::move(per_k)), jump_(jump) {
    validate();
}

MoveWeights MoveWeights::with_interior(std::size_t k_max, MoveTriple interior, std::size_t jump) {
    if (k_max < 1) throw std::invalid_argument("MoveWeights: k_max must be >= 1");
    if (jump < 1) throw JumpSizeError("MoveWeights: jump size must be >= 1");
    MoveWeights w;
    w.jump_ = jump;
    w.per_k_.resize(k_max);
    for (std::size_t k = 1; k <= k_max; ++k) {
        MoveTriple t = interior;
        if (!w.birth_available(k)) {
            t.no_change += t.birth;
            t.birth = 0.0;
        }
        if (!w.death_available(k)) {
            t.no_change += t.death;
            t.death = 0.0;
        }
        w.per_k_[k - 1] = t;
    }
    w.validate();
    return w;
}

MoveWeights MoveWeights::equal(std::size_t k_max, std::size_t jump) {
    return with_interior(k_max, {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}, jump);
}

const MoveTriple& MoveWeights::at(std::size_t k) const {
    if (k < 1 || k > per_k_.size())
        throw DimensionError("dimension " + std::to_string(k) + " outside [1, " + std::to_string(per_k_.size()) + "]");
    return per_k_[k - 1];
}

bool MoveWeights::birth_available(std::size_t k) const {
    return k >= jump_ && k + jump_ <= per_k_.size();
}

bool MoveWeights::death_available(std::size_t k) const {
    return k >= 2 * jump_;
}

void MoveWeights::validate() const {
    if (per_k_.empty()) throw std::invalid_argument("MoveWeights: empty");
    for (std::size_t k = 1; k <= per_k_.size(); ++k) {
        const auto& t = per_k_[k - 1];
        if (t.birth < 0.0 || t.death < 0.0 || t.no_change < 0.0)
            throw std::invalid_argument("MoveWeights: negative weight at k=" + std::to_string(k));
        if (std::fabs(t.birth + t.death + t.no_change - 1.0) > 1e-12)
            throw std::invalid_argument("MoveWeights: weights do not sum to 1 at k=" + std::to_string(k));
        if (t.birth > 0.0 && !birth_available(k))
            throw std::invalid_argument("MoveWeights: birth weight at k=" + std::to_string(k) + " must be 0");
        if (t.death > 0.0 && !death_available(k))
            throw std::invalid_argument("MoveWeights: death weight at k=" + std::to_string(k) + " must be 0");
    }
}

MoveType draw_move_type(std::size_t k, const MoveWeights& weights, Rng& rng) {
    const MoveTriple& t = weights.at(k);
    double u = rng.uniform();
    if (u < t.birth) return MoveType::birth;
    if (u < t.birth + t.death) return MoveType::death;
    return MoveType::no_change;
}

double falling_factorial(double a, std::size_t r) {
    double p = 1.0;
    for (std::size_t i = 0; i < r; ++i) p *= a - static_cast<double>(i);
    return p;
}

}  // namespace ttmcmc
