#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ttmcmc/rng.hpp"

namespace ttmcmc {

enum class TransformKind { additive, multiplicative };

// Additive: T(x, e) = x + a e, T^b(x, e) = x - a e, e in (0, inf).
// Multiplicative: T(x, e) = x e, T^b(x, e) = x / e, e in (-1, 1) \ {0}.
struct TransformFamily {
    TransformKind kind = TransformKind::additive;
    std::vector<double> scales{1.0};  // one entry broadcasts to every coordinate

    static TransformFamily additive(double a) { return {TransformKind::additive, {a}}; }
    static TransformFamily additive(std::vector<double> a) { return {TransformKind::additive, std::move(a)}; }
    static TransformFamily multiplicative() { return {TransformKind::multiplicative, {1.0}}; }

    double scale(std::size_t i) const { return scales.size() == 1 ? scales.front() : scales.at(i); }
    double forward(double x, double eps, std::size_t i) const;
    double backward(double x, double eps, std::size_t i) const;
    double apply(double x, int z, double eps, std::size_t i) const;
    bool in_support(double eps) const;
    void validate() const;
};

// Samplable density for the innovation e.
class InnovationProposal {
public:
    enum class Kind { truncated_normal, exponential, uniform_signed };

    static InnovationProposal truncated_normal() { return InnovationProposal(Kind::truncated_normal, 1.0); }
    static InnovationProposal exponential(double rate = 1.0) { return InnovationProposal(Kind::exponential, rate); }
    static InnovationProposal uniform_signed() { return InnovationProposal(Kind::uniform_signed, 1.0); }
    static InnovationProposal for_family(const TransformFamily& f);

    double draw(Rng& rng) const;
    double log_density(double eps) const;
    Kind kind() const { return kind_; }
    std::string name() const;

private:
    InnovationProposal(Kind kind, double rate) : kind_(kind), rate_(rate) {}
    Kind kind_;
    double rate_;
};

struct CoordProbs {
    double forward = 0.5;   // p_i
    double backward = 0.5;  // q_i
};

// Per-coordinate (p_i, q_i); a single default applies when no vector is set.
class DirectionProbs {
public:
    DirectionProbs() = default;
    explicit DirectionProbs(CoordProbs all);
    explicit DirectionProbs(std::vector<CoordProbs> per_coord);

    CoordProbs at(std::size_t i) const;
    bool uniform() const { return per_coord_.empty(); }

private:
    CoordProbs all_{};
    std::vector<CoordProbs> per_coord_;
};

void validate(CoordProbs p);

struct DirectionVector {
    std::vector<std::int8_t> entries;
    std::vector<std::size_t> coords;  // coordinate index of each entry

    DirectionVector conjugate() const;
    int sum() const;
    bool all_zero() const;
    std::size_t size() const { return entries.size(); }
    bool operator==(const DirectionVector&) const = default;
};

// Ternary draws for coordinates 0..k-1 not in `excluded`.
DirectionVector simulate_direction(std::size_t k, const std::vector<std::size_t>& excluded,
                                   const DirectionProbs& probs, bool reject_all_zero, Rng& rng);

// log P(z^c) - log P(z).
double log_conjugate_ratio(const DirectionVector& z, const DirectionProbs& probs);

}  // namespace ttmcmc
