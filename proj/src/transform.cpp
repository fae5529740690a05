#include "ttmcmc/transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace ttmcmc {

double TransformFamily::forward(double x, double eps, std::size_t i) const {
    return kind == TransformKind::additive ? x + scale(i) * eps : x * eps;
}

double TransformFamily::backward(double x, double eps, std::size_t i) const {
    return kind == TransformKind::additive ? x - scale(i) * eps : x / eps;
}

double TransformFamily::apply(double x, int z, double eps, std::size_t i) const {
    if (z > 0) return forward(x, eps, i);
    if (z < 0) return backward(x, eps, i);
    return x;
}

bool TransformFamily::in_support(double eps) const {
    if (kind == TransformKind::additive) return eps > 0.0 && std::isfinite(eps);
    return eps > -1.0 && eps < 1.0 && eps != 0.0;
}

void TransformFamily::validate() const {
    if (scales.empty()) throw std::invalid_argument("TransformFamily: no scales");
    for (double a : scales)
        if (!(a >= 0.0) || !std::isfinite(a)) throw std::invalid_argument("TransformFamily: scale must be finite and >= 0");
}

InnovationProposal InnovationProposal::for_family(const TransformFamily& f) {
    return f.kind == TransformKind::additive ? truncated_normal() : uniform_signed();
}

double InnovationProposal::draw(Rng& rng) const {
    switch (kind_) {
    case Kind::truncated_normal: {
        // |N(0,1)| is exactly N(0,1) truncated to (0, inf).
        double e = 0.0;
        while (e == 0.0) e = std::fabs(rng.normal());
        return e;
    }
    case Kind::exponential: {
        double e = 0.0;
        while (e == 0.0) e = rng.exponential(rate_);
        return e;
    }
    case Kind::uniform_signed: {
        double e = 0.0;
        while (e == 0.0) e = 2.0 * rng.uniform() - 1.0;
        return e;
    }
    }
    return 0.0;
}

double InnovationProposal::log_density(double eps) const {
    constexpr double neg_inf = -std::numeric_limits<double>::infinity();
    switch (kind_) {
    case Kind::truncated_normal:
        if (!(eps > 0.0)) return neg_inf;
        return std::log(2.0) - 0.5 * std::log(2.0 * std::numbers::pi) - 0.5 * eps * eps;
    case Kind::exponential:
        if (!(eps > 0.0)) return neg_inf;
        return std::log(rate_) - rate_ * eps;
    case Kind::uniform_signed:
        if (!(eps > -1.0 && eps < 1.0) || eps == 0.0) return neg_inf;
        return -std::log(2.0);
    }
    return neg_inf;
}

std::string InnovationProposal::name() const {
    switch (kind_) {
    case Kind::truncated_normal: return "truncated_normal";
    case Kind::exponential: return "exponential";
    case Kind::uniform_signed: return "uniform_signed";
    }
    return "?";
}

DirectionProbs::DirectionProbs(CoordProbs all) : all_(all) {
    ttmcmc::validate(all_);
}

DirectionProbs::DirectionProbs(std::vector<CoordProbs> per_coord) : per_coord_(std::move(per_coord)) {
    for (const auto& p : per_coord_) ttmcmc::validate(p);
}

CoordProbs DirectionProbs::at(std::size_t i) const {
    if (per_coord_.empty()) return all_;
    return per_coord_.at(i);
}

void validate(CoordProbs p) {
    if (!(p.forward > 0.0 && p.forward < 1.0 && p.backward > 0.0 && p.backward < 1.0) ||
        p.forward + p.backward > 1.0 + 1e-12)
        throw std::invalid_argument("direction probabilities must satisfy 0 < p, q < 1 and p + q <= 1");
}

DirectionVector DirectionVector::conjugate() const {
    DirectionVector c = *this;
    for (auto& e : c.entries) e = static_cast<std::int8_t>(-e);
    return c;
}

int DirectionVector::sum() const {
    int s = 0;
    for (auto e : entries) s += e;
    return s;
}

bool DirectionVector::all_zero() const {
    return std::all_of(entries.begin(), entries.end(), [](std::int8_t e) { return e == 0; });
}

namespace {

std::int8_t draw_ternary(CoordProbs p, Rng& rng) {
    double u = rng.uniform();
    if (u < p.forward) return 1;
    if (u < p.forward + p.backward) return -1;
    return 0;
}

}  // namespace

DirectionVector simulate_direction(std::size_t k, const std::vector<std::size_t>& excluded,
                                   const DirectionProbs& probs, bool reject_all_zero, Rng& rng) {
    DirectionVector z;
    for (std::size_t i = 0; i < k; ++i)
        if (std::find(excluded.begin(), excluded.end(), i) == excluded.end()) z.coords.push_back(i);
    z.entries.resize(z.coords.size());
    do {
        for (std::size_t n = 0; n < z.coords.size(); ++n) z.entries[n] = draw_ternary(probs.at(z.coords[n]), rng);
    } while (reject_all_zero && !z.entries.empty() && z.all_zero());
    return z;
}

double log_conjugate_ratio(const DirectionVector& z, const DirectionProbs& probs) {
    if (probs.uniform()) {
        CoordProbs p = probs.at(0);
        if (p.forward == p.backward) return 0.0;
        return -z.sum() * (std::log(p.forward) - std::log(p.backward));
    }
    double r = 0.0;
    for (std::size_t n = 0; n < z.entries.size(); ++n) {
        CoordProbs p = probs.at(z.coords[n]);
        if (z.entries[n] > 0) r += std::log(p.backward) - std::log(p.forward);
        else if (z.entries[n] < 0) r += std::log(p.forward) - std::log(p.backward);
    }
    return r;
}

}  // namespace ttmcmc
