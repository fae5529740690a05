#include "ttmcmc/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace ttmcmc {

namespace {

constexpr double neg_inf = -std::numeric_limits<double>::infinity();

void require_additive(const std::vector<TransformFamily>& families) {
    for (const auto& f : families)
        if (f.kind != TransformKind::additive)
            throw std::invalid_argument("trans-dimensional moves support the additive family only");
}

void require_finite(const ChainPoint& p) {
    if (!std::isfinite(p.log_target)) throw InvalidState("current state has non-finite log target");
}

void require_block_count(const ParamState& x, const std::vector<TransformFamily>& families,
                         const std::vector<DirectionVector>& z) {
    x.check_blocks();
    if (families.size() != x.num_blocks())
        throw BlockMismatch("expected " + std::to_string(x.num_blocks()) + " transform families");
    if (z.size() != x.num_blocks()) throw BlockMismatch("expected one direction vector per block");
}

// Direction entry for coordinate i; z lists coordinates in increasing order.
int next_direction(const DirectionVector& z, std::size_t& cursor, std::size_t i) {
    if (cursor >= z.coords.size() || z.coords[cursor] != i)
        throw std::invalid_argument("direction vector does not cover coordinate " + std::to_string(i));
    return z.entries[cursor++];
}

DirectionProbs step_probs(const Kernel& kernel, std::size_t k, Rng& rng) {
    return kernel.probs_source ? kernel.probs_source(k, rng) : kernel.probs;
}

std::vector<std::size_t> draw_distinct(std::size_t n, std::size_t count, Rng& rng) {
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i;
    std::vector<std::size_t> out;
    out.reserve(count);
    for (std::size_t c = 0; c < count; ++c) {
        std::size_t pick = rng.index(pool.size());
        out.push_back(pool[pick]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    return out;
}

std::vector<double> draw_innovations(const Kernel& kernel, std::size_t count, Rng& rng) {
    std::vector<double> eps(count);
    for (auto& e : eps) {
        e = kernel.innovation.draw(rng);
        if (!kernel.families.front().in_support(e))
            throw std::invalid_argument("innovation proposal draws outside the transform support");
    }
    return eps;
}

void check_distinct(const std::vector<std::size_t>& idx, std::size_t k) {
    for (std::size_t a = 0; a < idx.size(); ++a) {
        if (idx[a] >= k) throw DimensionError("selected index outside the state");
        for (std::size_t b = a + 1; b < idx.size(); ++b)
            if (idx[a] == idx[b]) throw std::invalid_argument("selected indices must be distinct");
    }
}

double z_ratio(const std::vector<DirectionVector>& z, const DirectionProbs& probs) {
    double r = 0.0;
    for (const auto& zb : z) r += log_conjugate_ratio(zb, probs);
    return r;
}

StepResult finish(const ChainPoint& cur, Proposal prop, Rng& rng) {
    StepResult r;
    r.accepted = accept(prop.spec.log_accept_ratio, rng);
    r.spec = std::move(prop.spec);
    r.point = r.accepted ? std::move(prop.point) : cur;
    return r;
}

}  // namespace

const TransformFamily& Kernel::family(std::size_t block) const {
    return families.size() == 1 ? families.front() : families.at(block);
}

ParamState birth_map(const ParamState& x, const std::vector<Split>& splits, const std::vector<double>& eps,
                     const std::vector<DirectionVector>& z, const std::vector<TransformFamily>& families) {
    require_block_count(x, families, z);
    ParamState out;
    out.blocks.resize(x.num_blocks());
    for (std::size_t b = 0; b < x.num_blocks(); ++b) {
        const auto& xb = x.blocks[b];
        const auto& fam = families[b];
        auto& ob = out.blocks[b];
        ob.reserve(xb.size() + splits.size());
        std::size_t cursor = 0;
        for (std::size_t i = 0; i < xb.size(); ++i) {
            auto s = std::find_if(splits.begin(), splits.end(),
                                  [&](const Split& sp) { return sp.block == b && sp.j == i; });
            if (s != splits.end()) {
                double e = eps.at(s->eps);
                ob.push_back(fam.forward(xb[i], e, i));
                ob.push_back(fam.backward(xb[i], e, i));
            } else {
                ob.push_back(fam.apply(xb[i], next_direction(z[b], cursor, i), eps.at(0), i));
            }
        }
        if (cursor != z[b].size()) throw std::invalid_argument("direction vector covers a split coordinate");
    }
    return out;
}

DeathImage death_map(const ParamState& x, const std::vector<Merge>& merges, const std::vector<double>& eps,
                     const std::vector<DirectionVector>& z, const std::vector<TransformFamily>& families) {
    require_block_count(x, families, z);
    DeathImage img;
    img.x.blocks.resize(x.num_blocks());
    img.eps_star.resize(merges.size());
    for (std::size_t b = 0; b < x.num_blocks(); ++b) {
        const auto& xb = x.blocks[b];
        const auto& fam = families[b];
        auto& ob = img.x.blocks[b];
        std::size_t cursor = 0;
        for (std::size_t i = 0; i < xb.size(); ++i) {
            auto mj = std::find_if(merges.begin(), merges.end(),
                                   [&](const Merge& mg) { return mg.block == b && mg.j == i; });
            if (mj != merges.end()) {
                double e = eps.at(mj->eps);
                double xj = xb.at(mj->j);
                double xjp = xb.at(mj->j_prime);
                ob.push_back((fam.backward(xj, e, mj->j) + fam.forward(xjp, e, mj->j_prime)) / 2.0);
                img.eps_star[static_cast<std::size_t>(mj - merges.begin())] = (xj - xjp) / (2.0 * fam.scale(mj->j));
                continue;
            }
            bool removed = std::any_of(merges.begin(), merges.end(),
                                       [&](const Merge& mg) { return mg.block == b && mg.j_prime == i; });
            if (removed) continue;
            ob.push_back(fam.apply(xb[i], next_direction(z[b], cursor, i), eps.at(0), i));
        }
        if (cursor != z[b].size()) throw std::invalid_argument("direction vector covers a merged coordinate");
    }
    return img;
}

ParamState no_change_map(const ParamState& x, double eps, const std::vector<DirectionVector>& z,
                         const std::vector<TransformFamily>& families) {
    require_block_count(x, families, z);
    ParamState out = x;
    for (std::size_t b = 0; b < x.num_blocks(); ++b) {
        std::size_t cursor = 0;
        for (std::size_t i = 0; i < x.blocks[b].size(); ++i)
            out.blocks[b][i] = families[b].apply(x.blocks[b][i], next_direction(z[b], cursor, i), eps, i);
    }
    return out;
}

namespace {

std::vector<TransformFamily> block_families(const Kernel& kernel, std::size_t nb) {
    std::vector<TransformFamily> f;
    f.reserve(nb);
    for (std::size_t b = 0; b < nb; ++b) f.push_back(kernel.family(b));
    return f;
}

}  // namespace

Proposal evaluate_birth(const ChainPoint& cur, const Kernel& kernel, const BirthDraw& draw,
                        const DirectionProbs& probs) {
    const ParamState& x = cur.x;
    x.check_blocks();
    const std::size_t nb = x.num_blocks();
    const std::size_t k = x.dim();
    auto families = block_families(kernel, nb);
    require_additive(families);

    const bool related = nb > 1;
    std::vector<Split> splits;
    std::size_t m = 0;
    if (related) {
        if (draw.j.size() != 1 || draw.eps.size() != nb)
            throw std::invalid_argument("related birth needs one index and one innovation per block");
        m = 1;
        for (std::size_t b = 0; b < nb; ++b) splits.push_back({b, draw.j[0], b});
    } else {
        m = draw.j.size();
        if (m < 1 || draw.eps.size() != m) throw JumpSizeError("birth needs m >= 1 indices and m innovations");
        for (std::size_t l = 0; l < m; ++l) splits.push_back({0, draw.j[l], l});
    }
    check_distinct(draw.j, k);
    if (k + m > kernel.k_max()) throw MoveUnavailable("birth would exceed k_max");
    const double wb = kernel.weights.birth(k);
    if (!(wb > 0.0)) throw MoveUnavailable("birth has zero weight at k=" + std::to_string(k));
    const double wd = kernel.weights.death(k + m);

    Proposal p;
    MoveSpec& spec = p.spec;
    spec.type = MoveType::birth;
    spec.jump = m;
    spec.j = draw.j;
    spec.z = draw.z;
    spec.epsilons = draw.eps;
    for (const auto& s : splits) spec.log_jacobian += std::log(2.0 * families[s.block].scale(s.j));

    p.point.x = birth_map(x, splits, draw.eps, draw.z, families);
    p.point.log_target = kernel.target->log_density(p.point.x);

    const double prefactor = -std::log(falling_factorial(static_cast<double>(k + m), m)) + std::log(wd) - std::log(wb);
    spec.log_accept_ratio = std::isfinite(p.point.log_target)
                                ? prefactor + z_ratio(draw.z, probs) + (p.point.log_target - cur.log_target) +
                                      spec.log_jacobian
                                : neg_inf;
    return p;
}

Proposal evaluate_death(const ChainPoint& cur, const Kernel& kernel, const DeathDraw& draw,
                        const DirectionProbs& probs) {
    const ParamState& x = cur.x;
    x.check_blocks();
    const std::size_t nb = x.num_blocks();
    const std::size_t k = x.dim();
    auto families = block_families(kernel, nb);
    require_additive(families);

    const bool related = nb > 1;
    std::vector<Merge> merges;
    std::size_t m = 0;
    if (related) {
        if (draw.j.size() != 1 || draw.j_prime.size() != 1 || draw.eps.size() != nb)
            throw std::invalid_argument("related death needs one index pair and one innovation per block");
        m = 1;
        for (std::size_t b = 0; b < nb; ++b) merges.push_back({b, draw.j[0], draw.j_prime[0], b});
    } else {
        m = draw.j.size();
        if (m < 1 || draw.j_prime.size() != m || draw.eps.size() != m)
            throw JumpSizeError("death needs m index pairs and m innovations");
        for (std::size_t l = 0; l < m; ++l) merges.push_back({0, draw.j[l], draw.j_prime[l], l});
    }
    std::vector<std::size_t> all = draw.j;
    all.insert(all.end(), draw.j_prime.begin(), draw.j_prime.end());
    check_distinct(all, k);
    const double wd = kernel.weights.death(k);
    if (!(wd > 0.0)) throw MoveUnavailable("death has zero weight at k=" + std::to_string(k));
    const double wb = kernel.weights.birth(k - m);

    Proposal p;
    MoveSpec& spec = p.spec;
    spec.type = MoveType::death;
    spec.jump = m;
    spec.j = draw.j;
    spec.j_prime = draw.j_prime;
    spec.z = draw.z;
    spec.epsilons = draw.eps;
    for (const auto& mg : merges) spec.log_jacobian -= std::log(2.0 * families[mg.block].scale(mg.j));

    DeathImage img = death_map(x, merges, draw.eps, draw.z, families);
    spec.eps_star = std::move(img.eps_star);
    p.point.x = std::move(img.x);
    p.point.log_target = kernel.target->log_density(p.point.x);

    const double prefactor = std::log(falling_factorial(static_cast<double>(k), m)) + std::log(wb) - std::log(wd);
    spec.log_accept_ratio = std::isfinite(p.point.log_target)
                                ? prefactor + z_ratio(draw.z, probs) + (p.point.log_target - cur.log_target) +
                                      spec.log_jacobian
                                : neg_inf;
    return p;
}

Proposal evaluate_no_change(const ChainPoint& cur, const Kernel& kernel, double eps,
                            const std::vector<DirectionVector>& z, const DirectionProbs& probs) {
    const std::size_t nb = cur.x.num_blocks();
    auto families = block_families(kernel, nb);
    Proposal p;
    MoveSpec& spec = p.spec;
    spec.type = MoveType::no_change;
    spec.jump = 0;
    spec.z = z;
    spec.epsilons = {eps};
    for (std::size_t b = 0; b < nb; ++b)
        if (families[b].kind == TransformKind::multiplicative) spec.log_jacobian += z[b].sum() * std::log(std::fabs(eps));

    p.point.x = no_change_map(cur.x, eps, z, families);
    p.point.log_target = kernel.target->log_density(p.point.x);
    spec.log_accept_ratio = std::isfinite(p.point.log_target)
                                ? z_ratio(z, probs) + (p.point.log_target - cur.log_target) + spec.log_jacobian
                                : neg_inf;
    return p;
}

bool accept(double log_accept_ratio, Rng& rng) {
    double u = rng.uniform_open();
    return std::log(u) < log_accept_ratio;
}

StepResult tmcmc_step(const ChainPoint& cur, const Kernel& kernel, Rng& rng) {
    require_finite(cur);
    cur.x.check_blocks();
    const std::size_t nb = cur.x.num_blocks();
    const std::size_t k = cur.x.dim();
    for (std::size_t b = 1; b < nb; ++b)
        if (kernel.family(b).kind != kernel.family(0).kind) throw std::invalid_argument("mixed transform kinds");
    DirectionProbs probs = step_probs(kernel, k, rng);
    double eps = kernel.innovation.draw(rng);
    if (!kernel.family(0).in_support(eps)) throw std::invalid_argument("innovation outside the transform support");
    std::vector<DirectionVector> z(nb);
    bool all_zero = true;
    do {
        all_zero = true;
        for (std::size_t b = 0; b < nb; ++b) {
            z[b] = simulate_direction(k, {}, probs, false, rng);
            all_zero = all_zero && z[b].all_zero();
        }
    } while (all_zero && k > 0);
    return finish(cur, evaluate_no_change(cur, kernel, eps, z, probs), rng);
}

StepResult birth_step(const ChainPoint& cur, const Kernel& kernel, Rng& rng) {
    return birth_step_m(cur, kernel, 1, rng);
}

StepResult death_step(const ChainPoint& cur, const Kernel& kernel, Rng& rng) {
    return death_step_m(cur, kernel, 1, rng);
}

StepResult birth_step_m(const ChainPoint& cur, const Kernel& kernel, std::size_t m, Rng& rng) {
    require_finite(cur);
    if (cur.x.num_blocks() != 1) throw BlockMismatch("birth_step_m acts on a single block");
    const std::size_t k = cur.x.dim();
    if (m < 1 || m > k) throw JumpSizeError("birth needs 1 <= m <= k");
    if (k + m > kernel.k_max()) throw MoveUnavailable("birth would exceed k_max");
    DirectionProbs probs = step_probs(kernel, k, rng);
    BirthDraw d;
    d.j = draw_distinct(k, m, rng);
    d.eps = draw_innovations(kernel, m, rng);
    d.z = {simulate_direction(k, d.j, probs, false, rng)};
    return finish(cur, evaluate_birth(cur, kernel, d, probs), rng);
}

StepResult death_step_m(const ChainPoint& cur, const Kernel& kernel, std::size_t m, Rng& rng) {
    require_finite(cur);
    if (cur.x.num_blocks() != 1) throw BlockMismatch("death_step_m acts on a single block");
    const std::size_t k = cur.x.dim();
    if (m < 1) throw JumpSizeError("death needs m >= 1");
    if (k < 2 * m) {
        if (m == 1) throw MoveUnavailable("death needs k > 1");
        throw JumpSizeError("death needs k >= 2m");
    }
    DirectionProbs probs = step_probs(kernel, k, rng);
    DeathDraw d;
    d.eps = draw_innovations(kernel, m, rng);
    auto idx = draw_distinct(k, 2 * m, rng);
    d.j.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(m));
    d.j_prime.assign(idx.begin() + static_cast<std::ptrdiff_t>(m), idx.end());
    d.z = {simulate_direction(k, idx, probs, false, rng)};
    return finish(cur, evaluate_death(cur, kernel, d, probs), rng);
}

StepResult birth_step_related(const ChainPoint& cur, const Kernel& kernel, Rng& rng) {
    require_finite(cur);
    cur.x.check_blocks();
    const std::size_t nb = cur.x.num_blocks();
    const std::size_t k = cur.x.dim();
    if (k + 1 > kernel.k_max()) throw MoveUnavailable("birth would exceed k_max");
    DirectionProbs probs = step_probs(kernel, k, rng);
    BirthDraw d;
    d.j = {rng.index(k)};
    d.eps = draw_innovations(kernel, nb, rng);
    for (std::size_t b = 0; b < nb; ++b) d.z.push_back(simulate_direction(k, d.j, probs, false, rng));
    return finish(cur, evaluate_birth(cur, kernel, d, probs), rng);
}

StepResult death_step_related(const ChainPoint& cur, const Kernel& kernel, Rng& rng) {
    require_finite(cur);
    cur.x.check_blocks();
    const std::size_t nb = cur.x.num_blocks();
    const std::size_t k = cur.x.dim();
    if (k < 2) throw MoveUnavailable("death needs k > 1");
    DirectionProbs probs = step_probs(kernel, k, rng);
    DeathDraw d;
    d.eps = draw_innovations(kernel, nb, rng);
    auto idx = draw_distinct(k, 2, rng);
    d.j = {idx[0]};
    d.j_prime = {idx[1]};
    for (std::size_t b = 0; b < nb; ++b) d.z.push_back(simulate_direction(k, idx, probs, false, rng));
    return finish(cur, evaluate_death(cur, kernel, d, probs), rng);
}

StepResult ttmcmc_step(const ChainPoint& cur, const Kernel& kernel, Rng& rng) {
    const std::size_t k = cur.x.dim();
    const bool related = cur.x.num_blocks() > 1;
    switch (draw_move_type(k, kernel.weights, rng)) {
    case MoveType::birth:
        return related ? birth_step_related(cur, kernel, rng) : birth_step_m(cur, kernel, kernel.weights.jump(), rng);
    case MoveType::death:
        return related ? death_step_related(cur, kernel, rng) : death_step_m(cur, kernel, kernel.weights.jump(), rng);
    case MoveType::no_change:
        break;
    }
    return tmcmc_step(cur, kernel, rng);
}

}  // namespace ttmcmc
