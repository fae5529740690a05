#include "ttmcmc/rjmcmc.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace ttmcmc {

namespace {

constexpr double neg_inf = -std::numeric_limits<double>::infinity();

void require_finite(const ChainPoint& p) {
    if (!std::isfinite(p.log_target)) throw InvalidState("current state has non-finite log target");
}

void check_walk(const RjDraw& d, std::size_t nb, std::size_t per_block) {
    if (d.walk.size() != nb || d.signs.size() != nb) throw BlockMismatch("expected walk innovations per block");
    for (std::size_t b = 0; b < nb; ++b)
        if (d.walk[b].size() != per_block || d.signs[b].size() != per_block)
            throw std::invalid_argument("walk innovations must cover " + std::to_string(per_block) + " coordinates");
}

double step_of(const RjDraw& d, std::size_t b, std::size_t n, double a) {
    return d.signs[b][n] * a * d.walk[b][n];
}

void draw_walk(RjDraw& d, const RjKernel& kernel, std::size_t nb, std::size_t per_block, Rng& rng) {
    d.walk.assign(nb, std::vector<double>(per_block));
    d.signs.assign(nb, std::vector<std::int8_t>(per_block));
    for (std::size_t b = 0; b < nb; ++b)
        for (std::size_t n = 0; n < per_block; ++n) {
            d.walk[b][n] = kernel.innovation.draw(rng);
            d.signs[b][n] = rng.coin() ? 1 : -1;
        }
}

RjStepResult finish(const ChainPoint& cur, RjProposal prop, Rng& rng) {
    RjStepResult r;
    r.accepted = accept(prop.spec.log_accept_ratio, rng);
    r.spec = std::move(prop.spec);
    r.point = r.accepted ? std::move(prop.point) : cur;
    return r;
}

RjMoveSpec base_spec(MoveType t, const RjDraw& d) {
    RjMoveSpec s;
    s.type = t;
    s.j = d.j;
    s.j_prime = d.j_prime;
    s.walk = d.walk;
    s.signs = d.signs;
    return s;
}

}  // namespace

RjKernel RjKernel::from(const Kernel& kernel, std::size_t num_blocks) {
    RjKernel rj;
    rj.target = kernel.target;
    rj.weights = kernel.weights;
    rj.innovation = kernel.innovation;
    for (std::size_t b = 0; b < num_blocks; ++b) rj.scales.push_back(kernel.family(b).scale(0));
    return rj;
}

std::size_t RjMoveSpec::walk_count() const {
    std::size_t n = 0;
    for (const auto& w : walk) n += w.size();
    return n;
}

RjProposal evaluate_rj_birth(const ChainPoint& cur, const RjKernel& kernel, const RjDraw& draw) {
    const ParamState& x = cur.x;
    x.check_blocks();
    const std::size_t nb = x.num_blocks();
    const std::size_t k = x.dim();
    if (draw.j >= k) throw DimensionError("split index outside the state");
    if (draw.split.size() != nb) throw BlockMismatch("expected one split innovation per block");
    check_walk(draw, nb, k - 1);
    if (k + 1 > kernel.weights.k_max()) throw MoveUnavailable("birth would exceed k_max");
    const double wb = kernel.weights.birth(k);
    if (!(wb > 0.0)) throw MoveUnavailable("birth has zero weight at k=" + std::to_string(k));
    const double wd = kernel.weights.death(k + 1);

    RjProposal p;
    p.spec = base_spec(MoveType::birth, draw);
    p.spec.split = draw.split;
    p.point.x.blocks.resize(nb);
    for (std::size_t b = 0; b < nb; ++b) {
        const double a = kernel.scale(b);
        auto& ob = p.point.x.blocks[b];
        ob.reserve(k + 1);
        std::size_t n = 0;
        for (std::size_t i = 0; i < k; ++i) {
            const double xi = x.blocks[b][i];
            if (i == draw.j) {
                ob.push_back(xi + a * draw.split[b]);
                ob.push_back(xi - a * draw.split[b]);
            } else {
                ob.push_back(xi + step_of(draw, b, n++, a));
            }
        }
        p.spec.log_jacobian += std::log(2.0 * a);
        p.spec.log_proposal_density += kernel.innovation.log_density(draw.split[b]);
    }
    p.point.log_target = kernel.target->log_density(p.point.x);
    if (!std::isfinite(p.point.log_target)) {
        p.spec.log_accept_ratio = neg_inf;
        return p;
    }
    const double prefactor = -std::log(static_cast<double>(k + 1)) + std::log(wd) - std::log(wb);
    const double base = prefactor + (p.point.log_target - cur.log_target) + p.spec.log_jacobian;
    p.spec.log_accept_ratio = base - p.spec.log_proposal_density;
    return p;
}

RjProposal evaluate_rj_death(const ChainPoint& cur, const RjKernel& kernel, const RjDraw& draw) {
    const ParamState& x = cur.x;
    x.check_blocks();
    const std::size_t nb = x.num_blocks();
    const std::size_t k = x.dim();
    if (draw.j >= k || draw.j_prime >= k || draw.j == draw.j_prime)
        throw std::invalid_argument("death needs two distinct indices inside the state");
    if (k < 2) throw MoveUnavailable("death needs k > 1");
    check_walk(draw, nb, k - 2);
    const double wd = kernel.weights.death(k);
    if (!(wd > 0.0)) throw MoveUnavailable("death has zero weight at k=" + std::to_string(k));
    const double wb = kernel.weights.birth(k - 1);

    RjProposal p;
    p.spec = base_spec(MoveType::death, draw);
    p.spec.split.resize(nb);
    p.point.x.blocks.resize(nb);
    for (std::size_t b = 0; b < nb; ++b) {
        const double a = kernel.scale(b);
        const double xj = x.blocks[b][draw.j];
        const double xjp = x.blocks[b][draw.j_prime];
        auto& ob = p.point.x.blocks[b];
        ob.reserve(k - 1);
        std::size_t n = 0;
        for (std::size_t i = 0; i < k; ++i) {
            if (i == draw.j) ob.push_back((xj + xjp) / 2.0);
            else if (i != draw.j_prime) ob.push_back(x.blocks[b][i] + step_of(draw, b, n++, a));
        }
        p.spec.split[b] = (xj - xjp) / (2.0 * a);
        p.spec.log_jacobian -= std::log(2.0 * a);
        p.spec.log_proposal_density += kernel.innovation.log_density(p.spec.split[b]);
    }
    p.point.log_target = kernel.target->log_density(p.point.x);
    if (!std::isfinite(p.point.log_target) || !std::isfinite(p.spec.log_proposal_density)) {
        p.spec.log_accept_ratio = neg_inf;
        return p;
    }
    const double prefactor = std::log(static_cast<double>(k)) + std::log(wb) - std::log(wd);
    const double base = prefactor + (p.point.log_target - cur.log_target) + p.spec.log_jacobian;
    p.spec.log_accept_ratio = base + p.spec.log_proposal_density;
    return p;
}

RjProposal evaluate_rj_no_change(const ChainPoint& cur, const RjKernel& kernel, const RjDraw& draw) {
    const ParamState& x = cur.x;
    x.check_blocks();
    const std::size_t nb = x.num_blocks();
    const std::size_t k = x.dim();
    check_walk(draw, nb, k);
    RjProposal p;
    p.spec = base_spec(MoveType::no_change, draw);
    p.point.x = x;
    for (std::size_t b = 0; b < nb; ++b)
        for (std::size_t i = 0; i < k; ++i) p.point.x.blocks[b][i] += step_of(draw, b, i, kernel.scale(b));
    p.point.log_target = kernel.target->log_density(p.point.x);
    p.spec.log_accept_ratio =
        std::isfinite(p.point.log_target) ? p.point.log_target - cur.log_target : neg_inf;
    return p;
}

RjStepResult rj_birth(const ChainPoint& cur, const RjKernel& kernel, Rng& rng) {
    require_finite(cur);
    const std::size_t nb = cur.x.num_blocks();
    const std::size_t k = cur.x.dim();
    if (k + 1 > kernel.weights.k_max()) throw MoveUnavailable("birth would exceed k_max");
    RjDraw d;
    d.j = rng.index(k);
    d.split.resize(nb);
    for (auto& u : d.split) u = kernel.innovation.draw(rng);
    draw_walk(d, kernel, nb, k - 1, rng);
    return finish(cur, evaluate_rj_birth(cur, kernel, d), rng);
}

RjStepResult rj_death(const ChainPoint& cur, const RjKernel& kernel, Rng& rng) {
    require_finite(cur);
    const std::size_t nb = cur.x.num_blocks();
    const std::size_t k = cur.x.dim();
    if (k < 2) throw MoveUnavailable("death needs k > 1");
    RjDraw d;
    d.j = rng.index(k);
    d.j_prime = rng.index(k - 1);
    if (d.j_prime >= d.j) ++d.j_prime;
    draw_walk(d, kernel, nb, k - 2, rng);
    return finish(cur, evaluate_rj_death(cur, kernel, d), rng);
}

RjStepResult rj_no_change(const ChainPoint& cur, const RjKernel& kernel, Rng& rng) {
    require_finite(cur);
    RjDraw d;
    draw_walk(d, kernel, cur.x.num_blocks(), cur.x.dim(), rng);
    return finish(cur, evaluate_rj_no_change(cur, kernel, d), rng);
}

RjStepResult rj_step(const ChainPoint& cur, const RjKernel& kernel, Rng& rng) {
    switch (draw_move_type(cur.x.dim(), kernel.weights, rng)) {
    case MoveType::birth: return rj_birth(cur, kernel, rng);
    case MoveType::death: return rj_death(cur, kernel, rng);
    case MoveType::no_change: break;
    }
    return rj_no_change(cur, kernel, rng);
}

}  // namespace ttmcmc
