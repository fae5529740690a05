#include "ttmcmc/state.hpp"

#include <cmath>

namespace ttmcmc {

void ParamState::check_blocks() const {
    for (const auto& b : blocks)
        if (b.size() != dim()) throw BlockMismatch("blocks of unequal dimension");
}

ChainPoint make_point(ParamState x, const TargetModel& target) {
    ChainPoint p{std::move(x), 0.0};
    p.log_target = target.log_density(p.x);
    if (!std::isfinite(p.log_target)) throw InvalidState("initial state has non-finite log target");
    return p;
}

}  // namespace ttmcmc
