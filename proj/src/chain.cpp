#include "ttmcmc/chain.hpp"

#include <stdexcept>

#include "ttmcmc/rjmcmc.hpp"

namespace ttmcmc {

std::string to_string(SamplerKind s) {
    switch (s) {
    case SamplerKind::ttmcmc: return "ttmcmc";
    case SamplerKind::rjmcmc: return "rjmcmc";
    case SamplerKind::tmcmc_fixed: return "tmcmc-fixed-k";
    }
    return "?";
}

SamplerKind parse_sampler(const std::string& s) {
    if (s == "ttmcmc") return SamplerKind::ttmcmc;
    if (s == "rjmcmc") return SamplerKind::rjmcmc;
    if (s == "tmcmc-fixed-k" || s == "tmcmc") return SamplerKind::tmcmc_fixed;
    throw std::invalid_argument("unknown sampler '" + s + "' (expected ttmcmc, rjmcmc or tmcmc-fixed-k)");
}

void ChainConfig::validate() const {
    if (thin < 1) throw std::invalid_argument("thin must be >= 1");
    if (burn_in >= iterations) throw std::invalid_argument("burn-in must be smaller than iterations");
}

void RunStats::record(MoveType t, bool accepted) {
    auto& c = by_type[static_cast<std::size_t>(t)];
    ++c.proposed;
    ++overall.proposed;
    if (accepted) {
        ++c.accepted;
        ++overall.accepted;
    }
}

ChainOutput run_chain(const ChainPoint& init, const Kernel& kernel, const ChainConfig& config, Rng& rng,
                      const TraceSink& sink) {
    config.validate();
    if (kernel.target == nullptr) throw std::invalid_argument("kernel has no target");
    ChainOutput out;
    out.samples.reserve(config.stored_count());
    ChainPoint cur = make_point(init.x, *kernel.target);
    RjKernel rj;
    if (config.sampler == SamplerKind::rjmcmc) rj = RjKernel::from(kernel, cur.x.num_blocks());

    for (std::size_t it = 1; it <= config.iterations; ++it) {
        MoveType type;
        bool accepted;
        switch (config.sampler) {
        case SamplerKind::ttmcmc: {
            StepResult r = ttmcmc_step(cur, kernel, rng);
            type = r.spec.type;
            accepted = r.accepted;
            if (accepted) cur = std::move(r.point);
            break;
        }
        case SamplerKind::rjmcmc: {
            RjStepResult r = rj_step(cur, rj, rng);
            type = r.spec.type;
            accepted = r.accepted;
            if (accepted) cur = std::move(r.point);
            break;
        }
        default: {
            StepResult r = tmcmc_step(cur, kernel, rng);
            type = r.spec.type;
            accepted = r.accepted;
            if (accepted) cur = std::move(r.point);
            break;
        }
        }
        if (it <= config.burn_in) continue;
        out.stats.record(type, accepted);
        if (sink) sink(TraceRow{it, cur.x.dim(), type, accepted, cur.log_target});
        if ((it - config.burn_in) % config.thin == 0) out.samples.push_back({it, cur.x, cur.log_target});
    }
    out.last = std::move(cur);
    return out;
}

}  // namespace ttmcmc
