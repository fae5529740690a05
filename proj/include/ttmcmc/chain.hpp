#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "ttmcmc/kernel.hpp"

namespace ttmcmc {

enum class SamplerKind { ttmcmc, rjmcmc, tmcmc_fixed };

std::string to_string(SamplerKind s);
SamplerKind parse_sampler(const std::string& s);

struct ChainConfig {
    std::size_t iterations = 1'800'000;  // total, burn-in included
    std::size_t burn_in = 300'000;
    std::size_t thin = 150;
    SamplerKind sampler = SamplerKind::ttmcmc;

    void validate() const;
    // Post-burn-in stride; a partial last stride is dropped.
    std::size_t stored_count() const { return (iterations - burn_in) / thin; }
};

struct MoveCounts {
    std::size_t proposed = 0;
    std::size_t accepted = 0;
    double rate() const { return proposed == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(proposed); }
};

// Post-burn-in proposal and acceptance counts.
struct RunStats {
    std::array<MoveCounts, 3> by_type{};  // indexed by MoveType
    MoveCounts overall;

    void record(MoveType t, bool accepted);
    const MoveCounts& of(MoveType t) const { return by_type[static_cast<std::size_t>(t)]; }
};

struct StoredSample {
    std::size_t iteration = 0;
    ParamState x;
    double log_target = 0.0;
};

struct TraceRow {
    std::size_t iteration = 0;
    std::size_t k = 0;
    MoveType move = MoveType::no_change;
    bool accepted = false;
    double log_target = 0.0;
};

struct ChainOutput {
    std::vector<StoredSample> samples;
    RunStats stats;
    ChainPoint last;
};

using TraceSink = std::function<void(const TraceRow&)>;

// Iterations are numbered from 1; trace rows are emitted for every post-burn-in iteration.
ChainOutput run_chain(const ChainPoint& init, const Kernel& kernel, const ChainConfig& config, Rng& rng,
                      const TraceSink& sink = {});

}  // namespace ttmcmc
