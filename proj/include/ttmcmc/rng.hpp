#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace ttmcmc {

// One independent stream per (seed, stream) pair.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    double uniform();       // [0, 1)
    double uniform_open();  // (0, 1)
    double normal();
    double exponential(double rate);
    std::size_t index(std::size_t n);  // uniform on {0, ..., n-1}
    bool coin();

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace ttmcmc
