#include "ttmcmc/rng.hpp"

#include <stdexcept>

namespace ttmcmc {

namespace {

std::seed_seq make_seed_seq(std::uint64_t seed, std::uint64_t stream) {
    return std::seed_seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                         static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
    auto seq = make_seed_seq(seed, stream);
    engine_.seed(seq);
}

double Rng::uniform() {
    return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
}

double Rng::uniform_open() {
    double u = 0.0;
    while (u == 0.0) u = uniform();
    return u;
}

double Rng::normal() {
    return normal_(engine_);
}

double Rng::exponential(double rate) {
    return std::exponential_distribution<double>(rate)(engine_);
}

std::size_t Rng::index(std::size_t n) {
    if (n == 0) throw std::invalid_argument("Rng::index: empty range");
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
}

bool Rng::coin() {
    return uniform() < 0.5;
}

}  // namespace ttmcmc
