#pragma once

#include <cstdint>
#include <random>

namespace obf {

std::uint64_t splitmix64(std::uint64_t x);

// Counter-based child seed: the same (master, index, stream) always yields the same seed.
std::uint64_t substream(std::uint64_t master_seed, std::uint64_t index, std::uint64_t stream = 0);

// Thin wrapper over mt19937_64 with portable variate transforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    std::uint64_t next_u64() { return engine_(); }
    // Uniform on [0,1) with 53 random bits.
    double uniform();
    // Uniform on (0,1).
    double uniform_open();
    // Uniform integer on [0, bound).
    std::uint64_t below(std::uint64_t bound);

    double exponential(double rate);
    double normal(double mean, double sd);
    std::uint64_t poisson(double lambda);
    // Failures before the first success.
    std::uint64_t geometric(double prob);

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace obf
