#include "obf/rng.hpp"

#include <cmath>
#include <numbers>

#include "obf/core.hpp"
#include "obf/specialfn.hpp"

namespace obf {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t substream(std::uint64_t master_seed, std::uint64_t index, std::uint64_t stream) {
    return splitmix64(master_seed ^ splitmix64(index + stream * 0x9E3779B97F4A7C15ULL));
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::uniform_open() {
    double u;
    do {
        u = uniform();
    } while (u == 0.0);
    return u;
}

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) fail(ErrorKind::DomainViolation, "below() needs a positive bound");
    std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % bound;
}

double Rng::exponential(double rate) {
    if (!(rate > 0.0)) fail(ErrorKind::DomainViolation, "exponential rate must be positive");
    return -std::log(uniform_open()) / rate;
}

double Rng::normal(double mean, double sd) {
    if (!(sd > 0.0)) fail(ErrorKind::DomainViolation, "normal sd must be positive");
    if (has_spare_) {
        has_spare_ = false;
        return mean + sd * spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return mean + sd * u * f;
}

std::uint64_t Rng::poisson(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) fail(ErrorKind::DomainViolation, "Poisson mean must be positive");
    if (lambda < 30.0) {
        // Sequential inversion.
        double u = uniform();
        double p = std::exp(-lambda);
        double cdf = p;
        std::uint64_t k = 0;
        while (u > cdf) {
            ++k;
            p *= lambda / static_cast<double>(k);
            cdf += p;
            if (p == 0.0 && cdf < u) break;
        }
        return k;
    }
    // Transformed rejection with squeeze (Hormann 1993).
    double slam = std::sqrt(lambda);
    double loglam = std::log(lambda);
    double b = 0.931 + 2.53 * slam;
    double a = -0.059 + 0.02483 * b;
    double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    double vr = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
        double u = uniform() - 0.5;
        double v = uniform();
        double us = 0.5 - std::abs(u);
        double k = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
        if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(k);
        if (k < 0.0 || (us < 0.013 && v > us)) continue;
        if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
            -lambda + k * loglam - ln_gamma(k + 1.0)) {
            return static_cast<std::uint64_t>(k);
        }
    }
}

std::uint64_t Rng::geometric(double prob) {
    if (!(prob > 0.0 && prob <= 1.0)) fail(ErrorKind::DomainViolation, "geometric probability must be in (0,1]");
    if (prob == 1.0) return 0;
    return static_cast<std::uint64_t>(std::floor(std::log(uniform_open()) / std::log1p(-prob)));
}

}  // namespace obf
