#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "obf/core.hpp"
#include "obf/normal.hpp"

namespace obf {

inline constexpr double max_count = 1e6;

struct CountStats {
    std::size_t n = 0;
    double s = 0.0;
    double log_prod_fact = 0.0;
    double y_min = 0.0;
    double y_max = 0.0;

    static CountStats from(const Sample& sample);
};

// Throws DomainViolation unless every value is an integer in [0, max_count].
void require_counts(const Sample& sample);

// Poisson (Jeffreys lambda^-1/2) against Geometric (Jeffreys theta^-1 (1-theta)^-1/2).
LogValue pg_bf01_full(const CountStats& stats);
// Per-training-point kernel 1/Gamma(y + 3/2) used by the bounds.
LogValue pg_mts_bf01(double y_ell);
// Exact single-observation marginal ratio Gamma(y + 3/2) / Gamma(y + 1); the n = 1 case of pg_bf01_full.
LogValue pg_single_bf01(double y_ell);

FamilyBounds pg_bounds(const Sample& sample);

// Poisson against Negative Binomial(r) with prior r^1/2 theta^-1/2 (1-theta)^-1.
// Needs the individual counts for the product of (y_i + r - 1)! / (r - 1)!.
LogValue pnb_bf10_full(const Sample& sample, int r);
// log of Gamma(r+y+1/2) Gamma(y+1/2) / (Gamma(y+r) Gamma(y)), y >= 1.
double pnb_mts_ratio_log(double y, int r);
// Exact single-observation B01, y >= 1.
LogValue pnb_single_bf01(double y, int r);

struct PnbBounds {
    BoundReport theoretical_lower01;
    BoundPair empirical;
    BoundReport aibf10;
};

PnbBounds pnb_bounds(const Sample& sample, int r);

Sample cox_dataset();

// Theoretical Upper10 of every prefix; the sample is shuffled first when a seed is given.
std::vector<BoundReport> cox_sequential(const Sample& sample, std::optional<std::uint64_t> shuffle_seed = std::nullopt);

}  // namespace obf
