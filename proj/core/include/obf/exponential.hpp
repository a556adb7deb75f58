#pragma once

#include <cstddef>

#include "obf/core.hpp"
#include "obf/normal.hpp"
#include "obf/prior.hpp"

namespace obf {

struct ExpStats {
    std::size_t n = 0;
    double s = 0.0;

    static ExpStats from(const Sample& sample);
};

LogValue exp_bf01_full(const ExpStats& stats, double lambda0);
LogValue exp_mts_bf01(double y_ell, double lambda0);

FamilyBounds exp_bounds(const Sample& sample, double lambda0);

LogValue exp_sp_bf10(const ExpStats& stats, double lambda0);
PriorDensity exp_sp_prior(double lambda0);

double exp_ep_prior(const Sample& sample, double lambda);
LogValue exp_ep_bf10(const Sample& sample, double lambda0);

// Empirical SP factor by posterior reuse: the alternative prior is the posterior given the
// training point that maximizes the null support, and the remaining data are integrated numerically.
LogValue exp_empirical_sp_bf10(const Sample& sample, double lambda0);

}  // namespace obf
