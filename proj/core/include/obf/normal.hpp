#pragma once

#include <cstddef>

#include "obf/core.hpp"
#include "obf/prior.hpp"

namespace obf {

struct NormalScaleStats {
    std::size_t n = 0;
    double s2 = 0.0;
    double ybar = 0.0;

    static NormalScaleStats from(const Sample& sample);
};

struct PairDiff {
    double d = 0.0;
};

// Precision test h = h0 with unknown mean; independence Jeffreys prior 1/h under the alternative.
LogValue scale_bf01_full(const NormalScaleStats& stats, double h0);

// B01 of a two-point training sample: the n = 2 instance of the full-data marginal ratio.
LogValue scale_pair_bf01(PairDiff pair, double h0);

struct ScaleMtsSup {
    double d_hat = 0.0;
    // log of sqrt(h0/pi) * exp(-h0 d^2/4) * |d| at d = d_hat.
    LogValue sup_b10_mts;
    // Supremum of scale_pair_bf01 over d; attained at the same d_hat.
    LogValue pair_bf01_sup;
};

ScaleMtsSup scale_mts_sup(double h0);

double scale_eibf_ratio(double h, double h0 = 1.0);

PriorDensity scale_sp_prior(double h0);
PriorDensity scale_intrinsic_prior(double h0);
PriorDensity scale_sp_mu_prior(double h0, double center);

struct FamilyBounds {
    BoundPair theoretical;
    BoundPair empirical;
    BoundReport aibf10;
};

FamilyBounds scale_bounds(const Sample& sample, double h0);

// Mean test with known variance.
LogValue mean_known_bf01_full(const Sample& sample, double mu0, double sigma0);

struct MeanKnownBounds {
    BoundReport upper10;
    BoundReport lower01;
    BoundReport eibf10;
    BoundPair empirical;
    BoundReport aibf10;
};

MeanKnownBounds mean_known_bounds(const Sample& sample, double mu0, double sigma0);

// Mean test with unknown variance: prior 1/sigma under the null, 1/sigma^2 under the alternative.
LogValue mean_unknown_bf01_full(const Sample& sample, double mu0);

struct MeanUnknownBounds {
    BoundReport upper10;
    BoundReport lower01;
    BoundPair empirical;
    BoundReport aibf10;
};

MeanUnknownBounds mean_unknown_bounds(const Sample& sample, double mu0);

BoundReport simple_mean_upper10(const Sample& sample);

}  // namespace obf
