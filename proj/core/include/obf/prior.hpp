#pragma once

#include <string>
#include <variant>

namespace obf {

// Gamma(shape 1/2, scale 2*h0).
struct GammaHalf {
    double h0;
};
// Scaled beta of the second kind, normalized as a density in x.
struct SBeta2 {
    double p;
    double q;
    double b;
};
// Cauchy location density with scale^2 = scale_sq.
struct CauchyLoc {
    double center;
    double scale_sq;
};
struct ExponentialRate {
    double rate;
};
struct Flat {};

using PriorFamily = std::variant<GammaHalf, SBeta2, CauchyLoc, ExponentialRate, Flat>;

struct PriorDensity {
    PriorFamily family;

    double operator()(double x) const;
    double support_lower() const;
    double support_upper() const;
    bool proper() const;
    std::string describe() const;
};

}  // namespace obf
