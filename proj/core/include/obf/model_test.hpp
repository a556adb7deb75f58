#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace obf {

enum class AnovaPrior { FullJeffreys, ModifiedJeffreys, ReferencePrior };

struct NormalScale {
    double h0 = 1.0;
};
struct NormalMeanKnownVar {
    double mu0 = 0.0;
    double sigma0 = 1.0;
};
struct NormalMeanUnknownVar {
    double mu0 = 0.0;
};
// N(0,1) against N(mu,1).
struct SimpleNormalMean {};
struct Exponential {
    double lambda0 = 1.0;
};
struct PoissonVsGeometric {};
struct PoissonVsNegBinomial {
    int r = 1;
};
struct NestedLinear {
    Eigen::MatrixXd A0;
    Eigen::MatrixXd A1;
    int q0 = 0;
    int q1 = 0;
};
struct OneWayAnova {
    std::vector<std::size_t> group_sizes;
    AnovaPrior prior_kind = AnovaPrior::FullJeffreys;
};

using ModelTest = std::variant<NormalScale, NormalMeanKnownVar, NormalMeanUnknownVar, SimpleNormalMean,
                               Exponential, PoissonVsGeometric, PoissonVsNegBinomial, NestedLinear,
                               OneWayAnova>;

// Throws DomainViolation when a null parameter is outside its domain.
void validate(const ModelTest& test);

// Size of a minimal training sample for the test.
std::size_t mts_size(const ModelTest& test);

const char* family_name(const ModelTest& test);

}  // namespace obf
