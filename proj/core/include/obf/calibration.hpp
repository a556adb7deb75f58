#pragma once

#include "obf/core.hpp"
#include "obf/model_test.hpp"

namespace obf {

enum class PSource { Wilks, Exact, Supplied };

struct PValue {
    double p = 1.0;
    PSource source = PSource::Supplied;
};

// -e p log p for p < 1/e, else 1.
double robust_lower_bound(double p);
double robust_lower_bound(const PValue& p);

PValue exp_wilks_pvalue(const Sample& sample, double lambda0);

// Available for SimpleNormalMean; NonExistentBound for the exponential and every other family.
BoundReport gs_bayes_factor(const ModelTest& test, const Sample& sample);

}  // namespace obf
