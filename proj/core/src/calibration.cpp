#include "obf/calibration.hpp"

#include <cmath>
#include <numbers>

#include "obf/exponential.hpp"
#include "obf/normal.hpp"
#include "obf/specialfn.hpp"

namespace obf {

double robust_lower_bound(double p) {
    if (!(p >= 0.0 && p <= 1.0)) fail(ErrorKind::DomainViolation, "p-value must be in [0,1]");
    if (p == 0.0) return 0.0;
    if (p < 1.0 / std::numbers::e) return -std::numbers::e * p * std::log(p);
    return 1.0;
}

double robust_lower_bound(const PValue& p) { return robust_lower_bound(p.p); }

PValue exp_wilks_pvalue(const Sample& sample, double lambda0) {
    auto st = ExpStats::from(sample);
    if (!(lambda0 > 0.0) || !std::isfinite(lambda0)) fail(ErrorKind::DomainViolation, "lambda0 must be a positive rate");
    if (!(st.s > 0.0)) fail(ErrorKind::DomainViolation, "sum of observations must be positive");
    const double n = static_cast<double>(st.n);
    const double log_lr = n * std::log(lambda0) - lambda0 * st.s - n * (std::log(n) - std::log(st.s) - 1.0);
    const double ts = std::max(0.0, -2.0 * log_lr);
    return {chi2_sf(ts, 1), PSource::Wilks};
}

BoundReport gs_bayes_factor(const ModelTest& test, const Sample& sample) {
    if (std::holds_alternative<SimpleNormalMean>(test)) {
        BoundReport r = simple_mean_upper10(sample);
        r.variant = Variant::GS10;
        r.notes = "y0 = argsup of the null training marginal = 0, c = 1/sqrt(2 pi)";
        return r;
    }
    if (std::holds_alternative<Exponential>(test)) {
        fail(ErrorKind::NonExistentBound, "the null training marginal is maximized at y0 = 0 where B01(y0) = 0, so c is infinite");
    }
    fail(ErrorKind::NonExistentBound, std::string("GS scaling is not defined for ") + family_name(test));
}

}  // namespace obf
