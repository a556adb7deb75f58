#include "obf/exponential.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "obf/specialfn.hpp"

namespace obf {

namespace {

void require_rate(double lambda0) {
    if (!(lambda0 > 0.0) || !std::isfinite(lambda0)) fail(ErrorKind::DomainViolation, "lambda0 must be a positive rate");
}

void require_nonnegative(const Sample& s) {
    if (s.empty()) fail(ErrorKind::InsufficientData, "empty sample");
    for (double v : s.values) {
        if (!(v >= 0.0) || !std::isfinite(v)) fail(ErrorKind::DomainViolation, "exponential data must be finite and non-negative");
    }
}

}  // namespace

ExpStats ExpStats::from(const Sample& sample) {
    require_nonnegative(sample);
    ExpStats st;
    st.n = sample.size();
    for (double v : sample.values) st.s += v;
    return st;
}

LogValue exp_bf01_full(const ExpStats& st, double lambda0) {
    require_rate(lambda0);
    if (st.n < 2) fail(ErrorKind::DomainViolation, "the full Bayes factor needs n >= 2");
    if (!(st.s > 0.0)) fail(ErrorKind::DomainViolation, "sum of observations must be positive");
    const double n = static_cast<double>(st.n);
    return LogValue::from_log(n * std::log(lambda0) - lambda0 * st.s + n * std::log(st.s) - ln_gamma(n));
}

LogValue exp_mts_bf01(double y, double lambda0) {
    require_rate(lambda0);
    if (!(y >= 0.0) || !std::isfinite(y)) fail(ErrorKind::DomainViolation, "training point must be finite and non-negative");
    if (y == 0.0) return LogValue::zero();
    return LogValue::from_log(std::log(y * lambda0) - lambda0 * y);
}

FamilyBounds exp_bounds(const Sample& sample, double lambda0) {
    auto st = ExpStats::from(sample);
    if (st.n < 2) fail(ErrorKind::InsufficientData, "bounds need n >= 2");
    if (!(st.s > 0.0)) fail(ErrorKind::ImproperTrainingSample, "every observation is zero");
    LogValue b10 = reciprocal(exp_bf01_full(st, lambda0), Direction::B01);

    std::vector<double> logs;
    std::size_t best = 0;
    bool found = false;
    for (std::size_t i = 0; i < st.n; ++i) {
        LogValue v = exp_mts_bf01(sample.values[i], lambda0);
        if (v.is_zero) continue;
        logs.push_back(v.log_magnitude);
        if (!found || v.log_magnitude > exp_mts_bf01(sample.values[best], lambda0).log_magnitude) {
            best = i;
            found = true;
        }
    }

    FamilyBounds out;
    out.theoretical = make_pair_from_upper10(
        {Variant::TheoreticalUpper10, b10 * LogValue::from_log(-1.0), 1.0 / lambda0, "training-point sup 1/e at y = 1/lambda0"});
    out.empirical = make_pair_from_upper10(
        {Variant::EmpiricalUpper10, b10 * exp_mts_bf01(sample.values[best], lambda0), TrainingIndex{{best}},
         "argmax of y*lambda0*exp(-lambda0*y) over observed points"});
    out.aibf10 = {Variant::AIBF10, b10 * LogValue::from_log(log_mean_exp(logs)), {},
                  "arithmetic mean over " + std::to_string(logs.size()) + " positive observations"};
    return out;
}

LogValue exp_sp_bf10(const ExpStats& st, double lambda0) {
    require_rate(lambda0);
    if (st.n < 1) fail(ErrorKind::InsufficientData, "empty sample");
    if (!(st.s >= 0.0)) fail(ErrorKind::DomainViolation, "sum of observations must be non-negative");
    const double n = static_cast<double>(st.n);
    return LogValue::from_log(ln_gamma(n + 1.0) + lambda0 * st.s - (n + 1.0) * std::log(st.s + 1.0 / lambda0) -
                              (n + 1.0) * std::log(lambda0));
}

PriorDensity exp_sp_prior(double lambda0) {
    require_rate(lambda0);
    return {ExponentialRate{1.0 / lambda0}};
}

double exp_ep_prior(const Sample& sample, double lambda) {
    require_nonnegative(sample);
    if (!(lambda >= 0.0)) fail(ErrorKind::DomainViolation, "rate must be non-negative");
    double acc = 0.0;
    for (double y : sample.values) acc += y * std::exp(-lambda * y);
    return acc / static_cast<double>(sample.size());
}

LogValue exp_ep_bf10(const Sample& sample, double lambda0) {
    require_rate(lambda0);
    auto st = ExpStats::from(sample);
    if (!(st.s > 0.0)) fail(ErrorKind::ImproperTrainingSample, "every observation is zero");
    const double n = static_cast<double>(st.n);
    std::vector<double> terms;
    for (double y : sample.values) {
        if (y > 0.0) terms.push_back(std::log(y) - (n + 1.0) * std::log(st.s + y));
    }
    return LogValue::from_log(-std::log(n) + ln_gamma(n + 1.0) + log_sum_exp(terms) - n * std::log(lambda0) + lambda0 * st.s);
}

LogValue exp_empirical_sp_bf10(const Sample& sample, double lambda0) {
    auto bounds = exp_bounds(sample, lambda0);
    const auto& ell = std::get<TrainingIndex>(bounds.empirical.upper10.attainer);
    const std::size_t star = ell.indices.front();
    const double y_star = sample.values[star];

    double rest = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        if (i != star) rest += sample.values[i];
    }
    const double m = static_cast<double>(sample.size() - 1);

    // Posterior of lambda given y_star under the 1/lambda prior is Exponential(rate y_star).
    PriorDensity posterior{ExponentialRate{y_star}};
    // Rescale around the mode of the integrand so the quadrature sees O(1) values.
    const double total = rest + y_star;
    const double mode = m / total;
    const double log_peak = m * std::log(mode) - m;
    auto integrand = [&](double lambda) {
        if (lambda <= 0.0) return 0.0;
        double log_lik = m * std::log(lambda) - lambda * rest;
        double prior = posterior(lambda);
        if (prior == 0.0) return 0.0;
        return std::exp(log_lik + std::log(prior) - std::log(y_star) - log_peak);
    };
    double error = 0.0;
    double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        integrand, 0.0, std::numeric_limits<double>::infinity(), 25, 1e-13, &error);
    const double log_m1 = std::log(value) + std::log(y_star) + log_peak;
    const double log_m0 = m * std::log(lambda0) - lambda0 * rest;
    return LogValue::from_log(log_m1 - log_m0);
}

}  // namespace obf
