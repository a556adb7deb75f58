#include "obf/core.hpp"
#include "obf/model_test.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace obf {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::ImproperTrainingSample: return "ImproperTrainingSample";
    case ErrorKind::NonExistentBound: return "NonExistentBound";
    case ErrorKind::RankDeficientDesign: return "RankDeficientDesign";
    case ErrorKind::DomainViolation: return "DomainViolation";
    case ErrorKind::InsufficientData: return "InsufficientData";
    }
    return "Unknown";
}

EvidenceError::EvidenceError(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind), detail_(detail) {}

void fail(ErrorKind kind, const std::string& detail) { throw EvidenceError(kind, detail); }

LogValue LogValue::from_log(double log_value) {
    if (std::isnan(log_value)) fail(ErrorKind::DomainViolation, "log value is NaN");
    if (log_value == -std::numeric_limits<double>::infinity()) return zero();
    return {log_value, false};
}

LogValue LogValue::from_linear(double value) {
    if (!(value >= 0.0)) fail(ErrorKind::DomainViolation, "negative or NaN linear value");
    if (value == 0.0) return zero();
    return {std::log(value), false};
}

double LogValue::log() const {
    return is_zero ? -std::numeric_limits<double>::infinity() : log_magnitude;
}

double LogValue::log10() const { return log() / std::log(10.0); }

double LogValue::linear() const { return is_zero ? 0.0 : std::exp(log_magnitude); }

LogValue operator*(LogValue a, LogValue b) {
    if (a.is_zero || b.is_zero) return LogValue::zero();
    return LogValue::from_log(a.log_magnitude + b.log_magnitude);
}

LogValue operator/(LogValue a, LogValue b) {
    if (b.is_zero) fail(ErrorKind::DomainViolation, "division by an exact zero");
    if (a.is_zero) return LogValue::zero();
    return LogValue::from_log(a.log_magnitude - b.log_magnitude);
}

bool operator<(LogValue a, LogValue b) {
    if (b.is_zero) return false;
    if (a.is_zero) return true;
    return a.log_magnitude < b.log_magnitude;
}

double log_sum_exp(std::span<const double> xs) {
    double m = -std::numeric_limits<double>::infinity();
    for (double x : xs) m = std::max(m, x);
    if (!std::isfinite(m)) return m;
    double acc = 0.0;
    for (double x : xs) acc += std::exp(x - m);
    return m + std::log(acc);
}

double log_mean_exp(std::span<const double> xs) {
    if (xs.empty()) fail(ErrorKind::InsufficientData, "mean of an empty sequence");
    return log_sum_exp(xs) - std::log(static_cast<double>(xs.size()));
}

LogValue mean(std::span<const LogValue> values) {
    if (values.empty()) fail(ErrorKind::InsufficientData, "mean of an empty sequence");
    std::vector<double> logs;
    logs.reserve(values.size());
    for (const auto& v : values) logs.push_back(v.log());
    return LogValue::from_log(log_mean_exp(logs));
}

LogValue reciprocal(LogValue value, Direction) {
    if (value.is_zero) fail(ErrorKind::DomainViolation, "reciprocal of an exact zero");
    return LogValue::from_log(-value.log_magnitude);
}

const char* to_string(Variant v) {
    switch (v) {
    case Variant::TheoreticalLower01: return "TheoreticalLower01";
    case Variant::TheoreticalUpper10: return "TheoreticalUpper10";
    case Variant::EmpiricalLower01: return "EmpiricalLower01";
    case Variant::EmpiricalUpper10: return "EmpiricalUpper10";
    case Variant::AIBF10: return "AIBF10";
    case Variant::EIBF10: return "EIBF10";
    case Variant::SPBF10: return "SPBF10";
    case Variant::EPBF10: return "EPBF10";
    case Variant::GS10: return "GS10";
    case Variant::Plain01: return "Plain01";
    }
    return "Unknown";
}

BoundReport flip(const BoundReport& report) {
    BoundReport out = report;
    switch (report.variant) {
    case Variant::TheoreticalUpper10: out.variant = Variant::TheoreticalLower01; break;
    case Variant::TheoreticalLower01: out.variant = Variant::TheoreticalUpper10; break;
    case Variant::EmpiricalUpper10: out.variant = Variant::EmpiricalLower01; break;
    case Variant::EmpiricalLower01: out.variant = Variant::EmpiricalUpper10; break;
    default: fail(ErrorKind::DomainViolation, std::string("no reciprocal variant for ") + to_string(report.variant));
    }
    out.value = reciprocal(report.value, Direction::B10);
    return out;
}

BoundPair make_pair_from_upper10(BoundReport upper10) {
    BoundReport lower = flip(upper10);
    return {std::move(upper10), std::move(lower)};
}

ChainCheck bound_chain_check(LogValue b01_full, std::span<const LogValue> b01_mts_values) {
    if (b01_mts_values.empty()) fail(ErrorKind::InsufficientData, "no training-sample Bayes factors");
    for (const auto& v : b01_mts_values) {
        if (v.is_zero) fail(ErrorKind::DomainViolation, "exact-zero training-sample Bayes factor");
    }
    LogValue sup = *std::max_element(b01_mts_values.begin(), b01_mts_values.end(),
                                     [](LogValue a, LogValue b) { return a < b; });
    ChainCheck out;
    out.aibf01 = b01_full / mean(b01_mts_values);
    out.lower01_emp = b01_full / sup;
    out.ordered = out.lower01_emp.log() <= out.aibf01.log() + 1e-12 * std::max(1.0, std::abs(out.aibf01.log()));
    return out;
}

std::size_t argmax_first(std::span<const double> xs) {
    if (xs.empty()) fail(ErrorKind::InsufficientData, "argmax of an empty sequence");
    std::size_t best = 0;
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (xs[i] > xs[best]) best = i;
    }
    return best;
}

namespace {

struct Validator {
    void operator()(const NormalScale& t) const {
        if (!(t.h0 > 0.0) || !std::isfinite(t.h0)) fail(ErrorKind::DomainViolation, "h0 must be a positive precision");
    }
    void operator()(const NormalMeanKnownVar& t) const {
        if (!std::isfinite(t.mu0)) fail(ErrorKind::DomainViolation, "mu0 must be finite");
        if (!(t.sigma0 > 0.0) || !std::isfinite(t.sigma0)) fail(ErrorKind::DomainViolation, "sigma0 must be positive");
    }
    void operator()(const NormalMeanUnknownVar& t) const {
        if (!std::isfinite(t.mu0)) fail(ErrorKind::DomainViolation, "mu0 must be finite");
    }
    void operator()(const SimpleNormalMean&) const {}
    void operator()(const Exponential& t) const {
        if (!(t.lambda0 > 0.0) || !std::isfinite(t.lambda0)) fail(ErrorKind::DomainViolation, "lambda0 must be a positive rate");
    }
    void operator()(const PoissonVsGeometric&) const {}
    void operator()(const PoissonVsNegBinomial& t) const {
        if (t.r < 1) fail(ErrorKind::DomainViolation, "r must be a positive integer");
    }
    void operator()(const NestedLinear& t) const {
        if (t.A0.rows() != t.A1.rows()) fail(ErrorKind::DomainViolation, "designs must have the same number of rows");
        if (t.A0.cols() >= t.A1.cols()) fail(ErrorKind::DomainViolation, "null design must have fewer columns");
        if (t.A1.cols() > t.A1.rows() - 1) fail(ErrorKind::InsufficientData, "need p1 <= n-1");
        if (t.q0 < 0 || t.q1 < 0) fail(ErrorKind::DomainViolation, "prior exponents must be non-negative");
    }
    void operator()(const OneWayAnova& t) const {
        if (t.group_sizes.size() < 2) fail(ErrorKind::DomainViolation, "ANOVA needs at least two groups");
        std::size_t n = 0;
        for (auto g : t.group_sizes) {
            if (g == 0) fail(ErrorKind::DomainViolation, "empty ANOVA group");
            n += g;
        }
        if (n < t.group_sizes.size() + 1) fail(ErrorKind::InsufficientData, "ANOVA needs n >= m+1");
    }
};

struct MtsSize {
    std::size_t operator()(const NormalScale&) const { return 2; }
    std::size_t operator()(const NormalMeanKnownVar&) const { return 1; }
    std::size_t operator()(const NormalMeanUnknownVar&) const { return 2; }
    std::size_t operator()(const SimpleNormalMean&) const { return 1; }
    std::size_t operator()(const Exponential&) const { return 1; }
    std::size_t operator()(const PoissonVsGeometric&) const { return 1; }
    std::size_t operator()(const PoissonVsNegBinomial&) const { return 1; }
    std::size_t operator()(const NestedLinear& t) const {
        return static_cast<std::size_t>(std::max(t.A0.cols(), t.A1.cols())) + 1;
    }
    std::size_t operator()(const OneWayAnova& t) const { return t.group_sizes.size() + 1; }
};

struct FamilyName {
    const char* operator()(const NormalScale&) const { return "normal-scale"; }
    const char* operator()(const NormalMeanKnownVar&) const { return "normal-mean-known"; }
    const char* operator()(const NormalMeanUnknownVar&) const { return "normal-mean-unknown"; }
    const char* operator()(const SimpleNormalMean&) const { return "simple-normal-mean"; }
    const char* operator()(const Exponential&) const { return "exponential"; }
    const char* operator()(const PoissonVsGeometric&) const { return "poisson-vs-geometric"; }
    const char* operator()(const PoissonVsNegBinomial&) const { return "poisson-vs-negbinomial"; }
    const char* operator()(const NestedLinear&) const { return "nested-linear"; }
    const char* operator()(const OneWayAnova&) const { return "one-way-anova"; }
};

}  // namespace

void validate(const ModelTest& test) { std::visit(Validator{}, test); }

std::size_t mts_size(const ModelTest& test) { return std::visit(MtsSize{}, test); }

const char* family_name(const ModelTest& test) { return std::visit(FamilyName{}, test); }

}  // namespace obf
