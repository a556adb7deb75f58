#include "obf/normal.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "obf/mts.hpp"
#include "obf/specialfn.hpp"

namespace obf {

namespace {

constexpr double pi = std::numbers::pi;

void require_precision(double h0) {
    if (!(h0 > 0.0) || !std::isfinite(h0)) fail(ErrorKind::DomainViolation, "h0 must be a positive precision");
}

void require_finite(const Sample& s) {
    if (s.empty()) fail(ErrorKind::InsufficientData, "empty sample");
    for (double v : s.values) {
        if (!std::isfinite(v)) fail(ErrorKind::DomainViolation, "non-finite observation");
    }
}

double sum_sq_about(const Sample& s, double c) {
    double acc = 0.0;
    for (double v : s.values) acc += (v - c) * (v - c);
    return acc;
}

double mean_of(const Sample& s) {
    double acc = 0.0;
    for (double v : s.values) acc += v;
    return acc / static_cast<double>(s.size());
}

struct PairScan {
    double best = 0.0;
    TrainingIndex best_idx;
    std::vector<double> logs;
};

template <class F>
PairScan scan_pairs(const Sample& s, F&& pair_log_bf01) {
    PairScan out;
    bool found = false;
    for (Combinations c(s.size(), 2); !c.done(); c.next()) {
        double a = s.values[c.current()[0]], b = s.values[c.current()[1]];
        if (a == b) continue;
        double v = pair_log_bf01(a, b);
        out.logs.push_back(v);
        if (!found || v > out.best) {
            out.best = v;
            out.best_idx = c.index();
            found = true;
        }
    }
    if (!found) fail(ErrorKind::ImproperTrainingSample, "no pair of distinct observations");
    return out;
}

}  // namespace

NormalScaleStats NormalScaleStats::from(const Sample& sample) {
    require_finite(sample);
    NormalScaleStats st;
    st.n = sample.size();
    st.ybar = mean_of(sample);
    st.s2 = sum_sq_about(sample, st.ybar);
    return st;
}

LogValue scale_bf01_full(const NormalScaleStats& st, double h0) {
    require_precision(h0);
    if (st.n < 3) fail(ErrorKind::DomainViolation, "the scale test needs n >= 3");
    if (!(st.s2 > 0.0)) fail(ErrorKind::DomainViolation, "S^2 must be positive");
    const double a = 0.5 * (static_cast<double>(st.n) - 1.0);
    return LogValue::from_log(a * std::log(h0) - 0.5 * h0 * st.s2 - a * std::log(2.0 / st.s2) - ln_gamma(a));
}

LogValue scale_pair_bf01(PairDiff pair, double h0) {
    require_precision(h0);
    if (pair.d == 0.0) return LogValue::zero();
    const double d = std::abs(pair.d);
    return LogValue::from_log(0.5 * std::log(h0) + std::log(d) - std::log(2.0) - 0.5 * std::log(pi) - 0.25 * h0 * d * d);
}

ScaleMtsSup scale_mts_sup(double h0) {
    require_precision(h0);
    ScaleMtsSup out;
    out.d_hat = std::sqrt(2.0 / h0);
    const double d = out.d_hat;
    out.sup_b10_mts = LogValue::from_log(0.5 * std::log(h0 / pi) - 0.25 * h0 * d * d + std::log(d));
    out.pair_bf01_sup = scale_pair_bf01({d}, h0);
    return out;
}

double scale_eibf_ratio(double h, double h0) {
    require_precision(h0);
    if (!(h > 0.0)) fail(ErrorKind::DomainViolation, "h must be positive");
    const double t = h / h0;
    return 2.0 * std::sqrt(t) / (pi * (t + 1.0));
}

PriorDensity scale_sp_prior(double h0) {
    require_precision(h0);
    return {GammaHalf{h0}};
}

PriorDensity scale_intrinsic_prior(double h0) {
    require_precision(h0);
    return {SBeta2{0.5, 0.5, h0}};
}

PriorDensity scale_sp_mu_prior(double h0, double center) {
    require_precision(h0);
    return {CauchyLoc{center, 1.0 / (2.0 * h0)}};
}

FamilyBounds scale_bounds(const Sample& sample, double h0) {
    auto st = NormalScaleStats::from(sample);
    LogValue b10 = reciprocal(scale_bf01_full(st, h0), Direction::B01);
    auto sup = scale_mts_sup(h0);
    auto scan = scan_pairs(sample, [h0](double a, double b) { return scale_pair_bf01({a - b}, h0).log(); });

    FamilyBounds out;
    BoundReport theo{Variant::TheoreticalUpper10, b10 * sup.pair_bf01_sup, sup.d_hat,
                     "pair sup attained at |D| = sqrt(2/h0)"};
    out.theoretical = make_pair_from_upper10(std::move(theo));
    BoundReport emp{Variant::EmpiricalUpper10, b10 * LogValue::from_log(scan.best), scan.best_idx, "sup over observed pairs"};
    out.empirical = make_pair_from_upper10(std::move(emp));
    out.aibf10 = {Variant::AIBF10, b10 * LogValue::from_log(log_mean_exp(scan.logs)), {},
                  "arithmetic mean over " + std::to_string(scan.logs.size()) + " proper pairs"};
    return out;
}

LogValue mean_known_bf01_full(const Sample& sample, double mu0, double sigma0) {
    require_finite(sample);
    if (!(sigma0 > 0.0) || !std::isfinite(sigma0)) fail(ErrorKind::DomainViolation, "sigma0 must be positive");
    const double n = static_cast<double>(sample.size());
    const double dev = mean_of(sample) - mu0;
    return LogValue::from_log(0.5 * std::log(n) - 0.5 * std::log(2.0 * pi) - std::log(sigma0) -
                              n * dev * dev / (2.0 * sigma0 * sigma0));
}

MeanKnownBounds mean_known_bounds(const Sample& sample, double mu0, double sigma0) {
    LogValue b10 = reciprocal(mean_known_bf01_full(sample, mu0, sigma0), Direction::B01);
    const double n = static_cast<double>(sample.size());
    const double dev = mean_of(sample) - mu0;
    const double log_sup = -0.5 * std::log(2.0 * pi) - std::log(sigma0);

    MeanKnownBounds out;
    out.upper10 = {Variant::TheoreticalUpper10, b10 * LogValue::from_log(log_sup), mu0,
                   "single-observation sup 1/(sqrt(2 pi) sigma0) at y = mu0"};
    out.lower01 = flip(out.upper10);
    out.eibf10 = {Variant::EIBF10,
                  LogValue::from_log(-0.5 * std::log(2.0 * n) + (n - 0.5) * dev * dev / (2.0 * sigma0 * sigma0)),
                  {},
                  ""};

    std::vector<double> logs;
    for (double y : sample.values) logs.push_back(log_sup - (y - mu0) * (y - mu0) / (2.0 * sigma0 * sigma0));
    std::size_t best = argmax_first(logs);
    out.empirical = make_pair_from_upper10(
        {Variant::EmpiricalUpper10, b10 * LogValue::from_log(logs[best]), TrainingIndex{{best}}, "observation closest to mu0"});
    out.aibf10 = {Variant::AIBF10, b10 * LogValue::from_log(log_mean_exp(logs)), {}, ""};
    return out;
}

LogValue mean_unknown_bf01_full(const Sample& sample, double mu0) {
    require_finite(sample);
    if (!std::isfinite(mu0)) fail(ErrorKind::DomainViolation, "mu0 must be finite");
    if (sample.size() < 2) fail(ErrorKind::InsufficientData, "need at least two observations");
    const double n = static_cast<double>(sample.size());
    const double beta0 = 0.5 * sum_sq_about(sample, mu0);
    const double beta1 = 0.5 * sum_sq_about(sample, mean_of(sample));
    if (!(beta1 > 0.0)) fail(ErrorKind::DomainViolation, "all observations are equal");
    const double log_m0 = -0.5 * n * std::log(2.0 * pi) - 0.5 * n * std::log(beta0);
    const double log_m1 = -0.5 * (n - 1.0) * std::log(2.0 * pi) - 0.5 * std::log(n) - 0.5 * n * std::log(beta1);
    return LogValue::from_log(log_m0 - log_m1);
}

MeanUnknownBounds mean_unknown_bounds(const Sample& sample, double mu0) {
    require_finite(sample);
    if (sample.size() < 3) fail(ErrorKind::InsufficientData, "need n >= 3");
    LogValue b10 = reciprocal(mean_unknown_bf01_full(sample, mu0), Direction::B01);
    const double log_sup = -0.5 * std::log(pi);

    MeanUnknownBounds out;
    out.upper10 = {Variant::TheoreticalUpper10, b10 * LogValue::from_log(log_sup), {},
                   "pair sup 1/sqrt(pi), attained at y1 - mu0 = -(y2 - mu0)"};
    out.lower01 = flip(out.upper10);

    auto scan = scan_pairs(sample, [mu0](double a, double b) {
        Sample pair{{a, b}, ""};
        return mean_unknown_bf01_full(pair, mu0).log();
    });
    out.empirical = make_pair_from_upper10(
        {Variant::EmpiricalUpper10, b10 * LogValue::from_log(scan.best), scan.best_idx, "sup over observed pairs"});
    out.aibf10 = {Variant::AIBF10, b10 * LogValue::from_log(log_mean_exp(scan.logs)), {}, ""};
    return out;
}

BoundReport simple_mean_upper10(const Sample& sample) {
    require_finite(sample);
    const double n = static_cast<double>(sample.size());
    double ss = 0.0;
    for (double v : sample.values) ss += v * v;
    return {Variant::TheoreticalUpper10, LogValue::from_log(0.5 * (n - 1.0) * std::log(2.0 * pi) + 0.5 * ss), 0.0,
            "single-observation null marginal maximized at y = 0"};
}

}  // namespace obf
