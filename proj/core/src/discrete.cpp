#include "obf/discrete.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "obf/rng.hpp"
#include "obf/specialfn.hpp"

namespace obf {

void require_counts(const Sample& sample) {
    if (sample.empty()) fail(ErrorKind::InsufficientData, "empty sample");
    for (double v : sample.values) {
        if (!(v >= 0.0) || v > max_count || std::floor(v) != v) {
            fail(ErrorKind::DomainViolation, "count data must be integers in [0, 1e6]");
        }
    }
}

CountStats CountStats::from(const Sample& sample) {
    require_counts(sample);
    CountStats st;
    st.n = sample.size();
    st.y_min = sample.values.front();
    st.y_max = sample.values.front();
    for (double v : sample.values) {
        st.s += v;
        st.log_prod_fact += ln_gamma(v + 1.0);
        st.y_min = std::min(st.y_min, v);
        st.y_max = std::max(st.y_max, v);
    }
    return st;
}

LogValue pg_bf01_full(const CountStats& st) {
    if (st.n < 1) fail(ErrorKind::InsufficientData, "empty sample");
    const double n = static_cast<double>(st.n);
    return LogValue::from_log(ln_gamma(n + st.s + 0.5) - st.log_prod_fact - ln_gamma(n) - (st.s + 0.5) * std::log(n));
}

LogValue pg_mts_bf01(double y) {
    if (!(y >= 0.0) || std::floor(y) != y) fail(ErrorKind::DomainViolation, "training point must be a count");
    return LogValue::from_log(-ln_gamma(y + 1.5));
}

LogValue pg_single_bf01(double y) {
    if (!(y >= 0.0) || std::floor(y) != y) fail(ErrorKind::DomainViolation, "training point must be a count");
    return LogValue::from_log(ln_gamma(y + 1.5) - ln_gamma(y + 1.0));
}

FamilyBounds pg_bounds(const Sample& sample) {
    auto st = CountStats::from(sample);
    LogValue b10 = reciprocal(pg_bf01_full(st), Direction::B01);

    std::vector<double> logs;
    logs.reserve(st.n);
    for (double y : sample.values) logs.push_back(pg_mts_bf01(y).log_magnitude);
    std::size_t best = argmax_first(logs);

    FamilyBounds out;
    out.theoretical = make_pair_from_upper10(
        {Variant::TheoreticalUpper10, b10 * pg_mts_bf01(0.0), 0.0, "training-point sup 2/sqrt(pi) at y = 0"});
    out.empirical = make_pair_from_upper10({Variant::EmpiricalUpper10, b10 * LogValue::from_log(logs[best]),
                                            TrainingIndex{{best}}, "smallest observed count"});
    out.aibf10 = {Variant::AIBF10, b10 * LogValue::from_log(log_mean_exp(logs)), {},
                  "arithmetic mean over all " + std::to_string(st.n) + " observations"};
    return out;
}

LogValue pnb_bf10_full(const Sample& sample, int r) {
    if (r < 1) fail(ErrorKind::DomainViolation, "r must be a positive integer");
    auto st = CountStats::from(sample);
    if (!(st.s >= 1.0)) fail(ErrorKind::ImproperTrainingSample, "all-zero data: the negative binomial marginal diverges");
    const double n = static_cast<double>(st.n);
    const double rr = static_cast<double>(r);
    double acc = 0.5 * std::log(rr) + ln_gamma(rr * n + 0.5) + ln_gamma(st.s) - ln_gamma(rr * n + st.s + 0.5) -
                 ln_gamma(st.s + 0.5) + (st.s + 0.5) * std::log(n);
    for (double y : sample.values) acc += ln_gamma(y + rr) - ln_gamma(rr);
    return LogValue::from_log(acc);
}

double pnb_mts_ratio_log(double y, int r) {
    if (r < 1) fail(ErrorKind::DomainViolation, "r must be a positive integer");
    if (!(y >= 1.0) || std::floor(y) != y) fail(ErrorKind::ImproperTrainingSample, "training point must be a count >= 1");
    const double rr = static_cast<double>(r);
    return ln_gamma(rr + y + 0.5) + ln_gamma(y + 0.5) - ln_gamma(y + rr) - ln_gamma(y);
}

LogValue pnb_single_bf01(double y, int r) {
    if (!(y >= 1.0) || std::floor(y) != y) fail(ErrorKind::ImproperTrainingSample, "training point must be a count >= 1");
    return reciprocal(pnb_bf10_full(Sample{{y}, ""}, r), Direction::B10);
}

PnbBounds pnb_bounds(const Sample& sample, int r) {
    auto st = CountStats::from(sample);
    if (!(st.s >= 1.0)) fail(ErrorKind::ImproperTrainingSample, "all-zero data: no proper training point");
    LogValue b10 = pnb_bf10_full(sample, r);

    std::vector<double> logs;
    std::size_t best = 0;
    double best_val = 0.0;
    bool found = false;
    for (std::size_t i = 0; i < st.n; ++i) {
        double y = sample.values[i];
        if (y < 1.0) continue;
        double v = pnb_single_bf01(y, r).log_magnitude;
        logs.push_back(v);
        if (!found || v > best_val) {
            best = i;
            best_val = v;
            found = true;
        }
    }

    PnbBounds out;
    const double rr = static_cast<double>(r);
    out.theoretical_lower01 = {Variant::TheoreticalLower01,
                               reciprocal(b10, Direction::B10) * LogValue::from_log(0.5 * std::log(rr) - 0.5 * std::log(std::numbers::pi)),
                               {},
                               "closed form with Gamma(r)/Gamma(1/2); the single-observation B01 is unbounded in y, "
                               "so this value is not an infimum over training samples"};
    out.empirical = make_pair_from_upper10({Variant::EmpiricalUpper10, b10 * LogValue::from_log(best_val),
                                            TrainingIndex{{best}}, "largest observed count (ratio increasing in y)"});
    out.aibf10 = {Variant::AIBF10, b10 * LogValue::from_log(log_mean_exp(logs)), {},
                  "arithmetic mean over " + std::to_string(logs.size()) + " proper observations"};
    return out;
}

Sample cox_dataset() {
    Sample s;
    s.label = "cox";
    s.values.insert(s.values.end(), 12, 0.0);
    s.values.insert(s.values.end(), 11, 1.0);
    s.values.insert(s.values.end(), 6, 2.0);
    s.values.push_back(3.0);
    return s;
}

std::vector<BoundReport> cox_sequential(const Sample& sample, std::optional<std::uint64_t> shuffle_seed) {
    require_counts(sample);
    Sample data = sample;
    if (shuffle_seed) {
        Rng rng(*shuffle_seed);
        for (std::size_t i = data.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(rng.below(i));
            std::swap(data.values[i - 1], data.values[j]);
        }
    }
    std::vector<BoundReport> out;
    out.reserve(data.size());
    Sample prefix;
    for (double y : data.values) {
        prefix.values.push_back(y);
        auto st = CountStats::from(prefix);
        out.push_back({Variant::TheoreticalUpper10, reciprocal(pg_bf01_full(st), Direction::B01) * pg_mts_bf01(0.0), 0.0,
                       "prefix n=" + std::to_string(prefix.size())});
    }
    return out;
}

}  // namespace obf
