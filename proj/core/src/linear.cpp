#include "obf/linear.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "obf/rng.hpp"
#include "obf/specialfn.hpp"

namespace obf {

namespace {

// Relative threshold below which a residual sum of squares counts as an exact fit.
constexpr double exact_fit_rel = 1e-12;

Eigen::VectorXd to_vector(const Sample& y) {
    return Eigen::Map<const Eigen::VectorXd>(y.values.data(), static_cast<Eigen::Index>(y.size()));
}

Eigen::MatrixXd rows_of(const Eigen::MatrixXd& A, const TrainingIndex& ell) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(ell.k()), A.cols());
    for (std::size_t r = 0; r < ell.k(); ++r) out.row(static_cast<Eigen::Index>(r)) = A.row(static_cast<Eigen::Index>(ell.indices[r]));
    return out;
}

bool is_exact_fit(double rss, const Eigen::VectorXd& y) {
    double scale = y.squaredNorm();
    return rss <= exact_fit_rel * std::max(scale, 1e-300);
}

}  // namespace

std::pair<int, int> preset_q(QPreset preset, int p0, int p1) {
    switch (preset) {
    case QPreset::Reference: return {0, 0};
    case QPreset::FullJeffreys: return {p0, p1};
    case QPreset::ModifiedJeffreys: return {0, p1 - p0};
    }
    return {0, 0};
}

LeastSquares least_squares(const Eigen::MatrixXd& A, const Eigen::VectorXd& y) {
    if (A.rows() != y.size()) fail(ErrorKind::DomainViolation, "design rows and response length differ");
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    LeastSquares out;
    out.rank = static_cast<int>(qr.rank());
    if (out.rank < A.cols()) {
        return out;
    }
    Eigen::VectorXd qty = qr.householderQ().transpose() * y;
    out.rss = qty.tail(A.rows() - A.cols()).squaredNorm();
    double ld = 0.0;
    for (Eigen::Index i = 0; i < A.cols(); ++i) ld += std::log(std::abs(qr.matrixQR()(i, i)));
    out.log_det_gram = 2.0 * ld;
    return out;
}

void validate_design(const DesignPair& d) {
    if (d.A0.rows() != d.A1.rows()) fail(ErrorKind::DomainViolation, "designs must have the same number of rows");
    if (d.p0() < 1 || d.p0() >= d.p1()) fail(ErrorKind::DomainViolation, "need 1 <= p0 < p1");
    if (d.p1() > static_cast<int>(d.n()) - 1) fail(ErrorKind::InsufficientData, "need p1 <= n-1");
    if (d.q0 < 0 || d.q1 < 0) fail(ErrorKind::DomainViolation, "prior exponents must be non-negative");
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> q0(d.A0), q1(d.A1);
    if (q0.rank() < d.A0.cols()) fail(ErrorKind::RankDeficientDesign, "A0 is not of full column rank");
    if (q1.rank() < d.A1.cols()) fail(ErrorKind::RankDeficientDesign, "A1 is not of full column rank");
    if (d.nested) {
        Eigen::MatrixXd resid = d.A0 - d.A1 * q1.solve(d.A0);
        if (resid.norm() > 1e-9 * std::max(1.0, d.A0.norm())) {
            fail(ErrorKind::DomainViolation, "column space of A0 is not contained in that of A1");
        }
    }
}

FitSummary fit(const DesignPair& design, const Sample& y) {
    validate_design(design);
    if (y.size() != design.n()) fail(ErrorKind::DomainViolation, "response length does not match the design");
    Eigen::VectorXd v = to_vector(y);
    auto f0 = least_squares(design.A0, v);
    auto f1 = least_squares(design.A1, v);
    FitSummary out;
    out.n = design.n();
    out.R0 = f0.rss;
    out.R1 = f1.rss;
    int p0 = design.p0(), p1 = design.p1();
    if (out.R1 > 0.0) {
        out.F = ((out.R0 - out.R1) / (p1 - p0)) / (out.R1 / (static_cast<double>(out.n) - p1));
        out.F = std::max(out.F, 0.0);
    } else {
        out.F = std::numeric_limits<double>::infinity();
    }
    return out;
}

LogValue gl_marginal_log(const Eigen::MatrixXd& A, const Eigen::VectorXd& y, int q) {
    auto ls = least_squares(A, y);
    if (ls.rank < A.cols()) fail(ErrorKind::RankDeficientDesign, "design is not of full column rank");
    const double n = static_cast<double>(A.rows());
    const double p = static_cast<double>(A.cols());
    const double a = n - p + q;
    if (!(a > 0.0)) fail(ErrorKind::DomainViolation, "need n + q - p > 0");
    if (is_exact_fit(ls.rss, y)) fail(ErrorKind::DomainViolation, "residual sum of squares is zero");
    double v = -0.5 * (n - p) * std::log(2.0 * std::numbers::pi) - 0.5 * ls.log_det_gram - std::log(2.0) +
               0.5 * a * std::log(2.0 / ls.rss) + ln_gamma(0.5 * a);
    return LogValue::from_log(v);
}

LogValue gl_bf01_full(const DesignPair& design, const Sample& y) {
    validate_design(design);
    if (y.size() != design.n()) fail(ErrorKind::DomainViolation, "response length does not match the design");
    Eigen::VectorXd v = to_vector(y);
    return gl_marginal_log(design.A0, v, design.q0) / gl_marginal_log(design.A1, v, design.q1);
}

bool row_subset_proper(const Eigen::MatrixXd& A0, const Eigen::MatrixXd& A1, const Sample& y,
                       const TrainingIndex& ell, int q0, int q1) {
    for (auto i : ell.indices) {
        if (i >= y.size() || static_cast<Eigen::Index>(i) >= A0.rows()) return false;
    }
    Eigen::MatrixXd B0 = rows_of(A0, ell), B1 = rows_of(A1, ell);
    Eigen::VectorXd v(static_cast<Eigen::Index>(ell.k()));
    for (std::size_t r = 0; r < ell.k(); ++r) v(static_cast<Eigen::Index>(r)) = y.values[ell.indices[r]];
    const double k = static_cast<double>(ell.k());
    if (!(k - B0.cols() + q0 > 0) || !(k - B1.cols() + q1 > 0)) return false;
    auto f0 = least_squares(B0, v);
    auto f1 = least_squares(B1, v);
    if (f0.rank < B0.cols() || f1.rank < B1.cols()) return false;
    return !is_exact_fit(f0.rss, v) && !is_exact_fit(f1.rss, v);
}

LogValue gl_training_bf01(const DesignPair& design, const Sample& y, const TrainingIndex& ell) {
    Eigen::MatrixXd B0 = rows_of(design.A0, ell), B1 = rows_of(design.A1, ell);
    Eigen::VectorXd v(static_cast<Eigen::Index>(ell.k()));
    for (std::size_t r = 0; r < ell.k(); ++r) v(static_cast<Eigen::Index>(r)) = y.values[ell.indices[r]];
    return gl_marginal_log(B0, v, design.q0) / gl_marginal_log(B1, v, design.q1);
}

BoundReport gl_bound_over(const DesignPair& design, const Sample& y, const std::vector<TrainingIndex>& candidates,
                          BoundMode mode) {
    LogValue full = gl_bf01_full(design, y);
    bool found = false;
    double best = 0.0;
    TrainingIndex best_idx;
    std::size_t proper = 0;
    for (const auto& ell : candidates) {
        if (!row_subset_proper(design.A0, design.A1, y, ell, design.q0, design.q1)) continue;
        ++proper;
        double v = gl_training_bf01(design, y, ell).log();
        if (!found || v > best || (v == best && ell < best_idx)) {
            best = v;
            best_idx = ell;
            found = true;
        }
    }
    if (!found) fail(ErrorKind::ImproperTrainingSample, "no row subset gives proper marginals under both models");
    BoundReport upper;
    upper.variant = Variant::EmpiricalUpper10;
    upper.value = reciprocal(full, Direction::B01) * LogValue::from_log(best);
    upper.attainer = best_idx;
    upper.notes = "sup over " + std::to_string(proper) + " proper row subsets";
    if (mode == BoundMode::Upper10) return upper;
    return flip(upper);
}

BoundReport gl_empirical_bound(const DesignPair& design, const Sample& y, BoundMode mode, const LinearScan& scan) {
    validate_design(design);
    const std::size_t n = design.n();
    const std::size_t k = static_cast<std::size_t>(std::max(design.p0(), design.p1())) + 1;
    if (n < k + 1) fail(ErrorKind::InsufficientData, "need n >= n01 + 1");
    std::uint64_t total = binomial(n, k);
    std::vector<TrainingIndex> candidates =
        total <= scan.cap ? enumerate(n, k, scan.cap)
                          : random_subsample(n, k, static_cast<std::size_t>(std::min<std::uint64_t>(total, scan.subsample_count)), scan.seed);
    return gl_bound_over(design, y, candidates, mode);
}

std::size_t AnovaSpec::n() const {
    std::size_t n = 0;
    for (auto g : group_sizes) n += g;
    return n;
}

void validate(const AnovaSpec& spec) {
    if (spec.m() < 2) fail(ErrorKind::DomainViolation, "ANOVA needs at least two groups");
    for (auto g : spec.group_sizes) {
        if (g == 0) fail(ErrorKind::DomainViolation, "empty ANOVA group");
    }
    if (spec.n() < spec.m() + 1) fail(ErrorKind::InsufficientData, "ANOVA needs n >= m+1");
}

DesignPair anova_design(const std::vector<std::size_t>& group_sizes, AnovaPrior prior) {
    std::size_t n = 0;
    for (auto g : group_sizes) n += g;
    const auto m = static_cast<Eigen::Index>(group_sizes.size());
    DesignPair d;
    d.A0 = Eigen::MatrixXd::Ones(static_cast<Eigen::Index>(n), 1);
    d.A1 = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), m);
    Eigen::Index row = 0;
    for (Eigen::Index j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < group_sizes[static_cast<std::size_t>(j)]; ++i) d.A1(row++, j) = 1.0;
    }
    QPreset preset = prior == AnovaPrior::FullJeffreys       ? QPreset::FullJeffreys
                     : prior == AnovaPrior::ModifiedJeffreys ? QPreset::ModifiedJeffreys
                                                             : QPreset::Reference;
    std::tie(d.q0, d.q1) = preset_q(preset, 1, static_cast<int>(m));
    return d;
}

namespace {

double log_bracket(const AnovaSpec& spec, double F) {
    const double m = static_cast<double>(spec.m());
    const double n = static_cast<double>(spec.n());
    if (!(F >= 0.0)) fail(ErrorKind::DomainViolation, "F statistic must be non-negative");
    return std::log1p((m - 1.0) / (n - m) * F);
}

double log_group_ratio(const AnovaSpec& spec) {
    double s = -std::log(static_cast<double>(spec.n()));
    for (auto g : spec.group_sizes) s += std::log(static_cast<double>(g));
    return s;
}

}  // namespace

LogValue anova_ss_bf01(const AnovaSpec& spec, const FitSummary& fit) {
    validate(spec);
    if (spec.n() <= spec.m()) fail(ErrorKind::DomainViolation, "need n > m");
    const double m = static_cast<double>(spec.m());
    const double n = static_cast<double>(spec.n());
    double v = 0.5 * (std::log((m + 1.0) / 2.0) + log_group_ratio(spec) - n * log_bracket(spec, fit.F));
    return LogValue::from_log(v);
}

LogValue anova_ss_bf01_from_p(const AnovaSpec& spec, double p) {
    validate(spec);
    if (!(p > 0.0 && p < 1.0)) fail(ErrorKind::DomainViolation, "p-value must be in (0,1)");
    FitSummary f;
    f.n = spec.n();
    f.F = f_quantile(1.0 - p, static_cast<int>(spec.m()) - 1, static_cast<int>(spec.n() - spec.m()));
    return anova_ss_bf01(spec, f);
}

std::uint64_t stratified_count(const AnovaSpec& spec) {
    std::uint64_t total = 0;
    for (std::size_t j = 0; j < spec.m(); ++j) {
        std::uint64_t c = binomial(spec.group_sizes[j], 2);
        for (std::size_t i = 0; i < spec.m() && c != 0; ++i) {
            if (i == j) continue;
            std::uint64_t g = spec.group_sizes[i];
            if (c > std::numeric_limits<std::uint64_t>::max() / g) return std::numeric_limits<std::uint64_t>::max();
            c *= g;
        }
        if (total > std::numeric_limits<std::uint64_t>::max() - c) return std::numeric_limits<std::uint64_t>::max();
        total += c;
    }
    return total;
}

std::vector<TrainingIndex> stratified_subsets(const AnovaSpec& spec, const LinearScan& scan) {
    validate(spec);
    const std::size_t m = spec.m();
    std::vector<std::size_t> offset(m, 0);
    for (std::size_t j = 1; j < m; ++j) offset[j] = offset[j - 1] + spec.group_sizes[j - 1];
    const std::uint64_t total = stratified_count(spec);
    if (total == 0) fail(ErrorKind::ImproperTrainingSample, "every group has a single observation; no stratified training sample");

    std::vector<TrainingIndex> out;
    if (total <= scan.cap) {
        out.reserve(static_cast<std::size_t>(total));
        for (std::size_t j = 0; j < m; ++j) {
            if (spec.group_sizes[j] < 2) continue;
            for (Combinations pair(spec.group_sizes[j], 2); !pair.done(); pair.next()) {
                // Odometer over one pick per remaining group.
                std::vector<std::size_t> pick(m, 0);
                for (;;) {
                    TrainingIndex t;
                    for (std::size_t i = 0; i < m; ++i) {
                        if (i == j) {
                            t.indices.push_back(offset[j] + pair.current()[0]);
                            t.indices.push_back(offset[j] + pair.current()[1]);
                        } else {
                            t.indices.push_back(offset[i] + pick[i]);
                        }
                    }
                    out.push_back(std::move(t));
                    std::size_t i = m;
                    bool advanced = false;
                    while (i > 0) {
                        --i;
                        if (i == j) continue;
                        if (++pick[i] < spec.group_sizes[i]) {
                            advanced = true;
                            break;
                        }
                        pick[i] = 0;
                    }
                    if (!advanced) break;
                }
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    // Seeded draws, uniform over the stratified set, without replacement.
    std::vector<double> weight(m);
    for (std::size_t j = 0; j < m; ++j) {
        double w = spec.group_sizes[j] * (spec.group_sizes[j] - 1.0) / 2.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (i != j) w *= static_cast<double>(spec.group_sizes[i]);
        }
        weight[j] = w;
    }
    double wsum = 0.0;
    for (double w : weight) wsum += w;
    Rng rng(scan.seed);
    std::set<TrainingIndex> seen;
    const std::size_t want = static_cast<std::size_t>(std::min<std::uint64_t>(total, scan.subsample_count));
    while (out.size() < want) {
        double u = rng.uniform() * wsum;
        std::size_t j = 0;
        while (j + 1 < m && u >= weight[j]) {
            u -= weight[j];
            ++j;
        }
        if (spec.group_sizes[j] < 2) continue;
        TrainingIndex t;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == j) {
                std::size_t a = static_cast<std::size_t>(rng.below(spec.group_sizes[j]));
                std::size_t b = static_cast<std::size_t>(rng.below(spec.group_sizes[j] - 1));
                if (b >= a) ++b;
                t.indices.push_back(offset[j] + std::min(a, b));
                t.indices.push_back(offset[j] + std::max(a, b));
            } else {
                t.indices.push_back(offset[i] + static_cast<std::size_t>(rng.below(spec.group_sizes[i])));
            }
        }
        if (seen.insert(t).second) out.push_back(std::move(t));
    }
    return out;
}

AnovaBounds anova_bounds(const AnovaSpec& spec, const Sample& y, const LinearScan& scan) {
    validate(spec);
    if (spec.prior_kind == AnovaPrior::ReferencePrior) {
        fail(ErrorKind::NonExistentBound,
             "under the reference prior the training-sample ratio (R1/R0)^((m+1)/2) is not integrable: the bound tends to either zero or infinity");
    }
    if (spec.n() < spec.m() + 2) fail(ErrorKind::InsufficientData, "ANOVA bounds need n >= m+2");
    if (y.size() != spec.n()) fail(ErrorKind::DomainViolation, "response length does not match the group sizes");

    DesignPair design = anova_design(spec.group_sizes, spec.prior_kind);
    AnovaBounds out;
    out.fit = fit(design, y);
    if (is_exact_fit(out.fit.R1, to_vector(y))) fail(ErrorKind::DomainViolation, "within-group residual is zero");

    const double m = static_cast<double>(spec.m());
    const double n = static_cast<double>(spec.n());
    const double exponent = spec.prior_kind == AnovaPrior::FullJeffreys ? n : n - 1.0;
    const double log_ratio = std::log(out.fit.R0) - std::log(out.fit.R1);

    BoundReport upper;
    upper.variant = Variant::TheoreticalUpper10;
    upper.value = LogValue::from_log(0.5 * (std::log(2.0 / (m + 1.0)) - log_group_ratio(spec) + exponent * log_ratio));
    upper.notes = spec.prior_kind == AnovaPrior::FullJeffreys
                      ? "full Jeffreys; training-sample sup of (R1/R0)^((m+1)/2) equals 1"
                      : "modified Jeffreys; training-sample sup of (R1/R0)^(m/2) equals 1";
    out.theoretical = make_pair_from_upper10(std::move(upper));

    auto candidates = stratified_subsets(spec, scan);
    bool any_proper = std::any_of(candidates.begin(), candidates.end(), [&](const TrainingIndex& t) {
        return row_subset_proper(design.A0, design.A1, y, t, design.q0, design.q1);
    });
    if (any_proper) {
        out.empirical = make_pair_from_upper10(gl_bound_over(design, y, candidates, BoundMode::Upper10));
        out.empirical->upper10.notes = "sup over stratified training samples";
        out.empirical->lower01.notes = out.empirical->upper10.notes;
    }
    return out;
}

}  // namespace obf
