#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "obf/core.hpp"
#include "obf/model_test.hpp"
#include "obf/mts.hpp"

namespace obf {

struct DesignPair {
    Eigen::MatrixXd A0;
    Eigen::MatrixXd A1;
    int q0 = 0;
    int q1 = 0;
    bool nested = true;

    std::size_t n() const { return static_cast<std::size_t>(A0.rows()); }
    int p0() const { return static_cast<int>(A0.cols()); }
    int p1() const { return static_cast<int>(A1.cols()); }
};

enum class QPreset { Reference, FullJeffreys, ModifiedJeffreys };

// Prior exponents (q0, q1) for a preset.
std::pair<int, int> preset_q(QPreset preset, int p0, int p1);

// Checks shapes, ranks and (optionally) column-space nesting.
void validate_design(const DesignPair& design);

struct FitSummary {
    double R0 = 0.0;
    double R1 = 0.0;
    double F = 0.0;
    std::size_t n = 0;
};

struct LeastSquares {
    double rss = 0.0;
    double log_det_gram = 0.0;
    int rank = 0;
};

LeastSquares least_squares(const Eigen::MatrixXd& A, const Eigen::VectorXd& y);

FitSummary fit(const DesignPair& design, const Sample& y);

// Exact log marginal under the prior sigma^-(1+q) d(theta) d(sigma).
LogValue gl_marginal_log(const Eigen::MatrixXd& A, const Eigen::VectorXd& y, int q);

LogValue gl_bf01_full(const DesignPair& design, const Sample& y);

bool row_subset_proper(const Eigen::MatrixXd& A0, const Eigen::MatrixXd& A1, const Sample& y,
                       const TrainingIndex& ell, int q0, int q1);

// B01 of the rows in ell alone.
LogValue gl_training_bf01(const DesignPair& design, const Sample& y, const TrainingIndex& ell);

enum class BoundMode { Lower01, Upper10 };

struct LinearScan {
    std::uint64_t cap = default_enumeration_cap;
    std::size_t subsample_count = 100000;
    std::uint64_t seed = 0;
};

BoundReport gl_empirical_bound(const DesignPair& design, const Sample& y, BoundMode mode, const LinearScan& scan = {});

// Extremum of the trained factor over the given candidate row subsets.
BoundReport gl_bound_over(const DesignPair& design, const Sample& y, const std::vector<TrainingIndex>& candidates,
                          BoundMode mode);

struct AnovaSpec {
    std::vector<std::size_t> group_sizes;
    AnovaPrior prior_kind = AnovaPrior::FullJeffreys;

    std::size_t m() const { return group_sizes.size(); }
    std::size_t n() const;
};

void validate(const AnovaSpec& spec);

DesignPair anova_design(const std::vector<std::size_t>& group_sizes, AnovaPrior prior);

LogValue anova_ss_bf01(const AnovaSpec& spec, const FitSummary& fit);
LogValue anova_ss_bf01_from_p(const AnovaSpec& spec, double p);

// One observation per group plus a second one from a single group, in lexicographic order.
std::vector<TrainingIndex> stratified_subsets(const AnovaSpec& spec, const LinearScan& scan = {});
std::uint64_t stratified_count(const AnovaSpec& spec);

struct AnovaBounds {
    FitSummary fit;
    BoundPair theoretical;
    std::optional<BoundPair> empirical;
};

// y is ordered by group, following group_sizes.
AnovaBounds anova_bounds(const AnovaSpec& spec, const Sample& y, const LinearScan& scan = {});

}  // namespace obf
