#include "obf/mts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "obf/linear.hpp"
#include "obf/rng.hpp"

namespace obf {

std::uint64_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    constexpr auto max = std::numeric_limits<std::uint64_t>::max();
    unsigned __int128 acc = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        acc = acc * (n - k + i) / i;
        if (acc > max) return max;
    }
    return static_cast<std::uint64_t>(acc);
}

Combinations::Combinations(std::size_t n, std::size_t k) : n_(n), k_(k), idx_(k) {
    if (k == 0 || k > n) fail(ErrorKind::InsufficientData, "need 1 <= k <= n, got n=" + std::to_string(n) + " k=" + std::to_string(k));
    for (std::size_t i = 0; i < k; ++i) idx_[i] = i;
}

void Combinations::next() {
    if (done_) return;
    std::size_t i = k_;
    while (i > 0) {
        --i;
        if (idx_[i] < n_ - k_ + i) {
            ++idx_[i];
            for (std::size_t j = i + 1; j < k_; ++j) idx_[j] = idx_[j - 1] + 1;
            return;
        }
    }
    done_ = true;
}

std::vector<TrainingIndex> enumerate(std::size_t n, std::size_t k, std::uint64_t cap) {
    if (k == 0 || k > n) fail(ErrorKind::InsufficientData, "need 1 <= k <= n, got n=" + std::to_string(n) + " k=" + std::to_string(k));
    std::uint64_t total = binomial(n, k);
    if (total > cap) fail(ErrorKind::DomainViolation, "C(n,k) exceeds the enumeration cap; use random subsampling");
    std::vector<TrainingIndex> out;
    out.reserve(static_cast<std::size_t>(total));
    for (Combinations c(n, k); !c.done(); c.next()) out.push_back(c.index());
    return out;
}

namespace {

TrainingIndex floyd_subset(Rng& rng, std::size_t n, std::size_t k) {
    std::set<std::size_t> chosen;
    for (std::size_t j = n - k; j < n; ++j) {
        std::size_t t = static_cast<std::size_t>(rng.below(j + 1));
        if (!chosen.insert(t).second) chosen.insert(j);
    }
    return {std::vector<std::size_t>(chosen.begin(), chosen.end())};
}

}  // namespace

std::vector<TrainingIndex> random_subsample(std::size_t n, std::size_t k, std::size_t count, std::uint64_t seed) {
    if (count == 0) fail(ErrorKind::DomainViolation, "subsample count must be positive");
    if (k == 0 || k > n) fail(ErrorKind::InsufficientData, "need 1 <= k <= n");
    std::uint64_t total = binomial(n, k);
    if (count > total) fail(ErrorKind::DomainViolation, "subsample count exceeds C(n,k)");

    Rng rng(seed);
    std::vector<TrainingIndex> out;
    out.reserve(count);
    // Dense case: shuffle the full set and keep a prefix.
    if (total <= 4 * static_cast<std::uint64_t>(count) && total <= default_enumeration_cap) {
        auto all = enumerate(n, k);
        for (std::size_t i = 0; i < count; ++i) {
            std::size_t j = i + static_cast<std::size_t>(rng.below(all.size() - i));
            std::swap(all[i], all[j]);
            out.push_back(all[i]);
        }
        return out;
    }
    std::set<TrainingIndex> seen;
    while (out.size() < count) {
        auto t = floyd_subset(rng, n, k);
        if (seen.insert(t).second) out.push_back(std::move(t));
    }
    return out;
}

std::vector<TrainingIndex> materialize(const MtsEnumeration& plan, std::uint64_t cap) {
    if (const auto* r = std::get_if<RandomSubsample>(&plan.mode)) return random_subsample(plan.n, plan.k, r->count, r->seed);
    return enumerate(plan.n, plan.k, cap);
}

Sample subsample(const Sample& sample, const TrainingIndex& ell) {
    Sample out;
    out.label = sample.label;
    out.values.reserve(ell.k());
    for (auto i : ell.indices) {
        if (i >= sample.size()) fail(ErrorKind::DomainViolation, "training index out of range");
        out.values.push_back(sample.values[i]);
    }
    return out;
}

namespace {

bool is_count(double y) { return y >= 0.0 && std::floor(y) == y; }

struct Properness {
    const Sample& s;
    const TrainingIndex& ell;

    double at(std::size_t j) const { return s.values[ell.indices[j]]; }

    bool operator()(const NormalScale&) const { return ell.k() == 2 && at(0) != at(1); }
    bool operator()(const NormalMeanKnownVar&) const { return ell.k() == 1; }
    bool operator()(const NormalMeanUnknownVar&) const { return ell.k() == 2 && at(0) != at(1); }
    bool operator()(const SimpleNormalMean&) const { return ell.k() == 1; }
    bool operator()(const Exponential&) const { return ell.k() == 1 && at(0) > 0.0; }
    bool operator()(const PoissonVsGeometric&) const { return ell.k() == 1 && is_count(at(0)); }
    bool operator()(const PoissonVsNegBinomial&) const { return ell.k() == 1 && is_count(at(0)) && at(0) >= 1.0; }
    bool operator()(const NestedLinear& t) const {
        return row_subset_proper(t.A0, t.A1, s, ell, t.q0, t.q1);
    }
    bool operator()(const OneWayAnova& t) const {
        auto d = anova_design(t.group_sizes, t.prior_kind);
        return row_subset_proper(d.A0, d.A1, s, ell, d.q0, d.q1);
    }
};

}  // namespace

bool is_proper(const Sample& sample, const ModelTest& test, const TrainingIndex& ell) {
    for (auto i : ell.indices) {
        if (i >= sample.size()) return false;
    }
    return std::visit(Properness{sample, ell}, test);
}

std::vector<TrainingIndex> filter_proper(const Sample& sample, const ModelTest& test,
                                         const std::vector<TrainingIndex>& candidates) {
    std::vector<TrainingIndex> out;
    for (const auto& c : candidates) {
        if (is_proper(sample, test, c)) out.push_back(c);
    }
    return out;
}

}  // namespace obf
