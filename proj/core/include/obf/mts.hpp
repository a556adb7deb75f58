#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "obf/core.hpp"
#include "obf/model_test.hpp"

namespace obf {

inline constexpr std::uint64_t default_enumeration_cap = 10'000'000;

// C(n,k), saturating at UINT64_MAX.
std::uint64_t binomial(std::size_t n, std::size_t k);

// Odometer over the k-subsets of {0..n-1} in lexicographic order.
class Combinations {
public:
    Combinations(std::size_t n, std::size_t k);

    bool done() const { return done_; }
    const std::vector<std::size_t>& current() const { return idx_; }
    TrainingIndex index() const { return {idx_}; }
    void next();

private:
    std::size_t n_;
    std::size_t k_;
    std::vector<std::size_t> idx_;
    bool done_ = false;
};

struct Exhaustive {};
struct RandomSubsample {
    std::size_t count;
    std::uint64_t seed;
};

struct MtsEnumeration {
    std::size_t n;
    std::size_t k;
    std::variant<Exhaustive, RandomSubsample> mode;
};

std::vector<TrainingIndex> enumerate(std::size_t n, std::size_t k, std::uint64_t cap = default_enumeration_cap);
std::vector<TrainingIndex> random_subsample(std::size_t n, std::size_t k, std::size_t count, std::uint64_t seed);
std::vector<TrainingIndex> materialize(const MtsEnumeration& plan, std::uint64_t cap = default_enumeration_cap);

// Both marginals of the training sample are finite and positive.
bool is_proper(const Sample& sample, const ModelTest& test, const TrainingIndex& ell);

std::vector<TrainingIndex> filter_proper(const Sample& sample, const ModelTest& test,
                                         const std::vector<TrainingIndex>& candidates);

Sample subsample(const Sample& sample, const TrainingIndex& ell);

}  // namespace obf
