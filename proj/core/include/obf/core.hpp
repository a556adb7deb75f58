#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace obf {

enum class ErrorKind {
    ImproperTrainingSample,
    NonExistentBound,
    RankDeficientDesign,
    DomainViolation,
    InsufficientData,
};

const char* to_string(ErrorKind kind);

class EvidenceError : public std::runtime_error {
public:
    EvidenceError(ErrorKind kind, const std::string& detail);
    ErrorKind kind() const noexcept { return kind_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::string detail_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& detail);

/// A non-negative quantity held as its natural log, with an explicit flag for exact zero.
struct LogValue {
    double log_magnitude = 0.0;
    bool is_zero = false;

    static LogValue from_log(double log_value);
    static LogValue from_linear(double value);
    static LogValue zero() { return {0.0, true}; }
    static LogValue one() { return {0.0, false}; }

    double log() const;
    double log10() const;
    double linear() const;

    friend LogValue operator*(LogValue a, LogValue b);
    friend LogValue operator/(LogValue a, LogValue b);
    friend bool operator<(LogValue a, LogValue b);
    friend bool operator<=(LogValue a, LogValue b) { return !(b < a); }
};

double log_sum_exp(std::span<const double> xs);
double log_mean_exp(std::span<const double> xs);
// Arithmetic mean of the underlying linear values.
LogValue mean(std::span<const LogValue> values);

struct Sample {
    std::vector<double> values;
    std::string label;

    std::size_t size() const { return values.size(); }
    bool empty() const { return values.empty(); }
    double operator[](std::size_t i) const { return values[i]; }
};

enum class Direction { B01, B10 };

LogValue reciprocal(LogValue value, Direction from_direction);

struct TrainingIndex {
    std::vector<std::size_t> indices;

    std::size_t k() const { return indices.size(); }
    friend auto operator<=>(const TrainingIndex&, const TrainingIndex&) = default;
    friend bool operator==(const TrainingIndex&, const TrainingIndex&) = default;
};

enum class Variant {
    TheoreticalLower01,
    TheoreticalUpper10,
    EmpiricalLower01,
    EmpiricalUpper10,
    AIBF10,
    EIBF10,
    SPBF10,
    EPBF10,
    GS10,
    Plain01,
};

const char* to_string(Variant v);

using Attainer = std::variant<std::monostate, TrainingIndex, double>;

struct BoundReport {
    Variant variant = Variant::Plain01;
    LogValue value;
    Attainer attainer;
    std::string notes;
};

// Lower01 <-> Upper10 for the same variant family; value becomes its reciprocal.
BoundReport flip(const BoundReport& report);

struct BoundPair {
    BoundReport upper10;
    BoundReport lower01;
};

BoundPair make_pair_from_upper10(BoundReport upper10);

struct ChainCheck {
    LogValue aibf01;
    LogValue lower01_emp;
    bool ordered = false;
};

ChainCheck bound_chain_check(LogValue b01_full, std::span<const LogValue> b01_mts_values);

// Index of the largest value; ties resolved to the smallest index.
std::size_t argmax_first(std::span<const double> xs);

}  // namespace obf
