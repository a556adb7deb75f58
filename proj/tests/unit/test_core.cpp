#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "obf/core.hpp"
#include "obf/model_test.hpp"

using namespace obf;

namespace {

void expect_kind(ErrorKind kind, auto&& fn) {
    try {
        fn();
        ADD_FAILURE() << "expected " << to_string(kind);
    } catch (const EvidenceError& e) {
        EXPECT_EQ(e.kind(), kind) << e.what();
    }
}

}  // namespace

TEST(LogValue, ArithmeticIsAdditionOfLogs) {
    auto a = LogValue::from_linear(2.0), b = LogValue::from_linear(8.0);
    EXPECT_NEAR((a * b).log(), std::log(16.0), 1e-15);
    EXPECT_NEAR((b / a).log(), std::log(4.0), 1e-15);
    EXPECT_TRUE(a < b);
    EXPECT_TRUE(a <= a);
}

TEST(LogValue, ExactZeroIsExplicit) {
    auto z = LogValue::zero();
    EXPECT_TRUE(z.is_zero);
    EXPECT_EQ(z.linear(), 0.0);
    EXPECT_TRUE(std::isinf(z.log()));
    EXPECT_TRUE((z * LogValue::from_linear(3.0)).is_zero);
    EXPECT_TRUE(z < LogValue::from_log(-1e6));
    expect_kind(ErrorKind::DomainViolation, [] { LogValue::one() / LogValue::zero(); });
    expect_kind(ErrorKind::DomainViolation, [] { LogValue::from_linear(-1.0); });
}

TEST(LogValue, HugeMagnitudesStayFinite) {
    auto big = LogValue::from_log(5000.0);
    EXPECT_EQ((big * big).log(), 10000.0);
    EXPECT_NEAR(big.log10(), 5000.0 / std::log(10.0), 1e-9);
}

TEST(LogSumExp, MatchesDirectSum) {
    std::vector<double> xs{std::log(1.0), std::log(2.0), std::log(3.0)};
    EXPECT_NEAR(log_sum_exp(xs), std::log(6.0), 1e-15);
    EXPECT_NEAR(log_mean_exp(xs), std::log(2.0), 1e-15);
    std::vector<double> far{-1000.0, -1000.0};
    EXPECT_NEAR(log_sum_exp(far), -1000.0 + std::log(2.0), 1e-12);
}

TEST(Reciprocal, Examples) {
    EXPECT_EQ(reciprocal(LogValue::one(), Direction::B01).log(), 0.0);
    EXPECT_NEAR(reciprocal(LogValue::from_linear(4.0), Direction::B01).linear(), 0.25, 1e-15);
    expect_kind(ErrorKind::DomainViolation, [] { reciprocal(LogValue::zero(), Direction::B10); });
    auto v = LogValue::from_log(3.25);
    EXPECT_EQ(v.log() + reciprocal(v, Direction::B01).log(), 0.0);
}

TEST(BoundChain, AllEqual) {
    std::vector<LogValue> mts(3, LogValue::one());
    auto c = bound_chain_check(LogValue::one(), mts);
    EXPECT_NEAR(c.aibf01.log(), 0.0, 1e-15);
    EXPECT_NEAR(c.lower01_emp.log(), 0.0, 1e-15);
    EXPECT_TRUE(c.ordered);
}

TEST(BoundChain, HandArithmetic) {
    // mean of {1,4} is 2.5, sup is 4
    std::vector<LogValue> mts{LogValue::from_linear(1.0), LogValue::from_linear(4.0)};
    auto c = bound_chain_check(LogValue::from_linear(2.0), mts);
    EXPECT_NEAR(c.lower01_emp.linear(), 0.5, 1e-15);
    EXPECT_NEAR(c.aibf01.linear(), 0.8, 1e-15);
    EXPECT_TRUE(c.ordered);
}

TEST(BoundChain, ExactZeroRejected) {
    std::vector<LogValue> mts{LogValue::one(), LogValue::zero()};
    expect_kind(ErrorKind::DomainViolation, [&] { bound_chain_check(LogValue::one(), mts); });
    expect_kind(ErrorKind::InsufficientData, [] { bound_chain_check(LogValue::one(), {}); });
}

TEST(BoundReport, FlipSwapsVariantAndInverts) {
    BoundReport up{Variant::EmpiricalUpper10, LogValue::from_log(2.5), TrainingIndex{{1}}, "x"};
    auto pair = make_pair_from_upper10(up);
    EXPECT_EQ(pair.lower01.variant, Variant::EmpiricalLower01);
    EXPECT_EQ(pair.lower01.value.log(), -2.5);
    EXPECT_EQ(std::get<TrainingIndex>(pair.lower01.attainer), TrainingIndex{{1}});
    EXPECT_EQ(flip(pair.lower01).variant, Variant::EmpiricalUpper10);
    BoundReport a{Variant::AIBF10, LogValue::one(), {}, ""};
    expect_kind(ErrorKind::DomainViolation, [&] { flip(a); });
}

TEST(Argmax, TiesGoToSmallestIndex) {
    std::vector<double> xs{1.0, 3.0, 3.0, 2.0};
    EXPECT_EQ(argmax_first(xs), 1u);
    TrainingIndex a{{0, 3}}, b{{1, 2}};
    EXPECT_LT(a, b);
}

TEST(ModelTest, ValidationAndSizes) {
    expect_kind(ErrorKind::DomainViolation, [] { validate(ModelTest{Exponential{-1.0}}); });
    expect_kind(ErrorKind::DomainViolation, [] { validate(ModelTest{NormalScale{0.0}}); });
    expect_kind(ErrorKind::DomainViolation, [] { validate(ModelTest{PoissonVsNegBinomial{0}}); });
    EXPECT_EQ(mts_size(NormalScale{}), 2u);
    EXPECT_EQ(mts_size(Exponential{}), 1u);
    EXPECT_EQ(mts_size(NormalMeanUnknownVar{}), 2u);
    EXPECT_EQ(mts_size(OneWayAnova{{2, 3, 4}, AnovaPrior::FullJeffreys}), 4u);
    NestedLinear nl{Eigen::MatrixXd::Ones(5, 1), Eigen::MatrixXd::Random(5, 2), 0, 0};
    EXPECT_EQ(mts_size(nl), 3u);
    EXPECT_STREQ(family_name(PoissonVsGeometric{}), "poisson-vs-geometric");
}
