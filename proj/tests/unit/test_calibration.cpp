#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "obf/calibration.hpp"
#include "obf/normal.hpp"
#include "oracles.hpp"

using namespace obf;

TEST(Robust, Branches) {
    EXPECT_NEAR(robust_lower_bound(1.0 / std::numbers::e), 1.0, 1e-15);
    EXPECT_EQ(robust_lower_bound(0.5), 1.0);
    EXPECT_EQ(robust_lower_bound(1.0), 1.0);
    EXPECT_EQ(robust_lower_bound(0.0), 0.0);
    // 0.05 * e * ln 20, evaluated to 30 digits offline
    EXPECT_NEAR(robust_lower_bound(0.05), 0.407162230106506, 1e-12);
    EXPECT_NEAR(robust_lower_bound(PValue{0.01, PSource::Supplied}), 0.01 * std::numbers::e * std::log(100.0), 1e-15);
    EXPECT_THROW(robust_lower_bound(-0.1), EvidenceError);
    EXPECT_THROW(robust_lower_bound(1.1), EvidenceError);
}

TEST(Robust, MonotoneAndBounded) {
    double prev = 0.0;
    for (int i = 1; i <= 1000; ++i) {
        double p = i / 1000.0;
        double r = robust_lower_bound(p);
        EXPECT_LE(r, 1.0);
        if (p < 1.0 / std::numbers::e) EXPECT_GT(r, prev);
        EXPECT_GE(r, prev);
        prev = r;
    }
    // continuity at 1/e
    const double c = 1.0 / std::numbers::e;
    EXPECT_NEAR(robust_lower_bound(c * (1 - 1e-9)), 1.0, 1e-12);
}

TEST(Wilks, AtMle) {
    Sample y{{1.0, 3.0}, ""};
    EXPECT_NEAR(exp_wilks_pvalue(y, 0.5).p, 1.0, 1e-12);
    Sample flat{std::vector<double>(100, 1.0), ""};
    EXPECT_NEAR(exp_wilks_pvalue(flat, 1.0).p, 1.0, 1e-12);
    EXPECT_EQ(exp_wilks_pvalue(flat, 1.0).source, PSource::Wilks);
}

TEST(Wilks, AgainstChiSquareTable) {
    // n=50, S=80, lambda0=1: ts = 2(S - n - n log(S/n))
    const double n = 50.0, S = 80.0;
    const double ts = 2.0 * (S - n - n * std::log(S / n));
    std::vector<double> v(50, S / n);
    auto p = exp_wilks_pvalue(Sample{v, ""}, 1.0);
    EXPECT_GT(ts, oracle::chi2_quantile(0.95, 1));
    EXPECT_LT(p.p, 0.05);
    EXPECT_NEAR(p.p, 1.0 - oracle::gamma_p(0.5, ts / 2.0), 1e-10);
}

TEST(Wilks, MonotoneAwayFromMle) {
    double prev = 1.1;
    for (double mean : {1.0, 1.2, 1.5, 2.0, 3.0}) {
        std::vector<double> v(20, mean);
        double p = exp_wilks_pvalue(Sample{v, ""}, 1.0).p;
        EXPECT_LT(p, prev);
        prev = p;
    }
    prev = 1.1;
    for (double mean : {1.0, 0.8, 0.5, 0.3}) {
        std::vector<double> v(20, mean);
        double p = exp_wilks_pvalue(Sample{v, ""}, 1.0).p;
        EXPECT_LT(p, prev);
        prev = p;
    }
}

TEST(Wilks, Domain) {
    EXPECT_THROW(exp_wilks_pvalue(Sample{{0.0, 0.0}, ""}, 1.0), EvidenceError);
    EXPECT_THROW(exp_wilks_pvalue(Sample{{1.0}, ""}, -1.0), EvidenceError);
}

TEST(Gs, SimpleMeanEqualsUpperBound) {
    auto r0 = gs_bayes_factor(SimpleNormalMean{}, Sample{{0.0}, ""});
    EXPECT_NEAR(r0.value.log(), 0.0, 1e-15);
    EXPECT_EQ(r0.variant, Variant::GS10);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        Sample y{oracle::normal_data(5 + seed, 0.3, 1.0, seed), ""};
        auto gs = gs_bayes_factor(SimpleNormalMean{}, y);
        EXPECT_EQ(gs.value.log(), simple_mean_upper10(y).value.log());
        double ss = 0.0;
        for (double v : y.values) ss += v * v;
        const double expect = (y.size() - 1.0) * 0.5 * std::log(2.0 * std::numbers::pi) + 0.5 * ss;
        EXPECT_NEAR(gs.value.log(), expect, 1e-12);
    }
}

TEST(Gs, ExponentialNonExistent) {
    for (ModelTest t : {ModelTest{Exponential{1.0}}, ModelTest{PoissonVsGeometric{}}}) {
        try {
            gs_bayes_factor(t, Sample{{1.0, 2.0}, ""});
            FAIL();
        } catch (const EvidenceError& e) {
            EXPECT_EQ(e.kind(), ErrorKind::NonExistentBound);
        }
    }
}
