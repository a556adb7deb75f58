#include <benchmark/benchmark.h>

#include "obf/discrete.hpp"
#include "obf/exponential.hpp"
#include "obf/linear.hpp"
#include "obf/montecarlo.hpp"
#include "obf/mts.hpp"
#include "obf/normal.hpp"
#include "obf/rng.hpp"
#include "obf/specialfn.hpp"

namespace {

obf::Sample exp_sample(std::size_t n, std::uint64_t seed) {
    obf::Rng rng(seed);
    obf::Sample s;
    for (std::size_t i = 0; i < n; ++i) s.values.push_back(rng.exponential(1.0));
    return s;
}

void BM_LnGamma(benchmark::State& state) {
    double x = 0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(obf::ln_gamma(x));
        x += 0.25;
        if (x > 500) x = 0.5;
    }
}
BENCHMARK(BM_LnGamma);

void BM_IncBeta(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(obf::inc_beta(4.5, 7.25, 0.3));
}
BENCHMARK(BM_IncBeta);

void BM_FQuantile(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(obf::f_quantile(0.95, 3, 20));
}
BENCHMARK(BM_FQuantile);

void BM_Enumerate(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        std::size_t count = 0;
        for (obf::Combinations c(n, 2); !c.done(); c.next()) ++count;
        benchmark::DoNotOptimize(count);
    }
}
BENCHMARK(BM_Enumerate)->Arg(100)->Arg(1000);

void BM_ExpBounds(benchmark::State& state) {
    auto s = exp_sample(static_cast<std::size_t>(state.range(0)), 7);
    for (auto _ : state) benchmark::DoNotOptimize(obf::exp_bounds(s, 1.0));
}
BENCHMARK(BM_ExpBounds)->Arg(100)->Arg(10000);

void BM_ExpEmpiricalSp(benchmark::State& state) {
    auto s = exp_sample(100, 11);
    for (auto _ : state) benchmark::DoNotOptimize(obf::exp_empirical_sp_bf10(s, 1.0));
}
BENCHMARK(BM_ExpEmpiricalSp);

void BM_ScaleBounds(benchmark::State& state) {
    obf::Rng rng(3);
    obf::Sample s;
    for (int i = 0; i < state.range(0); ++i) s.values.push_back(rng.normal(0.0, 1.0));
    for (auto _ : state) benchmark::DoNotOptimize(obf::scale_bounds(s, 1.0));
}
BENCHMARK(BM_ScaleBounds)->Arg(50)->Arg(500);

void BM_PgBounds(benchmark::State& state) {
    obf::Rng rng(5);
    obf::Sample s;
    for (int i = 0; i < state.range(0); ++i) s.values.push_back(static_cast<double>(rng.poisson(1.0)));
    for (auto _ : state) benchmark::DoNotOptimize(obf::pg_bounds(s));
}
BENCHMARK(BM_PgBounds)->Arg(100)->Arg(10000);

void BM_AnovaBounds(benchmark::State& state) {
    obf::AnovaSpec spec{{6, 6, 6}, obf::AnovaPrior::FullJeffreys};
    obf::Rng rng(9);
    obf::Sample y;
    for (std::size_t i = 0; i < spec.n(); ++i) y.values.push_back(rng.normal(0.0, 1.0));
    for (auto _ : state) benchmark::DoNotOptimize(obf::anova_bounds(spec, y));
}
BENCHMARK(BM_AnovaBounds);

void BM_Simulate(benchmark::State& state) {
    auto plan = obf::make_plan("eplogp-vs-ibf", 100, 10, 42);
    for (auto _ : state) benchmark::DoNotOptimize(obf::run(plan));
}
BENCHMARK(BM_Simulate)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
