#include <benchmark/benchmark.h>

#include <arithdiff/forms.hpp>

using namespace arithdiff;

static void BM_PsiSerreTate(benchmark::State &state)
{
    for (auto _ : state) {
        benchmark::DoNotOptimize(psi_serretate(5, state.range(0)));
    }
}
BENCHMARK(BM_PsiSerreTate)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_FrameAndFe0(benchmark::State &state)
{
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_fe0(std::vector<long>{5, 7}, state.range(0)));
    }
}
BENCHMARK(BM_FrameAndFe0)->Arg(30)->Arg(50)->Unit(benchmark::kMillisecond);

static void BM_Covariance(benchmark::State &state)
{
    const auto fe0 = build_fe0(std::vector<long>{5, 7}, 30);
    for (auto _ : state) {
        benchmark::DoNotOptimize(covariance_check(fe0, 2, 1));
    }
}
BENCHMARK(BM_Covariance)->Unit(benchmark::kMillisecond);

static void BM_DeltaE4(benchmark::State &state)
{
    const auto e4 = eisenstein(4, state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(delta_fourier_expand(e4, 1, 5, 8));
    }
}
BENCHMARK(BM_DeltaE4)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_Continuation(benchmark::State &state)
{
    const auto frame = MultiPrimeFrame::make({5, 7}, 50);
    const auto fe0 = build_fe0(frame);
    const std::vector<FamilyMember> family{reduce_mod(fe0, 1, 8), reduce_mod(fe0, 2, 8)};
    for (auto _ : state) {
        benchmark::DoNotOptimize(continuation_check(family));
    }
}
BENCHMARK(BM_Continuation)->Unit(benchmark::kMillisecond);

static void BM_RankCheck(benchmark::State &state)
{
    for (auto _ : state) {
        benchmark::DoNotOptimize(basis_independence_check({5, 7}, {2, 2}, 50));
    }
}
BENCHMARK(BM_RankCheck)->Unit(benchmark::kMillisecond);

static void BM_PointCount(benchmark::State &state)
{
    const EllipticCurveQ curve{0, -1, 1, -10, -20, "11a1"};
    for (auto _ : state) {
        benchmark::DoNotOptimize(count_points(curve, state.range(0)));
    }
}
BENCHMARK(BM_PointCount)->Arg(97)->Arg(10007);
BENCHMARK_MAIN();
