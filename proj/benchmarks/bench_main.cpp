#include <benchmark/benchmark.h>

#include <random>

#include "bellbound/bellbound.hpp"

using namespace bellbound;

namespace {

Mat3x9 random_tensor(std::uint64_t seed) {
    std::mt19937_64 g(seed);
    Mat3x9 t{};
    for (auto& row : t)
        for (double& x : row) x = states::gaussian(g);
    return t;
}

const StrengthSextuple kStrengths(0.9, 0.7, 0.8, 0.95, 0.6, 0.85);
const Angles kAngles{1.1, 0.7, 2.3};

void BM_SingularValues3x9(benchmark::State& st) {
    const Mat3x9 t = random_tensor(1);
    for (auto _ : st) benchmark::DoNotOptimize(singular_values_3x9(t));
}
BENCHMARK(BM_SingularValues3x9);

void BM_IPlusMinus(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(mermin::i_plus_minus(kStrengths, kAngles));
}
BENCHMARK(BM_IPlusMinus);

void BM_JPlusMinus(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(svetlichny::j_plus_minus(kStrengths, kAngles));
}
BENCHMARK(BM_JPlusMinus);

void BM_MerminUnbiased(benchmark::State& st) {
    const Mat3x9 t = random_tensor(2);
    for (auto _ : st) benchmark::DoNotOptimize(mermin::unbiased(t, kStrengths, kAngles));
}
BENCHMARK(BM_MerminUnbiased);

void BM_Decompose(benchmark::State& st) {
    const ThreeQubitState s = states::build(states::StateSpec::random(3));
    for (auto _ : st) benchmark::DoNotOptimize(decompose(s));
}
BENCHMARK(BM_Decompose);

void BM_SeeSaw(benchmark::State& st) {
    const CorrelationDecomposition d = decompose(states::build(states::StateSpec::random(4)));
    oracle::SeeSawConfig cfg;
    cfg.restarts = static_cast<int>(st.range(0));
    for (auto _ : st)
        benchmark::DoNotOptimize(oracle::see_saw_maximize(d, kStrengths, {}, OperatorKind::mermin, cfg));
}
BENCHMARK(BM_SeeSaw)->Arg(1)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_KBruteForce(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(oracle::k_brute_force(kStrengths));
}
BENCHMARK(BM_KBruteForce);

}  // namespace
BENCHMARK_MAIN();
