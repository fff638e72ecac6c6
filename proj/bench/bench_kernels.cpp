#include <benchmark/benchmark.h>

#include <numbers>

#include "landau/multfunc.hpp"
#include "landau/orthogonality.hpp"
#include "landau/sieve.hpp"
#include "landau/stats.hpp"

using namespace landau;

namespace {

const FieldSpec& gauss() {
    static const FieldSpec f = parse_field({1, 0, 1});
    return f;
}

void BM_PrimeTable(benchmark::State& st) {
    const Norm X = static_cast<Norm>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(prime_ideals_up_to(gauss(), X));
}

void BM_PrimeTableSerial(benchmark::State& st) {
    const Norm X = static_cast<Norm>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(serial::prime_ideals_up_to(gauss(), X));
}

void BM_Enumerate(benchmark::State& st) {
    const Norm X = static_cast<Norm>(st.range(0));
    const auto table = prime_ideals_up_to(gauss(), X);
    for (auto _ : st) benchmark::DoNotOptimize(ideals_up_to(table, X, EnumerationMode::Full));
}

void BM_EnumerateSerial(benchmark::State& st) {
    const Norm X = static_cast<Norm>(st.range(0));
    const auto table = prime_ideals_up_to(gauss(), X);
    for (auto _ : st) benchmark::DoNotOptimize(serial::ideals_up_to(table, X, EnumerationMode::Full));
}

void BM_WeylProfile(benchmark::State& st) {
    const auto e = ideals_up_to(gauss(), static_cast<Norm>(st.range(0)));
    for (auto _ : st) {
        const NormProfile prof(e);
        benchmark::DoNotOptimize(weyl_sum(prof, std::numbers::sqrt2));
    }
}

void BM_WeylSerial(benchmark::State& st) {
    const auto e = ideals_up_to(gauss(), static_cast<Norm>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(serial::weyl_sum(e, std::numbers::sqrt2));
}

void BM_OrthogonalityLhs(benchmark::State& st) {
    const OrthogonalityContext ctx(gauss(), static_cast<Norm>(st.range(0)));
    const auto sets = random_ideal_sets(ctx.ideals(), 4, 1, 40, 200);
    for (auto _ : st)
        for (const auto& S : sets) benchmark::DoNotOptimize(prop2_sides(S, ctx).lhs);
}

void BM_OrthogonalityLhsSerial(benchmark::State& st) {
    const OrthogonalityContext ctx(gauss(), static_cast<Norm>(st.range(0)));
    const auto sets = random_ideal_sets(ctx.ideals(), 4, 1, 40, 200);
    for (auto _ : st)
        for (const auto& S : sets) benchmark::DoNotOptimize(serial::prop2_lhs(S, ctx.ideals()));
}

void BM_Convolve(benchmark::State& st) {
    const auto d = make_domain(gauss(), static_cast<Norm>(st.range(0)));
    const auto F = liouville_table(d), G = one_table(d);
    for (auto _ : st) benchmark::DoNotOptimize(dirichlet_convolve(F, G));
}

void BM_ConvolveSerial(benchmark::State& st) {
    const auto d = make_domain(gauss(), static_cast<Norm>(st.range(0)));
    const auto F = liouville_table(d), G = one_table(d);
    for (auto _ : st) benchmark::DoNotOptimize(serial::dirichlet_convolve(F, G));
}

}  // namespace

BENCHMARK(BM_PrimeTable)->Arg(1'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PrimeTableSerial)->Arg(1'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Enumerate)->Arg(1'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumerateSerial)->Arg(1'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WeylProfile)->Arg(1'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WeylSerial)->Arg(1'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OrthogonalityLhs)->Arg(100'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OrthogonalityLhsSerial)->Arg(100'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Convolve)->Arg(5'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConvolveSerial)->Arg(5'000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
