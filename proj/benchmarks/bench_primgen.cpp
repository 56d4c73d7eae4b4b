#include <benchmark/benchmark.h>

#include "primgen/analysis.hpp"
#include "primgen/fft.hpp"
#include "primgen/shapes.hpp"
#include "primgen/spectrum.hpp"

using namespace primgen;

static void BM_Fft2_256(benchmark::State& state) {
    RandomStream rng(1, 0);
    RealField field(256, 256);
    for (double& v : field.data) v = rng.next_normal();
    for (auto _ : state) {
        benchmark::DoNotOptimize(forward_fft2(field));
    }
}
BENCHMARK(BM_Fft2_256);

static void BM_PinkNoiseChannel_256(benchmark::State& state) {
    std::uint64_t i = 0;
    for (auto _ : state) {
        RandomStream rng(2, i++);
        benchmark::DoNotOptimize(pink_noise_channel(256, SpectralExponent(1.0), rng));
    }
}
BENCHMARK(BM_PinkNoiseChannel_256);

static void BM_ComposePrimitives_256(benchmark::State& state) {
    std::uint64_t i = 0;
    for (auto _ : state) {
        RandomStream rng(3, i++);
        benchmark::DoNotOptimize(compose_primitives(256, 100, SizePolicy::decay(), rng));
    }
}
BENCHMARK(BM_ComposePrimitives_256);

static void BM_PrimitivesPS_256(benchmark::State& state) {
    VariantParams params;
    std::uint64_t i = 0;
    for (auto _ : state) {
        RandomStream rng(4, i++);
        benchmark::DoNotOptimize(generate_variant(Variant::PrimitivesPS, params, rng));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_PrimitivesPS_256);

static void BM_SpectrumAccumulate_256(benchmark::State& state) {
    RandomStream rng(5, 0);
    VariantParams params;
    const VariantResult r = generate_variant(Variant::PrimitivesPS, params, rng);
    for (auto _ : state) {
        SpectrumAccumulator acc(256);
        acc.add(r.image);
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(BM_SpectrumAccumulate_256);

static void BM_Ssim_256(benchmark::State& state) {
    RandomStream rng(6, 0);
    RealField a(256, 256), b(256, 256);
    for (double& v : a.data) v = rng.next_double();
    for (double& v : b.data) v = rng.next_double();
    for (auto _ : state) {
        benchmark::DoNotOptimize(ssim_uniform(a, b));
    }
}
BENCHMARK(BM_Ssim_256);

BENCHMARK_MAIN();
