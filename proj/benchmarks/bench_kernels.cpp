// Microbenchmarks for the hot kernels: unfolding, Gram products, mode
// products and the two end-to-end compressors at a reduced desk scale.

#include <random>

#include <benchmark/benchmark.h>

#include "tensvd/bench.hpp"
#include "tensvd/hosvd.hpp"
#include "tensvd/svd.hpp"
#include "tensvd/tensvd.hpp"
#include "tensvd/threads.hpp"

namespace {

tensvd::DenseTensor small_hd() {
    // 1/16th HD keeps iterations short while preserving the shape profile.
    std::mt19937_64 rng(1);
    return tensvd::make_uniform_tensor({320, 180, 3}, rng);
}

void BM_unfold(benchmark::State& state) {
    const tensvd::DenseTensor t = small_hd();
    const int mode = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(tensvd::unfold(t, mode));
}
BENCHMARK(BM_unfold)->Arg(0)->Arg(1)->Arg(2);

void BM_gram_matrix(benchmark::State& state) {
    const tensvd::DenseTensor t = small_hd();
    const tensvd::Matrix m = tensvd::unfold(t, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(tensvd::gram_matrix(m));
}
BENCHMARK(BM_gram_matrix)->Arg(0)->Arg(1);

void BM_mode_product(benchmark::State& state) {
    const tensvd::DenseTensor t = small_hd();
    const int mode = static_cast<int>(state.range(0));
    const std::int64_t extent = t.dims()[static_cast<std::size_t>(mode)];
    const tensvd::Matrix u = tensvd::Matrix::Random(extent / 2 + 1, extent);
    for (auto _ : state) benchmark::DoNotOptimize(tensvd::mode_n_product(t, u, mode));
}
BENCHMARK(BM_mode_product)->Arg(0)->Arg(1)->Arg(2);

void BM_leading_vectors_gram(benchmark::State& state) {
    const tensvd::DenseTensor t = small_hd();
    const tensvd::Matrix m = tensvd::unfold(t, 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            tensvd::leading_left_singular_vectors(m, 60, tensvd::SvdRoute::Gram));
}
BENCHMARK(BM_leading_vectors_gram);

void BM_compress_tensvd(benchmark::State& state) {
    const tensvd::DenseTensor t = small_hd();
    const auto target = tensvd::CompressionTarget::stored_fraction(0.1);
    for (auto _ : state) benchmark::DoNotOptimize(tensvd::compress(t, target));
}
BENCHMARK(BM_compress_tensvd)->Unit(benchmark::kMillisecond);

void BM_compress_thosvd(benchmark::State& state) {
    const tensvd::DenseTensor t = small_hd();
    const auto ranks = tensvd::ranks_for_stored_fraction(t.dims(), 0.1);
    for (auto _ : state) benchmark::DoNotOptimize(tensvd::t_hosvd(t, ranks));
}
BENCHMARK(BM_compress_thosvd)->Unit(benchmark::kMillisecond);

} // namespace

int main(int argc, char** argv) {
    tensvd::configure_threads_from_env();
    benchmark::Initialize(&argc, argv);
    if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
    benchmark::RunSpecifiedBenchmarks();
    return 0;
}
