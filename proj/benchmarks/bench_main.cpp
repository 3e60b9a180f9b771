#include <benchmark/benchmark.h>

#include <random>

#include "skl/enumeration.hpp"
#include "skl/kernel.hpp"
#include "skl/siegel.hpp"
#include "skl/volumes.hpp"

namespace {

using skl::siegel::SiegelPoint;

SiegelPoint sample_point(int g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-0.4, 0.4);
  skl::matkit::RealMatrix x(g, g), b(g, g);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) b(i, j) = uni(rng);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j <= i; ++j) {
      const double v = uni(rng);
      x(i, j) = v;
      x(j, i) = v;
    }
  auto y = (1.0 / g) * (b * skl::matkit::transpose(b)) +
           0.25 * skl::matkit::RealMatrix::identity(g);
  return SiegelPoint(x, y);
}

void bm_distance(benchmark::State& state) {
  const int g = static_cast<int>(state.range(0));
  const auto z = sample_point(g, 1);
  const auto w = sample_point(g, 2);
  for (auto _ : state) benchmark::DoNotOptimize(skl::siegel::distance(z, w));
}
BENCHMARK(bm_distance)->Arg(2)->Arg(3)->Arg(4);

void bm_eigen_sym(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  skl::matkit::RealMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      const double v = uni(rng);
      a(i, j) = v;
      a(j, i) = v;
    }
  for (auto _ : state) benchmark::DoNotOptimize(skl::matkit::eigen_sym(a));
}
BENCHMARK(bm_eigen_sym)->Arg(4)->Arg(8)->Arg(16);

void bm_enumerate(benchmark::State& state) {
  const int len = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(skl::enumeration::standard_cache(2, len));
}
BENCHMARK(bm_enumerate)->Arg(2)->Arg(3);

void bm_majorant(benchmark::State& state) {
  const auto cache = skl::enumeration::standard_cache(2, 3);
  const skl::kernel::KernelParams p{2, 10, 1.0};
  const auto z = SiegelPoint::unit_imaginary(2);
  const auto w = sample_point(2, 3);
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(skl::kernel::majorant_sum(
        p, z, w, cache.elements, skl::kernel::SumMode::kahan, threads));
}
BENCHMARK(bm_majorant)->Arg(1)->Arg(4);

void bm_polydisk(benchmark::State& state) {
  const int g = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(skl::volumes::polydisk_volume(g, 1.5));
}
BENCHMARK(bm_polydisk)->Arg(2)->Arg(3);

void bm_log_gamma(benchmark::State& state) {
  double x = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(skl::volumes::log_gamma(x));
    x += 0.5;
    if (x > 400.0) x = 0.5;
  }
}
BENCHMARK(bm_log_gamma);

}  // namespace

BENCHMARK_MAIN();
