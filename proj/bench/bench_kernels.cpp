// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "signflux/kernels.hpp"

using namespace signflux;

namespace {

template <auto Fn>
void bm_r2(benchmark::State& state) {
  std::vector<std::int32_t> out(state.range(0));
  for (auto _ : state) {
    Fn(std::span<std::int32_t>(out));
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Fn>
void bm_divisors(benchmark::State& state) {
  std::vector<std::uint32_t> out(state.range(0));
  for (auto _ : state) {
    Fn(std::span<std::uint32_t>(out));
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Fn>
void bm_delta(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(Fn(state.range(0)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

std::vector<double> random_terms(std::size_t n) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  std::vector<double> t(n + 1);
  for (std::size_t i = 1; i <= n; ++i) t[i] = g(rng);
  return t;
}

template <auto Fn>
void bm_prefix(benchmark::State& state) {
  const std::size_t n = state.range(0);
  const auto terms = random_terms(n);
  std::vector<std::uint64_t> probes, bounds;
  for (std::uint64_t x = 1; x <= n; x = x * 11 / 10 + 1) probes.push_back(x);
  for (std::uint64_t x = 1; x <= n; x *= 2) bounds.push_back(x);
  bounds.push_back(n + 1);
  for (auto _ : state) benchmark::DoNotOptimize(Fn(terms, probes, bounds, 0.0));
  state.SetItemsProcessed(state.iterations() * n);
}

template <auto Fn>
void bm_signs(benchmark::State& state) {
  const std::size_t n = state.range(0);
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> pick(-1, 1);
  std::vector<std::int8_t> signs(n + 1);
  for (auto& s : signs) s = static_cast<std::int8_t>(pick(rng));
  for (auto _ : state) benchmark::DoNotOptimize(Fn(signs, 1, n));
  state.SetItemsProcessed(state.iterations() * n);
}

}  // namespace

BENCHMARK(bm_r2<kernels::serial::r2_quarter>)->Name("r2_sieve/serial")->Arg(1 << 20)->Arg(1 << 22);
BENCHMARK(bm_r2<kernels::parallel::r2_quarter>)->Name("r2_sieve/parallel")->Arg(1 << 20)->Arg(1 << 22);
BENCHMARK(bm_divisors<kernels::serial::divisor_count>)->Name("divisor_count/serial")->Arg(1 << 20)->Arg(1 << 22);
BENCHMARK(bm_divisors<kernels::parallel::divisor_count>)->Name("divisor_count/parallel")->Arg(1 << 20)->Arg(1 << 22);
BENCHMARK(bm_delta<kernels::serial::delta_coefficients>)->Name("delta/serial")->Arg(1 << 14)->Arg(1 << 16)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(bm_delta<kernels::parallel::delta_coefficients>)->Name("delta/parallel")->Arg(1 << 14)->Arg(1 << 16)
    ->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_prefix<kernels::serial::prefix_scan>)->Name("prefix_scan/serial")->Arg(1 << 20);
BENCHMARK(bm_prefix<kernels::parallel::prefix_scan>)->Name("prefix_scan/parallel")->Arg(1 << 20);
BENCHMARK(bm_signs<kernels::serial::sign_changes>)->Name("sign_changes/serial")->Arg(1 << 20);
BENCHMARK(bm_signs<kernels::parallel::sign_changes>)->Name("sign_changes/parallel")->Arg(1 << 20);

BENCHMARK_MAIN();
