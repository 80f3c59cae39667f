// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <random>

#include "zp/elemdiv.hpp"
#include "zp/expander.hpp"
#include "zp/finquot.hpp"

namespace {

void BM_closure_serial(benchmark::State& state) {
  const auto gens = zp::standard_generators(2);
  const auto q = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(zp::generated_subgroup_serial(gens, q).size());
}

void BM_closure_parallel(benchmark::State& state) {
  const auto gens = zp::standard_generators(2);
  const auto q = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(zp::generated_subgroup(gens, q).size());
}

void BM_cayley_serial(benchmark::State& state) {
  const auto h = zp::generated_subgroup(zp::standard_generators(2), 3);
  for (auto _ : state) benchmark::DoNotOptimize(zp::build_cayley_serial(h, h.generators()).size());
}

void BM_cayley_parallel(benchmark::State& state) {
  const auto h = zp::generated_subgroup(zp::standard_generators(2), 3);
  for (auto _ : state) benchmark::DoNotOptimize(zp::build_cayley(h, h.generators(), true).size());
}

std::vector<zp::SimilitudeElement> batch_inputs() {
  std::mt19937_64 rng(7);
  const auto gens = zp::standard_generators(2);
  std::vector<zp::SimilitudeElement> out;
  const auto delta = zp::SimilitudeElement(zp::RatMatrix::diagonal({1, 2, 12, 6}));
  for (int i = 0; i < 64; ++i) {
    auto x = zp::SimilitudeElement::identity(2);
    for (int k = 0; k < 12; ++k) x = x * gens[rng() % gens.size()];
    out.push_back(x * delta * x.inverse());
  }
  return out;
}

void BM_decompose_serial(benchmark::State& state) {
  const auto inputs = batch_inputs();
  for (auto _ : state) benchmark::DoNotOptimize(zp::decompose_batch_serial(inputs).size());
}

void BM_decompose_parallel(benchmark::State& state) {
  const auto inputs = batch_inputs();
  for (auto _ : state) benchmark::DoNotOptimize(zp::decompose_batch(inputs).size());
}

}  // namespace

BENCHMARK(BM_closure_serial)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_closure_parallel)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_cayley_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_cayley_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_decompose_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_decompose_parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
