#include <benchmark/benchmark.h>

#include "griddesigns/constructions.hpp"
#include "griddesigns/criteria.hpp"
#include "griddesigns/search.hpp"
#include "griddesigns/symmetry.hpp"

using namespace gd;

namespace {

const Block& des3_block(int p) {
  static const Block b2 = des3(2);
  static const Block b3 = des3(3);
  return p == 2 ? b2 : b3;
}

void bm_check_2design(benchmark::State& state, Method m, int p) {
  const Block& b = des3_block(p);
  for (auto _ : state) benchmark::DoNotOptimize(check_2design(b, m).is_2_design);
}

void bm_full_array(benchmark::State& state) {
  const Block& b = des3_block(3);
  for (auto _ : state) benchmark::DoNotOptimize(full_array(b, true).k);
}

void bm_stabilizer_catalog(benchmark::State& state) {
  const CatalogRow& row = catalog()[static_cast<std::size_t>(state.range(0))];
  Block b(GridShape(row.shape), row.block);
  for (auto _ : state) benchmark::DoNotOptimize(stabilizer(b).order);
}

void bm_stabilizer_des3(benchmark::State& state) {
  const Block& b = des3_block(2);
  for (auto _ : state) benchmark::DoNotOptimize(stabilizer(b).order);
}

void bm_stabilizer_des4(benchmark::State& state) {
  Block b = des4_2();
  for (auto _ : state) benchmark::DoNotOptimize(stabilizer(b).order);
}

void bm_block_search(benchmark::State& state) {
  GridShape shape({2, 2, 4});
  for (auto _ : state) benchmark::DoNotOptimize(block_search(shape, 6).hits.size());
}

void bm_point_codec(benchmark::State& state) {
  GridShape shape({7, 3, 13});
  for (auto _ : state)
    for (std::uint64_t i = 0; i < 273; ++i)
      benchmark::DoNotOptimize(point_index(shape, point_at(shape, i)));
}

}  // namespace

BENCHMARK_CAPTURE(bm_check_2design, arrays_p2, Method::arrays, 2);
BENCHMARK_CAPTURE(bm_check_2design, pairs_p2, Method::pairs, 2);
BENCHMARK_CAPTURE(bm_check_2design, alternating_p2, Method::alternating, 2);
BENCHMARK_CAPTURE(bm_check_2design, arrays_p3, Method::arrays, 3);
BENCHMARK(bm_full_array);
BENCHMARK(bm_stabilizer_catalog)->DenseRange(0, 3)->Arg(9);
BENCHMARK(bm_stabilizer_des3);
BENCHMARK(bm_stabilizer_des4)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_block_search)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_point_codec);

BENCHMARK_MAIN();
