#include <benchmark/benchmark.h>

#include <string>

#include "mealy/contracting.hpp"
#include "mealy/group.hpp"
#include "mealy/helix.hpp"
#include "mealy/io.hpp"
#include "mealy/tilings.hpp"

using namespace mealy;

namespace {

Automaton fixture(const std::string& name) {
  return load_automaton(std::string(MEALY_CORPUS_DIR) + "/" + name + ".mealy");
}

void BM_HelixBuild(benchmark::State& state) {
  const auto m = fixture("grigorchuk_twisted");
  const auto k = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_helix(m, k, k, false).size());
}
BENCHMARK(BM_HelixBuild)->DenseRange(1, 3);

void BM_Nucleus(benchmark::State& state) {
  const auto m = fixture(state.range(0) == 0 ? "basilica" : "grigorchuk_twisted");
  const std::size_t cap = state.range(0) == 0 ? 64 : 2000;
  for (auto _ : state) benchmark::DoNotOptimize(nucleus(m, cap).nucleus.size());
}
BENCHMARK(BM_Nucleus)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SquareTiling(benchmark::State& state) {
  const auto t = tileset_from(fixture("basilica"));
  const auto side = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(can_tile_square(t, side).kind);
}
BENCHMARK(BM_SquareTiling)->RangeMultiplier(2)->Range(2, 8);

void BM_IsIdentity(benchmark::State& state) {
  const auto m = fixture("hanoi3");
  std::string text;
  for (int64_t i = 0; i < state.range(0); ++i) text += "abc";
  text += text;
  const auto u = parse_state_word(m, text);
  for (auto _ : state) benchmark::DoNotOptimize(is_identity(m, u));
}
BENCHMARK(BM_IsIdentity)->RangeMultiplier(2)->Range(1, 16);

}  // namespace

BENCHMARK_MAIN();
