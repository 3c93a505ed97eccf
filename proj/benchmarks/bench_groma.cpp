#include <benchmark/benchmark.h>

#include <filesystem>

#include "groma/model.hpp"
#include "groma/perturb.hpp"
#include "groma/roma.hpp"
#include "groma/stats.hpp"

namespace {

const groma::Model& desk_model() {
  static const groma::Model m =
      groma::load_model_file(std::filesystem::path(GROMA_FIXTURE_DIR) / "desk_model.gnnf");
  return m;
}

void BM_Forward(benchmark::State& state) {
  const auto& m = desk_model();
  std::vector<double> x(m.input_dim(), 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(m.forward(x));
}
BENCHMARK(BM_Forward);

void BM_LocalRobustness(benchmark::State& state) {
  const auto& m = desk_model();
  std::vector<double> x(m.input_dim(), 0.5);
  groma::RomaParams params;
  params.k = static_cast<std::size_t>(state.range(0));
  const groma::Label l = m.classify(x);
  std::uint64_t i = 0;
  for (auto _ : state) {
    groma::RandomStream s = groma::derive_stream({1, i++, groma::StreamPurpose::Perturbation});
    benchmark::DoNotOptimize(groma::local_robustness(m, x, l, params, s));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LocalRobustness)->Arg(200)->Arg(1000);

void BM_AndersonDarling(benchmark::State& state) {
  groma::RandomStream s(9);
  std::vector<double> v(static_cast<std::size_t>(state.range(0)));
  for (double& x : v) x = s.normal();
  for (auto _ : state) benchmark::DoNotOptimize(groma::stats::anderson_darling_normal(v));
}
BENCHMARK(BM_AndersonDarling)->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
