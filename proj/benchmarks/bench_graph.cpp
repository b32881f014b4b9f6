#include <memory>

#include <benchmark/benchmark.h>

#include "chainctl/chain_sets.hpp"
#include "chainctl/scc.hpp"
#include "chainctl/scenarios.hpp"
#include "chainctl/sphere_analysis.hpp"
#include "chainctl/transition_graph.hpp"

namespace {

using namespace chainctl;

void BM_WindowGraph(benchmark::State& state) {
  const Scenario s = example2_scenario();
  auto cov = std::make_shared<const BoxCovering>(
      DomainSpec::window(s.params.window_lower, s.params.window_upper), static_cast<int>(state.range(0)));
  const AffineFlow flow(s.system);
  const auto controls = default_control_samples(s.system.omega());
  for (auto _ : state) {
    auto g = build_transition_graph(cov, flow, controls, JumpSpec::constant(0.05));
    benchmark::DoNotOptimize(g.edge_count());
  }
  state.counters["boxes"] = static_cast<double>(cov->size());
}
BENCHMARK(BM_WindowGraph)->Arg(6)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_SphereGraph(benchmark::State& state) {
  const Scenario s = example2_scenario();
  auto cov = std::make_shared<const BoxCovering>(DomainSpec::sphere(2), static_cast<int>(state.range(0)));
  const ProjectedBilinearFlow flow(extend(s.system));
  const auto controls = default_control_samples(s.system.omega());
  GraphOptions o;
  o.T = 0.5;
  for (auto _ : state) {
    auto g = build_transition_graph(cov, flow, controls, JumpSpec::constant(0.05), o);
    benchmark::DoNotOptimize(g.edge_count());
  }
  state.counters["boxes"] = static_cast<double>(cov->size());
}
BENCHMARK(BM_SphereGraph)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_Scc(benchmark::State& state) {
  const Scenario s = example2_scenario();
  auto cov = std::make_shared<const BoxCovering>(DomainSpec::sphere(2), static_cast<int>(state.range(0)));
  GraphOptions o;
  o.T = 0.5;
  const TransitionGraph g = build_transition_graph(cov, ProjectedBilinearFlow(extend(s.system)),
                                                   default_control_samples(s.system.omega()),
                                                   JumpSpec::constant(0.05), o);
  for (auto _ : state) {
    auto p = strongly_connected_components(g.graph());
    benchmark::DoNotOptimize(p.members.size());
  }
  state.counters["edges"] = static_cast<double>(g.edge_count());
}
BENCHMARK(BM_Scc)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_ProjectiveQuotient(benchmark::State& state) {
  const Scenario s = example2_scenario();
  auto cov = std::make_shared<const BoxCovering>(DomainSpec::sphere(2), 5);
  GraphOptions o;
  o.T = 0.5;
  const TransitionGraph g = build_transition_graph(cov, ProjectedBilinearFlow(extend(s.system)),
                                                   default_control_samples(s.system.omega()),
                                                   JumpSpec::constant(0.05), o);
  for (auto _ : state) {
    auto q = projective_quotient(g);
    benchmark::DoNotOptimize(q.edge_count());
  }
}
BENCHMARK(BM_ProjectiveQuotient)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
