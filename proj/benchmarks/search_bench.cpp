#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "eon/baselines.hpp"
#include "eon/modulation.hpp"
#include "eon/netgraph.hpp"
#include "eon/routing.hpp"

namespace {

using namespace eon;

// A Gabriel graph whose edges each keep a random fragmented share of the
// spectrum, as after a while of dynamic traffic.
Multigraph loaded_graph(VertexId n, Unit omega, double keep, std::uint64_t seed) {
  Multigraph g = gabriel_generate(n, kDefaultDensity, seed, omega).graph;
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution free(keep);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    std::vector<CU> units;
    for (Unit u = 0; u < omega; ++u) {
      if (free(rng)) units.push_back(CU{u, u});
    }
    g.set_available(e, UnitSet::from_cus(units));
  }
  return g;
}

struct Workload {
  Multigraph graph;
  ModulationModel model;
  std::vector<std::pair<VertexId, VertexId>> pairs;
};

Workload workload(VertexId n, Unit omega) {
  Multigraph g = loaded_graph(n, omega, 0.7, 5);
  const ModulationModel model = calibrate_reach(g, 1.5, 4);
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<VertexId> v(0, n - 1);
  std::vector<std::pair<VertexId, VertexId>> pairs;
  while (pairs.size() < 64) {
    const VertexId s = v(rng), t = v(rng);
    if (s != t) pairs.emplace_back(s, t);
  }
  return {std::move(g), model, std::move(pairs)};
}

template <typename Search>
void run_pairs(benchmark::State& state, const Workload& w, Search search) {
  const ModulatedUnits rule(static_cast<Unit>(state.range(0)), w.model);
  std::size_t k = 0;
  for (auto _ : state) {
    const auto& [s, t] = w.pairs[k++ % w.pairs.size()];
    benchmark::DoNotOptimize(search(w.graph, s, t, rule));
  }
}

void BM_Generic(benchmark::State& state) {
  static const Workload w = workload(75, 160);
  run_pairs(state, w, [](const Multigraph& g, VertexId s, VertexId t, const DemandRule& r) {
    return generic_dijkstra(g, s, t, r);
  });
}
BENCHMARK(BM_Generic)->Arg(1)->Arg(4)->Arg(10)->Unit(benchmark::kMicrosecond);

void BM_Filtered(benchmark::State& state) {
  static const Workload w = workload(75, 160);
  run_pairs(state, w, [](const Multigraph& g, VertexId s, VertexId t, const DemandRule& r) {
    return filtered_search(g, s, t, r);
  });
}
BENCHMARK(BM_Filtered)->Arg(1)->Arg(4)->Arg(10)->Unit(benchmark::kMicrosecond);

void BM_Brute(benchmark::State& state) {
  static const Workload w = workload(20, 32);
  run_pairs(state, w, [](const Multigraph& g, VertexId s, VertexId t, const DemandRule& r) {
    return brute_search(g, s, t, r);
  });
}
BENCHMARK(BM_Brute)->Arg(1)->Arg(4)->Unit(benchmark::kMicrosecond);

void BM_Intersect(benchmark::State& state) {
  const Unit omega = static_cast<Unit>(state.range(0));
  const Multigraph g = loaded_graph(4, omega, 0.6, 3);
  const UnitSet& a = g.available(0);
  const UnitSet& b = g.available(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(intersect(a, b));
  }
}
BENCHMARK(BM_Intersect)->Arg(160)->Arg(640);

void BM_AllocateRelease(benchmark::State& state) {
  const Multigraph g = loaded_graph(4, 160, 0.6, 4);
  const UnitSet& a = g.available(0);
  const CU c = a.cus()[a.size() / 2];
  for (auto _ : state) {
    benchmark::DoNotOptimize(release(allocate(a, c), c));
  }
}
BENCHMARK(BM_AllocateRelease);

}  // namespace

BENCHMARK_MAIN();
