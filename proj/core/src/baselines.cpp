#include "eon/baselines.hpp"

#include <algorithm>
#include <limits>

namespace eon {

std::vector<char> filter_graph(const Multigraph& g, const SlotSpec& slot) {
  if (slot.width < 1 || slot.start < 0 || slot.start + slot.width > g.omega()) {
    throw SpectrumError("slot does not fit into the unit universe");
  }
  const CU cu = slot.cu();
  std::vector<char> mask(static_cast<std::size_t>(g.edge_count()), 0);
  for (const Edge& e : g.edges()) {
    mask[static_cast<std::size_t>(e.id)] = g.available(e.id).contains(cu) ? 1 : 0;
  }
  return mask;
}

std::optional<Route> filtered_search(const Multigraph& g, VertexId source, VertexId target,
                                     const DemandRule& rule, AllocationPolicy policy, Rng* rng,
                                     WordMeter* meter, FilteredStats* stats) {
  if (!g.valid_vertex(source) || !g.valid_vertex(target)) {
    throw GraphError("invalid source or target vertex");
  }
  if (policy == AllocationPolicy::kRandomFit && rng == nullptr) {
    throw std::invalid_argument("random-fit needs a random engine");
  }

  struct Best {
    Path path;
    SlotSpec slot;
  };
  std::optional<Best> best;
  std::int64_t ties = 0;

  auto preferred = [policy](const SlotSpec& a, const SlotSpec& b) {
    if (policy == AllocationPolicy::kBestFit) {
      return a.width != b.width ? a.width < b.width : a.start < b.start;
    }
    return a.start != b.start ? a.start < b.start : a.width < b.width;
  };

  const Unit widest = std::min(rule.max_units(), g.omega());
  std::int64_t examined = 0;
  for (Unit width = rule.min_units(); width <= widest; ++width) {
    const Cost max_cost = rule.max_cost_for(width);
    for (Unit start = 0; start + width <= g.omega(); ++start) {
      const SlotSpec slot{start, width, max_cost};
      const std::vector<char> mask = filter_graph(g, slot);
      ++examined;
      auto path = classic_dijkstra(g, source, target, mask, meter);
      if (!path || path->cost > max_cost) {
        continue;
      }
      if (!best || path->cost < best->path.cost) {
        best = Best{std::move(*path), slot};
        ties = 1;
        continue;
      }
      if (path->cost > best->path.cost) {
        continue;
      }
      if (policy == AllocationPolicy::kRandomFit) {
        // Reservoir sampling over equal-cost results.
        ++ties;
        std::uniform_int_distribution<std::int64_t> pick(0, ties - 1);
        if (pick(*rng) == 0) {
          best = Best{std::move(*path), slot};
        }
      } else if (preferred(slot, best->slot)) {
        best = Best{std::move(*path), slot};
      }
    }
  }
  if (stats != nullptr) {
    stats->slots_examined = examined;
  }
  if (!best) {
    return std::nullopt;
  }
  const auto need = rule.required_units(best->path.cost);
  Route route;
  route.edges = std::move(best->path.edges);
  route.cost = best->path.cost;
  route.cu = carve_units(best->slot.cu(), *need, policy, rng);
  return route;
}

// ---------------------------------------------------------------------------

namespace {

struct PathState {
  Cost cost = 0;
  std::int64_t key1 = 0;
  std::int64_t key2 = 0;
  std::int64_t seq = 0;
  VertexId at = 0;
  std::vector<EdgeId> edges;
  UnitSet units;
  std::vector<char> visited;
};

// Min-heap order on (cost, key1, key2, seq).
struct LaterFirst {
  bool operator()(const PathState& a, const PathState& b) const noexcept {
    if (a.cost != b.cost) return a.cost > b.cost;
    if (a.key1 != b.key1) return a.key1 > b.key1;
    if (a.key2 != b.key2) return a.key2 > b.key2;
    return a.seq > b.seq;
  }
};

// The CU of `units` the policy would take at this cost, if any qualifies.
// Random-fit picks uniformly among the qualifying CUs when rng is given and
// falls back to the lowest one otherwise.
std::optional<CU> choose_cu(const UnitSet& units, Cost cost, const DemandRule& rule,
                            AllocationPolicy policy, Rng* rng) {
  std::optional<CU> chosen;
  std::int64_t seen = 0;
  for (const CU c : units.cus()) {
    if (!rule.accepts(cost, c)) {
      continue;
    }
    ++seen;
    switch (policy) {
      case AllocationPolicy::kFirstFit:
        return c;
      case AllocationPolicy::kBestFit:
        if (!chosen || c.width() < chosen->width()) {
          chosen = c;
        }
        break;
      case AllocationPolicy::kRandomFit:
        if (!chosen) {
          chosen = c;
        } else if (rng != nullptr) {
          std::uniform_int_distribution<std::int64_t> pick(0, seen - 1);
          if (pick(*rng) == 0) {
            chosen = c;
          }
        }
        break;
    }
  }
  return chosen;
}

}  // namespace

std::optional<Route> brute_search(const Multigraph& g, VertexId source, VertexId target,
                                  const DemandRule& rule, AllocationPolicy policy, Rng* rng,
                                  WordMeter* meter, BruteForceStats* stats) {
  if (!g.valid_vertex(source) || !g.valid_vertex(target)) {
    throw GraphError("invalid source or target vertex");
  }
  if (policy == AllocationPolicy::kRandomFit && rng == nullptr) {
    throw std::invalid_argument("random-fit needs a random engine");
  }

  std::vector<PathState> heap;
  std::int64_t seq = 0;
  WordCount live;
  BruteForceStats local;

  auto push = [&](PathState state) {
    if (policy == AllocationPolicy::kRandomFit) {
      state.key1 = static_cast<std::int64_t>((*rng)() >> 1);
    } else if (const auto c = choose_cu(state.units, state.cost, rule, policy, nullptr)) {
      state.key1 = policy == AllocationPolicy::kFirstFit ? c->lo : c->width();
      state.key2 = policy == AllocationPolicy::kFirstFit ? 0 : c->lo;
    }
    state.seq = seq++;
    live += path_entry_words(static_cast<std::int64_t>(state.edges.size()), state.units);
    heap.push_back(std::move(state));
    std::push_heap(heap.begin(), heap.end(), LaterFirst{});
    ++local.pushed;
    if (meter != nullptr) {
      meter->observe(live);
    }
  };

  PathState boot;
  boot.at = source;
  boot.units = UnitSet::full(g.omega());
  boot.visited.assign(static_cast<std::size_t>(g.vertex_count()), 0);
  boot.visited[static_cast<std::size_t>(source)] = 1;
  push(std::move(boot));

  std::optional<Route> result;
  while (!heap.empty()) {
    std::pop_heap(heap.begin(), heap.end(), LaterFirst{});
    PathState state = std::move(heap.back());
    heap.pop_back();
    ++local.popped;
    const WordCount entry =
        path_entry_words(static_cast<std::int64_t>(state.edges.size()), state.units);
    live.costs -= entry.costs;
    live.edges -= entry.edges;
    live.units -= entry.units;

    if (state.at == target) {
      if (const auto c = choose_cu(state.units, state.cost, rule, policy, rng)) {
        const auto need = rule.required_units(state.cost);
        result = Route{std::move(state.edges), state.cost, carve_units(*c, *need, policy, rng)};
        break;
      }
      continue;
    }
    for (const Incidence& inc : g.incident(state.at)) {
      if (state.visited[static_cast<std::size_t>(inc.neighbor)]) {
        continue;
      }
      const Cost cost = state.cost + g.edge(inc.edge).length;
      UnitSet units = intersect(state.units, g.available(inc.edge));
      const bool usable = std::any_of(units.cus().begin(), units.cus().end(),
                                      [&](CU c) { return rule.accepts(cost, c); });
      if (!usable) {
        continue;
      }
      PathState next;
      next.cost = cost;
      next.at = inc.neighbor;
      next.edges = state.edges;
      next.edges.push_back(inc.edge);
      next.units = std::move(units);
      next.visited = state.visited;
      next.visited[static_cast<std::size_t>(inc.neighbor)] = 1;
      push(std::move(next));
    }
  }
  if (stats != nullptr) {
    *stats = local;
  }
  return result;
}

}  // namespace eon
