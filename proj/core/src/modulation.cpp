#include "eon/modulation.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace eon {

namespace {

// Relative guard so that values that are integral up to rounding noise
// (log2 of exact powers of two, times n_base) do not round up.
constexpr double kCeilGuard = 1e-9;

long long guarded_ceil(double x) {
  return static_cast<long long>(std::ceil(x - std::abs(x) * kCeilGuard));
}

}  // namespace

ModulationModel::ModulationModel(int levels, double reach_top)
    : levels_(levels), reach_top_(reach_top) {
  if (levels < 1) {
    throw ModulationError("modulation levels must be >= 1");
  }
  if (!(reach_top > 0) || !std::isfinite(reach_top)) {
    throw ModulationError("reach of the top modulation level must be positive");
  }
}

double ModulationModel::reach(int m) const {
  if (m < 1 || m > levels_) {
    throw ModulationError("modulation level " + std::to_string(m) + " outside [1," +
                          std::to_string(levels_) + "]");
  }
  return std::ldexp(reach_top_, levels_ - m);
}

std::optional<int> modulation_level(double d, const ModulationModel& model) {
  if (d <= model.reach_top()) {
    return model.levels();
  }
  if (d > model.reach_longest()) {
    return std::nullopt;
  }
  return model.levels() + 1 - static_cast<int>(guarded_ceil(std::log2(2 * d / model.reach_top())));
}

std::optional<Unit> required_units(Unit n_base, double d, const ModulationModel& model) {
  if (d <= model.reach_top()) {
    return n_base;
  }
  if (d > model.reach_longest()) {
    return std::nullopt;
  }
  return static_cast<Unit>(guarded_ceil(n_base * std::log2(2 * d / model.reach_top())));
}

double max_reach_for_units(Unit n, Unit n_base, const ModulationModel& model) {
  if (n_base < 1 || n < n_base || n > n_base * model.levels()) {
    throw ModulationError("max_reach_for_units: need n_base <= n <= levels * n_base");
  }
  const double reach = model.reach_top() *
                       std::exp2(static_cast<double>(n) / static_cast<double>(n_base) - 1.0);
  return std::min(model.reach_longest(), reach);
}

Cost max_cost_for_units(Unit n, Unit n_base, const ModulationModel& model) {
  auto fits = [&](Cost c) {
    const auto need = required_units(n_base, static_cast<double>(c), model);
    return need && *need <= n;
  };
  if (n < n_base) {
    return -1;
  }
  const Unit clipped = std::min(n, n_base * model.levels());
  auto c = static_cast<Cost>(std::floor(max_reach_for_units(clipped, n_base, model)));
  // Settle rounding at the boundary against the forward formula.
  while (fits(c + 1)) {
    ++c;
  }
  while (c >= 0 && !fits(c)) {
    --c;
  }
  return c;
}

ModulationModel calibrate_reach(const Multigraph& g, double factor, int levels) {
  if (!(factor > 0)) {
    throw ModulationError("reach factor must be positive");
  }
  Cost longest = 0;
  for (VertexId s = 0; s < g.vertex_count(); ++s) {
    const ShortestPathTree tree = shortest_path_tree(g, s);
    for (VertexId t = 0; t < g.vertex_count(); ++t) {
      if (!tree.reachable(t)) {
        throw ModulationError("calibrate_reach: graph is disconnected");
      }
      longest = std::max(longest, tree.dist[static_cast<std::size_t>(t)]);
    }
  }
  const double reach_longest = factor * static_cast<double>(longest);
  return ModulationModel(levels, std::ldexp(reach_longest, 1 - levels));
}

FixedUnits::FixedUnits(Unit n) : n_(n) {
  if (n < 1) {
    throw ModulationError("a demand needs at least one unit");
  }
}

Cost FixedUnits::max_cost_for(Unit n) const {
  return n >= n_ ? std::numeric_limits<Cost>::max() : -1;
}

ModulatedUnits::ModulatedUnits(Unit n_base, ModulationModel model)
    : n_base_(n_base), model_(model) {
  if (n_base < 1) {
    throw ModulationError("a demand needs at least one unit");
  }
}

std::optional<Unit> ModulatedUnits::required_units(Cost cost) const {
  return eon::required_units(n_base_, static_cast<double>(cost), model_);
}

Cost ModulatedUnits::max_cost_for(Unit n) const {
  return max_cost_for_units(n, n_base_, model_);
}

}  // namespace eon
