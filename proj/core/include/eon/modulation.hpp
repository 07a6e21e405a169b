#pragma once

#include <optional>
#include <stdexcept>

#include "eon/netgraph.hpp"
#include "eon/spectrum.hpp"

namespace eon {

class ModulationError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Distance-adaptive modulation: `levels` modulation levels, where level m
/// reaches reach_top * 2^(levels - m) km. Level `levels` is the most
/// spectrally efficient one.
class ModulationModel {
public:
  ModulationModel(int levels, double reach_top);

  int levels() const noexcept { return levels_; }
  /// Reach of the most efficient level (r_M).
  double reach_top() const noexcept { return reach_top_; }
  /// Reach of the least efficient level (r_1).
  double reach_longest() const noexcept { return reach(1); }

  /// Reach of level m, 1 <= m <= levels.
  double reach(int m) const;

private:
  int levels_;
  double reach_top_;
};

/// Modulation level needed over distance d; nullopt when d exceeds r_1.
std::optional<int> modulation_level(double d, const ModulationModel& model);

/// Units required over distance d for a demand of n_base units at the top
/// level: n_base up to r_M, ceil(n_base * log2(2d / r_M)) up to r_1, and
/// nullopt (infeasible) beyond.
std::optional<Unit> required_units(Unit n_base, double d, const ModulationModel& model);

/// Largest distance over which n units suffice. Requires
/// n_base <= n <= levels * n_base.
double max_reach_for_units(Unit n, Unit n_base, const ModulationModel& model);

/// Largest integer cost c with required_units(n_base, c) <= n, or -1 if none.
Cost max_cost_for_units(Unit n, Unit n_base, const ModulationModel& model);

/// r_1 = factor * (longest shortest path); throws on a disconnected graph.
ModulationModel calibrate_reach(const Multigraph& g, double factor, int levels);

/// The decision function of a demand, together with the width it needs at a
/// given cost. Requirements never shrink as cost grows.
class DemandRule {
public:
  virtual ~DemandRule() = default;

  /// Units needed at this cost, or nullopt when no width suffices.
  virtual std::optional<Unit> required_units(Cost cost) const = 0;

  /// Whether contiguous units `cu` at `cost` can carry the demand.
  virtual bool accepts(Cost cost, CU cu) const {
    const auto need = required_units(cost);
    return need && *need <= cu.width();
  }

  /// Narrowest and widest width the demand may ever need.
  virtual Unit min_units() const = 0;
  virtual Unit max_units() const = 0;

  /// Largest cost at which n units suffice (-1 if never). Used by the
  /// filtered-graphs search to bound each width.
  virtual Cost max_cost_for(Unit n) const = 0;
};

/// Fixed width regardless of distance (RWA with n = 1, RSA otherwise).
class FixedUnits final : public DemandRule {
public:
  explicit FixedUnits(Unit n);
  std::optional<Unit> required_units(Cost) const override { return n_; }
  Unit min_units() const override { return n_; }
  Unit max_units() const override { return n_; }
  Cost max_cost_for(Unit n) const override;

private:
  Unit n_;
};

/// Width grows with distance per the modulation model (RMSA).
class ModulatedUnits final : public DemandRule {
public:
  ModulatedUnits(Unit n_base, ModulationModel model);
  std::optional<Unit> required_units(Cost cost) const override;
  Unit min_units() const override { return n_base_; }
  Unit max_units() const override { return n_base_ * model_.levels(); }
  Cost max_cost_for(Unit n) const override;

  Unit n_base() const noexcept { return n_base_; }
  const ModulationModel& model() const noexcept { return model_; }

private:
  Unit n_base_;
  ModulationModel model_;
};

}  // namespace eon
