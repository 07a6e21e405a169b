#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "eon/modulation.hpp"
#include "eon/netgraph.hpp"
#include "eon/routing.hpp"
#include "eon/words.hpp"

namespace eon {

/// A candidate slot: `width` units starting at `start`, usable up to
/// `max_cost` km.
struct SlotSpec {
  Unit start = 0;
  Unit width = 1;
  Cost max_cost = 0;

  CU cu() const noexcept { return CU{start, start + width - 1}; }
};

/// Edge mask keeping exactly the edges whose available units contain the
/// slot. Throws SpectrumError if the slot does not fit into omega.
std::vector<char> filter_graph(const Multigraph& g, const SlotSpec& slot);

struct FilteredStats {
  /// Slots whose filtered graph was searched.
  std::int64_t slots_examined = 0;
};

/// Searches every slot (width from the rule's minimum to its maximum, every
/// start position) in its own filtered graph with a classic Dijkstra and
/// returns the cheapest result whose cost the slot width can carry.
/// Equal-cost ties: first-fit takes the lowest start, then the narrowest
/// width; best-fit the narrowest width, then the lowest start; random-fit
/// picks uniformly among them. The returned CU is the policy's carve of the
/// units needed at the found cost.
std::optional<Route> filtered_search(const Multigraph& g, VertexId source, VertexId target,
                                     const DemandRule& rule,
                                     AllocationPolicy policy = AllocationPolicy::kFirstFit,
                                     Rng* rng = nullptr, WordMeter* meter = nullptr,
                                     FilteredStats* stats = nullptr);

struct BruteForceStats {
  std::int64_t popped = 0;
  std::int64_t pushed = 0;
};

/// Best-first enumeration of loop-free paths, each queued with its full set
/// of units continuous along it. No labels are shared between paths.
std::optional<Route> brute_search(const Multigraph& g, VertexId source, VertexId target,
                                  const DemandRule& rule,
                                  AllocationPolicy policy = AllocationPolicy::kFirstFit,
                                  Rng* rng = nullptr, WordMeter* meter = nullptr,
                                  BruteForceStats* stats = nullptr);

}  // namespace eon
