#pragma once

#include <cstdint>

#include "eon/spectrum.hpp"

namespace eon {

/// Memory in 32-bit words, split by what is stored: a cost takes one word,
/// an edge two, a CU two, and a single unit one.
struct WordCount {
  std::int64_t costs = 0;
  std::int64_t edges = 0;
  std::int64_t units = 0;

  constexpr std::int64_t total() const noexcept { return costs + edges + units; }

  constexpr WordCount& operator+=(const WordCount& o) noexcept {
    costs += o.costs;
    edges += o.edges;
    units += o.units;
    return *this;
  }
  friend constexpr WordCount operator*(std::int64_t k, WordCount w) noexcept {
    return {k * w.costs, k * w.edges, k * w.units};
  }
  friend constexpr bool operator==(const WordCount&, const WordCount&) = default;
};

inline constexpr std::int64_t kCostWords = 1;
inline constexpr std::int64_t kEdgeWords = 2;
inline constexpr std::int64_t kCuWords = 2;
inline constexpr std::int64_t kUnitWords = 1;

/// Label of the generic search: cost, edge and CU.
inline constexpr WordCount kGenericLabelWords{kCostWords, kEdgeWords, kCuWords};
/// Vertex label or queue entry of a classic Dijkstra: cost and edge.
inline constexpr WordCount kDijkstraLabelWords{kCostWords, kEdgeWords, 0};

/// Words of `count` generic-search labels.
constexpr WordCount generic_label_words(std::int64_t count) noexcept {
  return count * kGenericLabelWords;
}

/// Words of one complete-path queue entry of the brute-force search.
constexpr WordCount path_entry_words(std::int64_t edge_count, std::int64_t cu_count) noexcept {
  return {kCostWords, kEdgeWords * edge_count, kCuWords * cu_count};
}

inline WordCount path_entry_words(std::int64_t edge_count, const UnitSet& units) noexcept {
  return path_entry_words(edge_count, static_cast<std::int64_t>(units.size()));
}

/// Running maximum of the words held by an algorithm during one search.
/// Algorithms report their current footprint through observe().
class WordMeter {
public:
  void observe(const WordCount& current) noexcept {
    if (current.total() > peak_.total()) {
      peak_ = current;
    }
  }
  const WordCount& peak() const noexcept { return peak_; }
  void reset() noexcept { peak_ = {}; }

private:
  WordCount peak_;
};

}  // namespace eon
