#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <queue>
#include <span>
#include <string_view>
#include <vector>

#include "eon/modulation.hpp"
#include "eon/netgraph.hpp"
#include "eon/random.hpp"
#include "eon/spectrum.hpp"
#include "eon/words.hpp"

namespace eon {

enum class AllocationPolicy { kFirstFit, kBestFit, kRandomFit };

std::string_view to_string(AllocationPolicy p) noexcept;
/// Accepts "first-fit", "best-fit", "random-fit" (also "ff", "bf", "rf").
AllocationPolicy parse_policy(std::string_view name);

using LabelId = std::int32_t;
inline constexpr LabelId kNoLabel = -1;

/// A way of reaching a vertex: at `cost`, with contiguous units `cu`
/// available along the whole path, arriving over `edge`. `pred` names the
/// label this one was relaxed from; the boot label has edge kNullEdge and
/// no pred.
struct Label {
  Cost cost = 0;
  CU cu;
  EdgeId edge = kNullEdge;
  LabelId pred = kNoLabel;
  LabelId id = kNoLabel;
};

/// li < lj: li is cheaper with at least the same units, or no dearer with
/// strictly more units.
constexpr bool label_better(const Label& li, const Label& lj) noexcept {
  return (li.cost < lj.cost && cu_includes(li.cu, lj.cu)) ||
         (li.cost <= lj.cost && cu_properly_includes(li.cu, lj.cu));
}

constexpr bool label_equivalent(const Label& li, const Label& lj) noexcept {
  return li.cost == lj.cost && li.cu == lj.cu;
}

constexpr bool label_incomparable(const Label& li, const Label& lj) noexcept {
  return !label_better(li, lj) && !label_better(lj, li);
}

std::ostream& operator<<(std::ostream& os, const Label& l);

/// Labels of one vertex, no member better than another. A member with the
/// same cost and CU as a candidate also blocks it, which keeps zero-length
/// cycles from feeding the queue forever.
class IncomparableLabelSet {
public:
  std::span<const Label> labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return labels_.size(); }
  bool empty() const noexcept { return labels_.empty(); }

  /// Some member is better than or equivalent to l.
  bool blocks(const Label& l) const noexcept;

  /// Removes members worse than l, appending their ids to `discarded`.
  void erase_worse_than(const Label& l, std::vector<LabelId>* discarded = nullptr);

  /// If blocked, leaves the set unchanged and returns false. Otherwise
  /// drops the members worse than l, inserts l and returns true.
  bool insert(const Label& l, std::vector<LabelId>* discarded = nullptr);

  /// Adds l without any checks.
  void push(const Label& l) { labels_.push_back(l); }

  /// Removes the member with this id; returns false if absent.
  bool erase(LabelId id) noexcept;

  /// No two members compare as better.
  bool pairwise_incomparable() const noexcept;

private:
  std::vector<Label> labels_;
};

/// A found lightpath: edges from source to target, their total length and
/// the units to allocate on every edge.
struct Route {
  std::vector<EdgeId> edges;
  Cost cost = 0;
  CU cu;
};

struct GenericSearchOptions {
  /// Count discarded tentative labels (kept to resolve pred ids) in the
  /// word meter as well.
  bool count_archive = false;
};

/// The generic Dijkstra search, exposed step by step. Each step pops the
/// cheapest tentative label (equal costs ordered by the allocation policy),
/// makes it permanent at its vertex and, unless the vertex is the target,
/// relaxes every edge leaving it.
class GenericDijkstra {
public:
  /// rng is required for kRandomFit and may be null otherwise.
  GenericDijkstra(const Multigraph& g, VertexId source, VertexId target, const DemandRule& rule,
                  AllocationPolicy policy = AllocationPolicy::kFirstFit, Rng* rng = nullptr,
                  WordMeter* meter = nullptr, GenericSearchOptions options = {});
  // The search keeps references to the graph and the rule.
  GenericDijkstra(Multigraph&&, VertexId, VertexId, const DemandRule&,
                  AllocationPolicy = AllocationPolicy::kFirstFit, Rng* = nullptr,
                  WordMeter* = nullptr, GenericSearchOptions = {}) = delete;
  GenericDijkstra(const Multigraph&, VertexId, VertexId, DemandRule&&,
                  AllocationPolicy = AllocationPolicy::kFirstFit, Rng* = nullptr,
                  WordMeter* = nullptr, GenericSearchOptions = {}) = delete;

  /// Pops and processes one label. Returns it, or nullopt when the search
  /// has already finished.
  std::optional<Label> step();

  /// Steps until the target is reached or the queue runs dry, then traces.
  std::optional<Route> run();

  bool finished() const noexcept { return finished_; }
  bool reached_target() const noexcept { return target_label_ != kNoLabel; }

  /// Produces candidates from `from` (permanent at `at`) over `edge` and
  /// queues the ones that survive the decision function and dominance.
  void relax(EdgeId edge, VertexId at, const Label& from);

  /// Path and carved CU for the label that reached the target.
  Route trace();

  std::span<const Label> tentative(VertexId v) const { return tentative_.at(idx(v)).labels(); }
  std::span<const Label> permanent(VertexId v) const { return permanent_.at(idx(v)).labels(); }
  const IncomparableLabelSet& tentative_set(VertexId v) const { return tentative_.at(idx(v)); }
  const IncomparableLabelSet& permanent_set(VertexId v) const { return permanent_.at(idx(v)); }

  const Label& label(LabelId id) const { return store_.at(static_cast<std::size_t>(id)).label; }
  VertexId vertex_of(LabelId id) const { return store_.at(static_cast<std::size_t>(id)).vertex; }

  std::int64_t tentative_count() const noexcept { return tentative_count_; }
  std::int64_t permanent_count() const noexcept { return permanent_count_; }
  std::int64_t discarded_count() const noexcept { return discarded_count_; }

private:
  enum class State : std::uint8_t { kTentative, kPermanent, kDiscarded };

  struct Stored {
    Label label;
    VertexId vertex;
    State state;
  };

  struct QueueEntry {
    Cost cost;
    std::int64_t key1;
    std::int64_t key2;
    EdgeId edge;
    LabelId id;

    bool operator>(const QueueEntry& o) const noexcept {
      if (cost != o.cost) return cost > o.cost;
      if (key1 != o.key1) return key1 > o.key1;
      if (key2 != o.key2) return key2 > o.key2;
      if (edge != o.edge) return edge > o.edge;
      return id > o.id;
    }
  };

  static std::size_t idx(VertexId v) { return static_cast<std::size_t>(v); }

  void enqueue(Label l, VertexId at);
  void observe_words();

  const Multigraph& graph_;
  VertexId source_;
  VertexId target_;
  const DemandRule& rule_;
  AllocationPolicy policy_;
  Rng* rng_;
  WordMeter* meter_;
  GenericSearchOptions options_;

  std::vector<Stored> store_;
  std::vector<IncomparableLabelSet> tentative_;
  std::vector<IncomparableLabelSet> permanent_;
  std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>> queue_;

  std::int64_t tentative_count_ = 0;
  std::int64_t permanent_count_ = 0;
  std::int64_t discarded_count_ = 0;
  LabelId target_label_ = kNoLabel;
  bool finished_ = false;

  std::vector<CU> scratch_;
  std::vector<LabelId> discarded_scratch_;
};

/// Carves `n` units out of `c` according to the policy. First-fit and
/// best-fit take the lowest units; random-fit picks a uniform offset.
CU carve_units(CU c, Unit n, AllocationPolicy policy, Rng* rng);

/// Shortest path with continuous and contiguous units accepted by `rule`.
/// Throws GraphError for invalid vertices.
std::optional<Route> generic_dijkstra(const Multigraph& g, VertexId source, VertexId target,
                                      const DemandRule& rule,
                                      AllocationPolicy policy = AllocationPolicy::kFirstFit,
                                      Rng* rng = nullptr, WordMeter* meter = nullptr,
                                      GenericSearchOptions options = {});

}  // namespace eon
