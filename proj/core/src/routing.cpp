#include "eon/routing.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <string>

namespace eon {

std::string_view to_string(AllocationPolicy p) noexcept {
  switch (p) {
    case AllocationPolicy::kFirstFit:
      return "first-fit";
    case AllocationPolicy::kBestFit:
      return "best-fit";
    case AllocationPolicy::kRandomFit:
      return "random-fit";
  }
  return "unknown";
}

AllocationPolicy parse_policy(std::string_view name) {
  if (name == "first-fit" || name == "ff" || name == "first") {
    return AllocationPolicy::kFirstFit;
  }
  if (name == "best-fit" || name == "bf" || name == "best") {
    return AllocationPolicy::kBestFit;
  }
  if (name == "random-fit" || name == "rf" || name == "random") {
    return AllocationPolicy::kRandomFit;
  }
  throw std::invalid_argument("unknown allocation policy '" + std::string(name) + "'");
}

std::ostream& operator<<(std::ostream& os, const Label& l) {
  os << '(' << l.cost << ',' << l.cu << ',';
  if (l.edge == kNullEdge) {
    os << "null";
  } else {
    os << 'e' << l.edge;
  }
  return os << ')';
}

// ---------------------------------------------------------------------------

bool IncomparableLabelSet::blocks(const Label& l) const noexcept {
  return std::any_of(labels_.begin(), labels_.end(), [&](const Label& m) {
    return label_better(m, l) || label_equivalent(m, l);
  });
}

void IncomparableLabelSet::erase_worse_than(const Label& l, std::vector<LabelId>* discarded) {
  auto worse = [&](const Label& m) { return label_better(l, m); };
  if (discarded != nullptr) {
    for (const Label& m : labels_) {
      if (worse(m)) {
        discarded->push_back(m.id);
      }
    }
  }
  std::erase_if(labels_, worse);
}

bool IncomparableLabelSet::insert(const Label& l, std::vector<LabelId>* discarded) {
  if (blocks(l)) {
    return false;
  }
  erase_worse_than(l, discarded);
  labels_.push_back(l);
  return true;
}

bool IncomparableLabelSet::erase(LabelId id) noexcept {
  auto it = std::find_if(labels_.begin(), labels_.end(), [id](const Label& m) { return m.id == id; });
  if (it == labels_.end()) {
    return false;
  }
  // Order carries no meaning; swap-and-pop.
  *it = labels_.back();
  labels_.pop_back();
  return true;
}

bool IncomparableLabelSet::pairwise_incomparable() const noexcept {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    for (std::size_t j = 0; j < labels_.size(); ++j) {
      if (i != j && label_better(labels_[i], labels_[j])) {
        return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

CU carve_units(CU c, Unit n, AllocationPolicy policy, Rng* rng) {
  if (policy == AllocationPolicy::kRandomFit) {
    if (rng == nullptr) {
      throw std::invalid_argument("random-fit needs a random engine");
    }
    const CU lowest = first_fit_sub_cu(c, n);
    std::uniform_int_distribution<Unit> offset(0, c.width() - n);
    const Unit shift = offset(*rng);
    return CU{lowest.lo + shift, lowest.hi + shift};
  }
  return first_fit_sub_cu(c, n);
}

GenericDijkstra::GenericDijkstra(const Multigraph& g, VertexId source, VertexId target,
                                 const DemandRule& rule, AllocationPolicy policy, Rng* rng,
                                 WordMeter* meter, GenericSearchOptions options)
    : graph_(g),
      source_(source),
      target_(target),
      rule_(rule),
      policy_(policy),
      rng_(rng),
      meter_(meter),
      options_(options) {
  if (!g.valid_vertex(source) || !g.valid_vertex(target)) {
    throw GraphError("invalid source or target vertex");
  }
  if (policy == AllocationPolicy::kRandomFit && rng == nullptr) {
    throw std::invalid_argument("random-fit needs a random engine");
  }
  tentative_.resize(idx(g.vertex_count()));
  permanent_.resize(idx(g.vertex_count()));
  enqueue(Label{0, CU{0, g.omega() - 1}, kNullEdge, kNoLabel, kNoLabel}, source);
  observe_words();
}

void GenericDijkstra::enqueue(Label l, VertexId at) {
  l.id = static_cast<LabelId>(store_.size());
  store_.push_back(Stored{l, at, State::kTentative});
  tentative_[idx(at)].push(l);
  ++tentative_count_;

  QueueEntry entry{l.cost, 0, 0, l.edge, l.id};
  switch (policy_) {
    case AllocationPolicy::kFirstFit:
      entry.key1 = l.cu.lo;
      entry.key2 = -static_cast<std::int64_t>(l.cu.width());
      break;
    case AllocationPolicy::kBestFit:
      entry.key1 = l.cu.width();
      entry.key2 = l.cu.lo;
      break;
    case AllocationPolicy::kRandomFit:
      entry.key1 = static_cast<std::int64_t>((*rng_)() >> 1);
      break;
  }
  queue_.push(entry);
}

void GenericDijkstra::observe_words() {
  if (meter_ == nullptr) {
    return;
  }
  std::int64_t live = tentative_count_ + permanent_count_;
  if (options_.count_archive) {
    live += discarded_count_;
  }
  meter_->observe(generic_label_words(live));
}

std::optional<Label> GenericDijkstra::step() {
  while (!finished_ && !queue_.empty()) {
    const QueueEntry top = queue_.top();
    queue_.pop();
    Stored& stored = store_[static_cast<std::size_t>(top.id)];
    if (stored.state != State::kTentative) {
      continue;  // discarded after it was queued
    }
    const VertexId v = stored.vertex;
    const Label l = stored.label;
    tentative_[idx(v)].erase(l.id);
    --tentative_count_;
    stored.state = State::kPermanent;
    permanent_[idx(v)].push(l);
    ++permanent_count_;
    observe_words();

    if (v == target_) {
      finished_ = true;
      // Only the boot label can reach here without passing the rule.
      if (rule_.accepts(l.cost, l.cu)) {
        target_label_ = l.id;
      }
      return l;
    }
    for (const Incidence& inc : graph_.incident(v)) {
      relax(inc.edge, v, l);
    }
    return l;
  }
  finished_ = true;
  return std::nullopt;
}

void GenericDijkstra::relax(EdgeId edge, VertexId at, const Label& from) {
  const Edge& e = graph_.edge(edge);
  const VertexId next = e.other(at);
  const Cost cost = from.cost + e.length;
  intersect_into(from.cu, graph_.available(edge), scratch_);
  IncomparableLabelSet& queued = tentative_[idx(next)];
  const IncomparableLabelSet& settled = permanent_[idx(next)];
  for (const CU cu : scratch_) {
    const Label candidate{cost, cu, edge, from.id, kNoLabel};
    if (!rule_.accepts(cost, cu) || settled.blocks(candidate) || queued.blocks(candidate)) {
      continue;
    }
    discarded_scratch_.clear();
    queued.erase_worse_than(candidate, &discarded_scratch_);
    for (const LabelId id : discarded_scratch_) {
      store_[static_cast<std::size_t>(id)].state = State::kDiscarded;
    }
    const auto n_discarded = static_cast<std::int64_t>(discarded_scratch_.size());
    tentative_count_ -= n_discarded;
    discarded_count_ += n_discarded;
    enqueue(candidate, next);
  }
  observe_words();
}

Route GenericDijkstra::trace() {
  if (target_label_ == kNoLabel) {
    throw std::logic_error("trace: the target holds no qualifying label");
  }
  const Label& last = label(target_label_);
  const auto need = rule_.required_units(last.cost);
  Route route;
  route.cost = last.cost;
  route.cu = carve_units(last.cu, *need, policy_, rng_);
  for (LabelId id = target_label_; label(id).edge != kNullEdge; id = label(id).pred) {
    route.edges.push_back(label(id).edge);
  }
  std::reverse(route.edges.begin(), route.edges.end());
  return route;
}

std::optional<Route> GenericDijkstra::run() {
  while (step()) {
  }
  if (!reached_target()) {
    return std::nullopt;
  }
  return trace();
}

std::optional<Route> generic_dijkstra(const Multigraph& g, VertexId source, VertexId target,
                                      const DemandRule& rule, AllocationPolicy policy, Rng* rng,
                                      WordMeter* meter, GenericSearchOptions options) {
  GenericDijkstra search(g, source, target, rule, policy, rng, meter, options);
  return search.run();
}

}  // namespace eon
