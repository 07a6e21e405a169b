#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "eon/spectrum.hpp"

namespace eon {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;
/// Path and edge length in km.
using Cost = std::int64_t;

inline constexpr EdgeId kNullEdge = -1;

class GraphError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ParseError : public GraphError {
public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

struct Edge {
  EdgeId id = kNullEdge;
  VertexId u = 0;
  VertexId v = 0;
  Cost length = 0;

  VertexId other(VertexId x) const noexcept { return x == u ? v : u; }
};

/// An edge seen from one of its endpoints.
struct Incidence {
  EdgeId edge;
  VertexId neighbor;
};

/// Undirected multigraph. Each edge is traversable both ways and has one
/// set of available units shared by both directions.
class Multigraph {
public:
  Multigraph() = default;
  Multigraph(VertexId vertex_count, Unit omega);

  EdgeId add_edge(VertexId u, VertexId v, Cost length);

  VertexId vertex_count() const noexcept { return vertex_count_; }
  EdgeId edge_count() const noexcept { return static_cast<EdgeId>(edges_.size()); }
  Unit omega() const noexcept { return omega_; }

  const Edge& edge(EdgeId e) const { return edges_.at(static_cast<std::size_t>(e)); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  /// Incident edges of v in ascending edge id order.
  std::span<const Incidence> incident(VertexId v) const {
    return adjacency_.at(static_cast<std::size_t>(v));
  }
  std::size_t degree(VertexId v) const { return incident(v).size(); }

  bool valid_vertex(VertexId v) const noexcept { return v >= 0 && v < vertex_count_; }

  const UnitSet& available(EdgeId e) const { return available_.at(static_cast<std::size_t>(e)); }
  void set_available(EdgeId e, UnitSet units);
  void allocate(EdgeId e, CU c);
  void release(EdgeId e, CU c);
  /// Makes every unit of every edge available again.
  void reset_spectrum();

  /// Same topology over a universe of `omega` units, all available.
  Multigraph with_omega(Unit omega) const;

  /// Same vertices, edges and lengths; spectrum state is ignored.
  bool same_topology(const Multigraph& other) const noexcept;

private:
  VertexId vertex_count_ = 0;
  Unit omega_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
  std::vector<UnitSet> available_;
};

struct Point {
  double x = 0;
  double y = 0;
};

/// Default placement density: one vertex per 10^4 km².
inline constexpr double kDefaultDensity = 1e-4;

struct GabrielGraph {
  Multigraph graph;
  std::vector<Point> points;
  /// Number of rejected disconnected draws before this one.
  int redraws = 0;
};

/// Gabriel graph over fixed points: (u, v) is an edge iff no other point
/// lies in the closed disk with diameter uv. Lengths are rounded Euclidean
/// distances, at least 1.
Multigraph gabriel_from_points(std::span<const Point> points, Unit omega);

/// Places vertices uniformly in a square of area n / density and builds
/// the Gabriel graph. Disconnected draws are discarded and redrawn.
GabrielGraph gabriel_generate(VertexId n_vertices, double density, std::uint64_t seed,
                              Unit omega = 160);

bool is_connected(const Multigraph& g);

/// A path as a sequence of edge ids with its total length.
struct Path {
  std::vector<EdgeId> edges;
  Cost cost = 0;
};

/// Single-source shortest-path tree by edge length.
struct ShortestPathTree {
  VertexId source = 0;
  std::vector<Cost> dist;          // -1 when unreachable
  std::vector<EdgeId> pred_edge;   // kNullEdge for source and unreachable
  std::vector<std::int32_t> hops;

  bool reachable(VertexId v) const { return dist.at(static_cast<std::size_t>(v)) >= 0; }
  Path path_to(const Multigraph& g, VertexId t) const;
};

/// Optional edge filter: when non-empty, edge e is usable iff mask[e].
using EdgeMask = std::span<const char>;

class WordMeter;

/// Dijkstra by edge length. On equal distance the predecessor with the
/// lower edge id wins. Stops early once target is settled.
ShortestPathTree shortest_path_tree(const Multigraph& g, VertexId source,
                                    std::optional<VertexId> target = std::nullopt,
                                    EdgeMask mask = {}, WordMeter* meter = nullptr);

std::optional<Path> classic_dijkstra(const Multigraph& g, VertexId s, VertexId t,
                                     EdgeMask mask = {}, WordMeter* meter = nullptr);

struct Summary {
  double min = 0;
  double mean = 0;
  double max = 0;
  double variance = 0;  // sample variance (n - 1)
  std::size_t count = 0;
};

Summary summarize(std::span<const double> values);

struct GraphStats {
  Summary edge_count;  // single observation for one graph
  Summary edge_length;
  Summary vertex_degree;
  Summary path_hops;
  Summary path_length;
};

/// Statistics over all edges, all vertices and all ordered reachable pairs.
GraphStats compute_stats(const Multigraph& g);

/// Pools the raw observations of several graphs.
GraphStats compute_stats(std::span<const Multigraph> graphs);

/// CSV rows "quantity,min,average,max,variance".
void write_stats_csv(std::ostream& os, const GraphStats& stats);

/// Text format: "V E OMEGA", then E lines "u v length".
void write_graph(std::ostream& os, const Multigraph& g);
Multigraph read_graph(std::istream& is);
void save_graph(const std::filesystem::path& path, const Multigraph& g);
Multigraph load_graph(const std::filesystem::path& path);

}  // namespace eon
