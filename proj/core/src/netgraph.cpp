#include "eon/netgraph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <queue>
#include <sstream>

#include "eon/random.hpp"
#include "eon/words.hpp"

namespace eon {

ParseError::ParseError(std::size_t line, const std::string& what)
    : GraphError("line " + std::to_string(line) + ": " + what), line_(line) {}

Multigraph::Multigraph(VertexId vertex_count, Unit omega)
    : vertex_count_(vertex_count), omega_(omega) {
  if (vertex_count < 0) {
    throw GraphError("negative vertex count");
  }
  if (omega < 1) {
    throw GraphError("omega must be at least 1");
  }
  adjacency_.resize(static_cast<std::size_t>(vertex_count));
}

EdgeId Multigraph::add_edge(VertexId u, VertexId v, Cost length) {
  if (!valid_vertex(u) || !valid_vertex(v)) {
    throw GraphError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                     ") references a vertex outside [0," + std::to_string(vertex_count_) + ")");
  }
  if (length < 0) {
    throw GraphError("negative edge length");
  }
  const auto id = static_cast<EdgeId>(edges_.size());
  edges_.push_back(Edge{id, u, v, length});
  available_.push_back(UnitSet::full(omega_));
  adjacency_[static_cast<std::size_t>(u)].push_back(Incidence{id, v});
  if (u != v) {
    adjacency_[static_cast<std::size_t>(v)].push_back(Incidence{id, u});
  }
  return id;
}

void Multigraph::set_available(EdgeId e, UnitSet units) {
  if (!units.empty() && (units.cus().front().lo < 0 || units.cus().back().hi >= omega_)) {
    throw GraphError("available units outside [0, omega)");
  }
  available_.at(static_cast<std::size_t>(e)) = std::move(units);
}

void Multigraph::allocate(EdgeId e, CU c) {
  auto& au = available_.at(static_cast<std::size_t>(e));
  au = eon::allocate(au, c);
}

void Multigraph::release(EdgeId e, CU c) {
  if (c.hi >= omega_) {
    throw SpectrumError("release beyond omega");
  }
  auto& au = available_.at(static_cast<std::size_t>(e));
  au = eon::release(au, c);
}

void Multigraph::reset_spectrum() {
  for (auto& au : available_) {
    au = UnitSet::full(omega_);
  }
}

Multigraph Multigraph::with_omega(Unit omega) const {
  Multigraph g(vertex_count_, omega);
  for (const Edge& e : edges_) {
    g.add_edge(e.u, e.v, e.length);
  }
  return g;
}

bool Multigraph::same_topology(const Multigraph& other) const noexcept {
  if (vertex_count_ != other.vertex_count_ || edges_.size() != other.edges_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& a = edges_[i];
    const Edge& b = other.edges_[i];
    if (a.u != b.u || a.v != b.v || a.length != b.length) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Gabriel graphs

namespace {

double dist2(const Point& a, const Point& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

}  // namespace

Multigraph gabriel_from_points(std::span<const Point> points, Unit omega) {
  const auto n = static_cast<VertexId>(points.size());
  Multigraph g(n, omega);
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) {
      const double duv = dist2(points[u], points[v]);
      bool blocked = false;
      for (VertexId w = 0; w < n && !blocked; ++w) {
        if (w == u || w == v) {
          continue;
        }
        // w in the closed disk with diameter uv.
        blocked = dist2(points[u], points[w]) + dist2(points[w], points[v]) <= duv;
      }
      if (!blocked) {
        const auto length = static_cast<Cost>(std::llround(std::sqrt(duv)));
        g.add_edge(u, v, std::max<Cost>(1, length));
      }
    }
  }
  return g;
}

GabrielGraph gabriel_generate(VertexId n_vertices, double density, std::uint64_t seed,
                              Unit omega) {
  if (n_vertices < 2) {
    throw GraphError("a Gabriel graph needs at least 2 vertices");
  }
  if (!(density > 0)) {
    throw GraphError("density must be positive");
  }
  const double side = std::sqrt(static_cast<double>(n_vertices) / density);
  GabrielGraph out;
  for (int attempt = 0;; ++attempt) {
    Rng rng = make_rng(seed, Stream::kGraph, static_cast<std::uint64_t>(attempt));
    std::uniform_real_distribution<double> coord(0.0, side);
    std::vector<Point> points(static_cast<std::size_t>(n_vertices));
    for (auto& p : points) {
      p.x = coord(rng);
      p.y = coord(rng);
    }
    Multigraph g = gabriel_from_points(points, omega);
    if (is_connected(g)) {
      out.graph = std::move(g);
      out.points = std::move(points);
      out.redraws = attempt;
      return out;
    }
  }
}

bool is_connected(const Multigraph& g) {
  if (g.vertex_count() == 0) {
    return true;
  }
  std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()), 0);
  std::vector<VertexId> stack{0};
  seen[0] = 1;
  VertexId reached = 1;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (const Incidence& inc : g.incident(v)) {
      if (!seen[static_cast<std::size_t>(inc.neighbor)]) {
        seen[static_cast<std::size_t>(inc.neighbor)] = 1;
        ++reached;
        stack.push_back(inc.neighbor);
      }
    }
  }
  return reached == g.vertex_count();
}

// ---------------------------------------------------------------------------
// Classic Dijkstra

Path ShortestPathTree::path_to(const Multigraph& g, VertexId t) const {
  Path p;
  if (!reachable(t)) {
    throw GraphError("target not reachable");
  }
  p.cost = dist[static_cast<std::size_t>(t)];
  VertexId v = t;
  while (v != source) {
    const EdgeId e = pred_edge[static_cast<std::size_t>(v)];
    p.edges.push_back(e);
    v = g.edge(e).other(v);
  }
  std::reverse(p.edges.begin(), p.edges.end());
  return p;
}

ShortestPathTree shortest_path_tree(const Multigraph& g, VertexId source,
                                    std::optional<VertexId> target, EdgeMask mask,
                                    WordMeter* meter) {
  if (!g.valid_vertex(source) || (target && !g.valid_vertex(*target))) {
    throw GraphError("invalid source or target vertex");
  }
  const auto n = static_cast<std::size_t>(g.vertex_count());
  ShortestPathTree tree;
  tree.source = source;
  tree.dist.assign(n, -1);
  tree.pred_edge.assign(n, kNullEdge);
  tree.hops.assign(n, 0);
  std::vector<char> settled(n, 0);

  using Entry = std::pair<Cost, VertexId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  std::int64_t labeled = 1;
  auto observe = [&] {
    if (meter != nullptr) {
      meter->observe((labeled + static_cast<std::int64_t>(queue.size())) * kDijkstraLabelWords);
    }
  };

  tree.dist[static_cast<std::size_t>(source)] = 0;
  queue.emplace(0, source);
  observe();
  while (!queue.empty()) {
    const auto [d, v] = queue.top();
    queue.pop();
    const auto vi = static_cast<std::size_t>(v);
    if (settled[vi] || d != tree.dist[vi]) {
      continue;
    }
    settled[vi] = 1;
    if (target && v == *target) {
      break;
    }
    for (const Incidence& inc : g.incident(v)) {
      if (!mask.empty() && !mask[static_cast<std::size_t>(inc.edge)]) {
        continue;
      }
      const auto wi = static_cast<std::size_t>(inc.neighbor);
      if (settled[wi]) {
        continue;
      }
      const Cost nd = d + g.edge(inc.edge).length;
      if (tree.dist[wi] < 0 || nd < tree.dist[wi]) {
        if (tree.dist[wi] < 0) {
          ++labeled;
        }
        tree.dist[wi] = nd;
        tree.pred_edge[wi] = inc.edge;
        tree.hops[wi] = tree.hops[vi] + 1;
        queue.emplace(nd, inc.neighbor);
        observe();
      } else if (nd == tree.dist[wi] && inc.edge < tree.pred_edge[wi]) {
        tree.pred_edge[wi] = inc.edge;
        tree.hops[wi] = tree.hops[vi] + 1;
      }
    }
  }
  return tree;
}

std::optional<Path> classic_dijkstra(const Multigraph& g, VertexId s, VertexId t, EdgeMask mask,
                                     WordMeter* meter) {
  const ShortestPathTree tree = shortest_path_tree(g, s, t, mask, meter);
  if (!tree.reachable(t)) {
    return std::nullopt;
  }
  return tree.path_to(g, t);
}

// ---------------------------------------------------------------------------
// Statistics

Summary summarize(std::span<const double> values) {
  Summary s;
  s.count = values.size();
  if (values.empty()) {
    return s;
  }
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  s.min = *lo;
  s.max = *hi;
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(s.count);
  if (s.count > 1) {
    double acc = 0;
    for (double v : values) {
      acc += (v - s.mean) * (v - s.mean);
    }
    s.variance = acc / static_cast<double>(s.count - 1);
  }
  return s;
}

namespace {

struct RawStats {
  std::vector<double> edge_count, edge_length, degree, hops, length;

  void add(const Multigraph& g) {
    edge_count.push_back(static_cast<double>(g.edge_count()));
    for (const Edge& e : g.edges()) {
      edge_length.push_back(static_cast<double>(e.length));
    }
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      degree.push_back(static_cast<double>(g.degree(v)));
    }
    for (VertexId s = 0; s < g.vertex_count(); ++s) {
      const ShortestPathTree tree = shortest_path_tree(g, s);
      for (VertexId t = 0; t < g.vertex_count(); ++t) {
        if (t != s && tree.reachable(t)) {
          hops.push_back(tree.hops[static_cast<std::size_t>(t)]);
          length.push_back(static_cast<double>(tree.dist[static_cast<std::size_t>(t)]));
        }
      }
    }
  }

  GraphStats finish() const {
    return GraphStats{summarize(edge_count), summarize(edge_length), summarize(degree),
                      summarize(hops), summarize(length)};
  }
};

}  // namespace

GraphStats compute_stats(const Multigraph& g) {
  RawStats raw;
  raw.add(g);
  return raw.finish();
}

GraphStats compute_stats(std::span<const Multigraph> graphs) {
  RawStats raw;
  for (const Multigraph& g : graphs) {
    raw.add(g);
  }
  return raw.finish();
}

void write_stats_csv(std::ostream& os, const GraphStats& stats) {
  os << "quantity,min,average,max,variance\n";
  auto row = [&os](const char* name, const Summary& s) {
    os << name << ',' << s.min << ',' << s.mean << ',' << s.max << ',' << s.variance << '\n';
  };
  row("number of edges", stats.edge_count);
  row("edge length", stats.edge_length);
  row("vertex degree", stats.vertex_degree);
  row("shortest-path hops", stats.path_hops);
  row("shortest-path length", stats.path_length);
}

// ---------------------------------------------------------------------------
// File I/O

void write_graph(std::ostream& os, const Multigraph& g) {
  os << g.vertex_count() << ' ' << g.edge_count() << ' ' << g.omega() << '\n';
  for (const Edge& e : g.edges()) {
    os << e.u << ' ' << e.v << ' ' << e.length << '\n';
  }
}

namespace {

// Reads the next non-blank line as exactly three integers.
bool read_triple(std::istream& is, std::size_t& line_no, std::int64_t (&out)[3]) {
  std::string line;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    std::istringstream ls(line);
    for (auto& x : out) {
      if (!(ls >> x)) {
        throw ParseError(line_no, "expected three integers");
      }
    }
    std::string rest;
    if (ls >> rest) {
      throw ParseError(line_no, "unexpected trailing token '" + rest + "'");
    }
    return true;
  }
  return false;
}

}  // namespace

Multigraph read_graph(std::istream& is) {
  std::size_t line_no = 0;
  std::int64_t header[3];
  if (!read_triple(is, line_no, header)) {
    throw ParseError(line_no + 1, "missing header 'V E OMEGA'");
  }
  const auto [nv, ne, omega] = header;
  if (nv < 0 || ne < 0 || omega < 1 || nv > INT32_MAX || ne > INT32_MAX || omega > INT32_MAX) {
    throw ParseError(line_no, "header values out of range");
  }
  Multigraph g(static_cast<VertexId>(nv), static_cast<Unit>(omega));
  for (std::int64_t i = 0; i < ne; ++i) {
    std::int64_t rec[3];
    if (!read_triple(is, line_no, rec)) {
      throw ParseError(line_no + 1, "expected " + std::to_string(ne) + " edges, got " +
                                        std::to_string(i));
    }
    const auto [u, v, length] = rec;
    if (u < 0 || u >= nv || v < 0 || v >= nv) {
      throw ParseError(line_no, "edge references vertex outside [0," + std::to_string(nv) + ")");
    }
    if (length < 0) {
      throw ParseError(line_no, "negative edge length");
    }
    g.add_edge(static_cast<VertexId>(u), static_cast<VertexId>(v), length);
  }
  std::int64_t extra[3];
  try {
    if (read_triple(is, line_no, extra)) {
      throw ParseError(line_no, "more edges than declared");
    }
  } catch (const ParseError& err) {
    throw ParseError(err.line(), "more edges than declared");
  }
  return g;
}

void save_graph(const std::filesystem::path& path, const Multigraph& g) {
  std::ofstream os(path);
  if (!os) {
    throw GraphError("cannot open " + path.string() + " for writing");
  }
  write_graph(os, g);
  if (!os) {
    throw GraphError("write failed: " + path.string());
  }
}

Multigraph load_graph(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) {
    throw GraphError("cannot open " + path.string());
  }
  return read_graph(is);
}

}  // namespace eon
