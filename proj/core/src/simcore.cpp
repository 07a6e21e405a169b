#include "eon/simcore.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <queue>
#include <sstream>

#include "eon/baselines.hpp"

namespace eon {

std::string_view to_string(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::kGeneric:
      return "generic";
    case Algorithm::kFiltered:
      return "filtered";
    case Algorithm::kBruteForce:
      return "brute";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "generic" || name == "gd") {
    return Algorithm::kGeneric;
  }
  if (name == "filtered" || name == "fg") {
    return Algorithm::kFiltered;
  }
  if (name == "brute" || name == "brute-force" || name == "bf") {
    return Algorithm::kBruteForce;
  }
  throw ConfigError("unknown algorithm '" + std::string(name) + "'");
}

std::vector<Algorithm> parse_algorithms(std::string_view list) {
  std::vector<Algorithm> out;
  while (!list.empty()) {
    const auto comma = list.find(',');
    const auto item = list.substr(0, comma);
    if (!item.empty()) {
      const Algorithm a = parse_algorithm(item);
      if (std::find(out.begin(), out.end(), a) == out.end()) {
        out.push_back(a);
      }
    }
    if (comma == std::string_view::npos) {
      break;
    }
    list.remove_prefix(comma + 1);
  }
  if (out.empty()) {
    throw ConfigError("no algorithm selected");
  }
  return out;
}

std::optional<std::string> route_defect(const Multigraph& g, VertexId source, VertexId target,
                                        const DemandRule& rule, const Route& route) {
  std::ostringstream why;
  std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()), 0);
  VertexId at = source;
  seen[static_cast<std::size_t>(at)] = 1;
  Cost cost = 0;
  for (const EdgeId e : route.edges) {
    if (e < 0 || e >= g.edge_count()) {
      return "unknown edge " + std::to_string(e);
    }
    const Edge& edge = g.edge(e);
    if (edge.u != at && edge.v != at) {
      why << "edge e" << e << " does not leave vertex " << at;
      return why.str();
    }
    at = edge.other(at);
    if (seen[static_cast<std::size_t>(at)]) {
      why << "path revisits vertex " << at;
      return why.str();
    }
    seen[static_cast<std::size_t>(at)] = 1;
    cost += edge.length;
    if (!g.available(e).contains(route.cu)) {
      why << route.cu << " not available on e" << e;
      return why.str();
    }
  }
  if (at != target) {
    return "path ends at " + std::to_string(at) + ", not at the target";
  }
  if (cost != route.cost) {
    why << "reported cost " << route.cost << " but edges sum to " << cost;
    return why.str();
  }
  if (route.cu.hi >= g.omega() || route.cu.lo < 0) {
    return "CU outside the unit universe";
  }
  const auto need = rule.required_units(cost);
  if (!need || *need != route.cu.width()) {
    why << "CU width " << route.cu.width() << " differs from the required width";
    return why.str();
  }
  return std::nullopt;
}

std::optional<Route> run_search(Algorithm algo, const Multigraph& g, VertexId source,
                                VertexId target, const DemandRule& rule, AllocationPolicy policy,
                                Rng* rng, WordMeter* meter, bool count_archive) {
  switch (algo) {
    case Algorithm::kGeneric:
      return generic_dijkstra(g, source, target, rule, policy, rng, meter,
                              GenericSearchOptions{count_archive});
    case Algorithm::kFiltered:
      return filtered_search(g, source, target, rule, policy, rng, meter);
    case Algorithm::kBruteForce:
      return brute_search(g, source, target, rule, policy, rng, meter);
  }
  throw ConfigError("unknown algorithm");
}

// ---------------------------------------------------------------------------
// Traffic

void TrafficConfig::validate() const {
  if (!(mu >= 0) || !(gamma >= 1) || !(delta > 0) || !(horizon > 0)) {
    throw ConfigError("traffic needs mu >= 0, gamma >= 1, delta > 0 and horizon > 0");
  }
}

double arrival_rate(double mu, std::int64_t edges, Unit omega, double delta, double alpha,
                    double gamma) {
  return mu * static_cast<double>(edges) * static_cast<double>(omega) / (delta * alpha * gamma);
}

double mean_shortest_hops(const Multigraph& g) {
  double hops = 0;
  std::int64_t pairs = 0;
  for (VertexId s = 0; s < g.vertex_count(); ++s) {
    const ShortestPathTree tree = shortest_path_tree(g, s);
    for (VertexId t = 0; t < g.vertex_count(); ++t) {
      if (t == s) {
        continue;
      }
      if (!tree.reachable(t)) {
        throw GraphError("mean_shortest_hops: graph is disconnected");
      }
      hops += tree.hops[static_cast<std::size_t>(t)];
      ++pairs;
    }
  }
  if (pairs == 0) {
    throw GraphError("mean_shortest_hops: need at least two vertices");
  }
  return hops / static_cast<double>(pairs);
}

DrawnDemand draw_demand(Rng& sizes, Rng& endpoints, Rng& holding, double gamma, double delta,
                        VertexId vertices) {
  if (!(gamma >= 1)) {
    throw ConfigError("gamma must be at least 1");
  }
  if (vertices < 2) {
    throw ConfigError("demands need at least two vertices");
  }
  DrawnDemand d;
  if (gamma > 1) {
    std::poisson_distribution<Unit> extra(gamma - 1);
    d.demand.n_base = 1 + extra(sizes);
  }
  std::uniform_int_distribution<VertexId> first(0, vertices - 1);
  std::uniform_int_distribution<VertexId> second(0, vertices - 2);
  d.demand.source = first(endpoints);
  const VertexId other = second(endpoints);
  d.demand.target = other < d.demand.source ? other : other + 1;
  std::exponential_distribution<double> hold(1.0 / delta);
  d.holding = hold(holding);
  return d;
}

TrafficSource::TrafficSource(std::uint64_t seed, const TrafficConfig& config, VertexId vertices,
                             double lambda)
    : config_(config),
      vertices_(vertices),
      lambda_(lambda),
      arrivals_(make_rng(seed, Stream::kArrivals)),
      sizes_(make_rng(seed, Stream::kSizes)),
      endpoints_(make_rng(seed, Stream::kEndpoints)),
      holding_(make_rng(seed, Stream::kHolding)) {}

double TrafficSource::next_interarrival() {
  if (!(lambda_ > 0)) {
    return std::numeric_limits<double>::infinity();
  }
  std::exponential_distribution<double> gap(lambda_);
  return gap(arrivals_);
}

DrawnDemand TrafficSource::next_demand() {
  return draw_demand(sizes_, endpoints_, holding_, config_.gamma, config_.delta, vertices_);
}

// ---------------------------------------------------------------------------
// Simulation

void check_spectrum_conservation(const Multigraph& g, std::span<const Connection> active) {
  std::vector<std::vector<CU>> used(static_cast<std::size_t>(g.edge_count()));
  for (const Connection& c : active) {
    for (const EdgeId e : c.path) {
      used[static_cast<std::size_t>(e)].push_back(c.cu);
    }
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    auto& cus = used[static_cast<std::size_t>(e)];
    std::sort(cus.begin(), cus.end(), [](CU a, CU b) { return a.lo < b.lo; });
    std::int64_t in_use = 0;
    for (std::size_t i = 0; i < cus.size(); ++i) {
      if (i > 0 && cus[i].lo <= cus[i - 1].hi) {
        throw ValidationError("overlapping allocations on edge e" + std::to_string(e));
      }
      if (g.available(e).overlaps(cus[i])) {
        throw ValidationError("allocated units still marked available on edge e" +
                              std::to_string(e));
      }
      in_use += cus[i].width();
    }
    if (in_use + g.available(e).unit_count() != g.omega()) {
      throw ValidationError("units not conserved on edge e" + std::to_string(e));
    }
  }
}

namespace {

struct Departure {
  double time;
  std::int64_t id;
  bool operator>(const Departure& o) const noexcept {
    return time != o.time ? time > o.time : id > o.id;
  }
};

class SummaryBuilder {
public:
  void add(const SearchMetrics& m) {
    auto& acc = acc_[static_cast<std::size_t>(m.algo)];
    ++acc.n;
    acc.time_sum += m.time_us;
    acc.time_max = std::max(acc.time_max, m.time_us);
    const auto words = static_cast<double>(m.words.total());
    acc.words_sum += words;
    if (acc.n == 1 || words > acc.words_max) {
      acc.words_max = words;
      acc.peak = m.words;
    }
  }

  void finish(RunReport& report) const {
    for (std::size_t i = 0; i < acc_.size(); ++i) {
      const Acc& a = acc_[i];
      AlgorithmSummary& s = report.summary[i];
      s.searches = a.n;
      if (a.n > 0) {
        s.mean_time_us = a.time_sum / static_cast<double>(a.n);
        s.max_time_us = a.time_max;
        s.mean_words = a.words_sum / static_cast<double>(a.n);
        s.max_words = a.words_max;
        s.peak_words = a.peak;
      }
    }
  }

private:
  struct Acc {
    std::int64_t n = 0;
    double time_sum = 0;
    double time_max = 0;
    double words_sum = 0;
    double words_max = 0;
    WordCount peak;
  };
  std::array<Acc, kAllAlgorithms.size()> acc_{};
};

Algorithm establishing_algorithm(std::span<const Algorithm> enabled) {
  for (const Algorithm a : kAllAlgorithms) {
    if (std::find(enabled.begin(), enabled.end(), a) != enabled.end()) {
      return a;
    }
  }
  throw ConfigError("no algorithm selected");
}

std::string describe(const SearchMetrics& m) {
  std::ostringstream os;
  os << to_string(m.algo) << ": ";
  if (!m.success) {
    os << "no route";
  } else {
    os << "cost " << m.cost << ", width " << m.cu.width();
  }
  return os.str();
}

}  // namespace

RunReport run_simulation(const Multigraph& graph, const TrafficConfig& traffic,
                         const ModulationModel& model, const SimulationOptions& options) {
  traffic.validate();
  if (options.algorithms.empty()) {
    throw ConfigError("no algorithm selected");
  }
  Multigraph g = graph.with_omega(graph.omega());
  const Algorithm establisher = establishing_algorithm(options.algorithms);

  double lambda = 0;
  if (options.lambda) {
    lambda = *options.lambda;
  } else if (traffic.mu > 0) {
    lambda = arrival_rate(traffic.mu, g.edge_count(), g.omega(), traffic.delta,
                          mean_shortest_hops(g), traffic.gamma);
  }
  TrafficSource source(options.seed, traffic, g.vertex_count(), lambda);

  std::array<Rng, kAllAlgorithms.size()> fit_rngs{
      make_rng(options.seed, Stream::kRandomFit, 0), make_rng(options.seed, Stream::kRandomFit, 1),
      make_rng(options.seed, Stream::kRandomFit, 2)};

  RunReport report;
  report.algorithms = options.algorithms;
  SummaryBuilder summaries;

  std::map<std::int64_t, Connection> active;
  std::priority_queue<Departure, std::vector<Departure>, std::greater<>> departures;
  std::int64_t next_id = 0;

  const double capacity = static_cast<double>(g.edge_count()) * static_cast<double>(g.omega());
  std::int64_t units_in_use = 0;
  double utilization_area = 0;
  double max_utilization = 0;
  auto utilization = [&] {
    return capacity > 0 ? static_cast<double>(units_in_use) / capacity : 0.0;
  };

  std::vector<Connection> snapshot;
  auto check = [&] {
    if (!options.check_invariants) {
      return;
    }
    snapshot.clear();
    for (const auto& [id, c] : active) {
      snapshot.push_back(c);
    }
    check_spectrum_conservation(g, snapshot);
    const double u = utilization();
    if (u < 0 || u > 1) {
      throw ValidationError("utilization outside [0, 1]");
    }
    ++report.invariant_checks;
  };

  double now = 0;
  double next_arrival = source.next_interarrival();
  std::vector<SearchMetrics> results;
  std::vector<std::optional<Route>> routes;

  while (true) {
    const double next_departure =
        departures.empty() ? std::numeric_limits<double>::infinity() : departures.top().time;
    const double next_event = std::min(next_arrival, next_departure);
    if (next_event > traffic.horizon) {
      utilization_area += utilization() * (traffic.horizon - now);
      break;
    }
    utilization_area += utilization() * (next_event - now);
    now = next_event;
    ++report.events;

    if (next_departure <= next_arrival) {
      const Departure dep = departures.top();
      departures.pop();
      auto it = active.find(dep.id);
      for (const EdgeId e : it->second.path) {
        g.release(e, it->second.cu);
      }
      units_in_use -= static_cast<std::int64_t>(it->second.path.size()) * it->second.cu.width();
      active.erase(it);
      check();
      continue;
    }

    const DrawnDemand drawn = source.next_demand();
    next_arrival = now + source.next_interarrival();
    ++report.offered;
    const ModulatedUnits rule(drawn.demand.n_base, model);

    results.clear();
    routes.clear();
    for (const Algorithm algo : options.algorithms) {
      WordMeter meter;
      Rng& rng = fit_rngs[static_cast<std::size_t>(algo)];
      const auto start = std::chrono::steady_clock::now();
      auto route = run_search(algo, g, drawn.demand.source, drawn.demand.target, rule,
                              options.policy, &rng, options.measure_memory ? &meter : nullptr,
                              options.count_archive);
      const auto stop = std::chrono::steady_clock::now();
      SearchMetrics m;
      m.algo = algo;
      m.success = route.has_value();
      if (route) {
        m.cost = route->cost;
        m.cu = route->cu;
      }
      m.time_us = std::chrono::duration<double, std::micro>(stop - start).count();
      m.words = meter.peak();
      results.push_back(m);
      routes.push_back(std::move(route));
    }

    for (const SearchMetrics& m : results) {
      const SearchMetrics& ref = results.front();
      const bool agree = m.success == ref.success &&
                         (!m.success || (m.cost == ref.cost && m.cu.width() == ref.cu.width()));
      if (!agree) {
        std::ostringstream msg;
        msg << "algorithms disagree on demand " << drawn.demand.source << "->"
            << drawn.demand.target << " (" << drawn.demand.n_base << " units) at day " << now
            << ": " << describe(ref) << " vs " << describe(m);
        throw ValidationError(msg.str());
      }
    }
    for (const SearchMetrics& m : results) {
      summaries.add(m);
      if (options.keep_records) {
        report.records.push_back(SearchRecord{now, drawn.demand, m});
      }
    }

    const auto pos = std::find(options.algorithms.begin(), options.algorithms.end(), establisher) -
                     options.algorithms.begin();
    const auto& chosen = routes[static_cast<std::size_t>(pos)];
    if (!chosen) {
      ++report.blocked;
    } else {
      ++report.established;
      Connection c{drawn.demand, chosen->edges, chosen->cu, now + drawn.holding};
      for (const EdgeId e : c.path) {
        g.allocate(e, c.cu);
      }
      units_in_use += static_cast<std::int64_t>(c.path.size()) * c.cu.width();
      max_utilization = std::max(max_utilization, utilization());
      const std::int64_t id = next_id++;
      departures.push(Departure{c.departure, id});
      active.emplace(id, std::move(c));
    }
    check();
  }

  report.mean_utilization = utilization_area / traffic.horizon;
  report.max_utilization = max_utilization;
  summaries.finish(report);
  return report;
}

RunReport report_from_records(std::vector<SearchRecord> records) {
  RunReport report;
  SummaryBuilder summaries;
  for (const SearchRecord& r : records) {
    summaries.add(r.metrics);
    if (std::find(report.algorithms.begin(), report.algorithms.end(), r.metrics.algo) ==
        report.algorithms.end()) {
      report.algorithms.push_back(r.metrics.algo);
    }
  }
  if (!report.algorithms.empty()) {
    const Algorithm establisher = establishing_algorithm(report.algorithms);
    for (const SearchRecord& r : records) {
      if (r.metrics.algo == establisher) {
        ++report.offered;
        ++(r.metrics.success ? report.established : report.blocked);
      }
    }
  }
  summaries.finish(report);
  report.records = std::move(records);
  return report;
}

// ---------------------------------------------------------------------------
// CSV

namespace {

constexpr std::string_view kRunHeader =
    "day,src,dst,n_base,algo,success,cost,cu_lo,cu_width,time_us,words_cost,words_edge,words_unit";

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) {
    out.push_back(field);
  }
  if (!line.empty() && line.back() == ',') {
    out.emplace_back();
  }
  return out;
}

template <typename T>
T parse_field(const std::string& s, std::size_t line, const char* name) {
  std::istringstream is(s);
  T value{};
  if (!(is >> value) || !is.eof()) {
    throw ParseError(line, std::string("bad value for ") + name + ": '" + s + "'");
  }
  return value;
}

}  // namespace

void write_run_csv(std::ostream& os, const RunReport& report) {
  os << kRunHeader << '\n';
  for (const SearchRecord& r : report.records) {
    const SearchMetrics& m = r.metrics;
    os << std::fixed << std::setprecision(9) << r.day << std::defaultfloat << ','
       << r.demand.source << ',' << r.demand.target << ',' << r.demand.n_base << ','
       << to_string(m.algo) << ',' << (m.success ? 1 : 0) << ',' << (m.success ? m.cost : -1)
       << ',' << (m.success ? m.cu.lo : -1) << ',' << (m.success ? m.cu.width() : 0) << ','
       << std::fixed << std::setprecision(3) << m.time_us << std::defaultfloat << ','
       << m.words.costs << ',' << m.words.edges << ',' << m.words.units << '\n';
  }
}

std::vector<SearchRecord> read_run_csv(std::istream& is) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(is, line)) {
    throw ParseError(1, "empty run CSV");
  }
  if (!line.empty() && line.back() == '\r') {
    line.pop_back();
  }
  if (line != kRunHeader) {
    throw ParseError(1, "unexpected run CSV header");
  }
  std::vector<SearchRecord> out;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    const auto f = split_csv(line);
    if (f.size() != 13) {
      throw ParseError(line_no, "expected 13 fields");
    }
    SearchRecord r;
    r.day = parse_field<double>(f[0], line_no, "day");
    r.demand.source = parse_field<VertexId>(f[1], line_no, "src");
    r.demand.target = parse_field<VertexId>(f[2], line_no, "dst");
    r.demand.n_base = parse_field<Unit>(f[3], line_no, "n_base");
    try {
      r.metrics.algo = parse_algorithm(f[4]);
    } catch (const ConfigError&) {
      throw ParseError(line_no, "unknown algorithm '" + f[4] + "'");
    }
    r.metrics.success = parse_field<int>(f[5], line_no, "success") != 0;
    r.metrics.cost = parse_field<Cost>(f[6], line_no, "cost");
    const auto lo = parse_field<Unit>(f[7], line_no, "cu_lo");
    const auto width = parse_field<Unit>(f[8], line_no, "cu_width");
    r.metrics.cu = CU{lo, lo + width - 1};
    r.metrics.time_us = parse_field<double>(f[9], line_no, "time_us");
    r.metrics.words.costs = parse_field<std::int64_t>(f[10], line_no, "words_cost");
    r.metrics.words.edges = parse_field<std::int64_t>(f[11], line_no, "words_edge");
    r.metrics.words.units = parse_field<std::int64_t>(f[12], line_no, "words_unit");
    out.push_back(r);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Populations

const PopulationRow* PopulationReport::find(std::string_view metric, std::string_view algo) const {
  for (const PopulationRow& r : rows) {
    if (r.metric == metric && r.algo == algo) {
      return &r;
    }
  }
  return nullptr;
}

namespace {

PopulationRow population_row(std::string metric, std::string algo, std::span<const double> means,
                             std::span<const double> maxima) {
  PopulationRow row;
  row.metric = std::move(metric);
  row.algo = std::move(algo);
  row.samples = means.size();
  const Summary s = summarize(means);
  row.sample_mean = s.mean;
  row.sample_max = maxima.empty() ? 0 : *std::max_element(maxima.begin(), maxima.end());
  const double se = std::sqrt(s.variance / static_cast<double>(means.size()));
  row.rse = s.mean != 0 ? se / std::abs(s.mean) : 0;
  row.ci95 = 1.96 * se;
  row.low_sample = means.size() < kMinSamplesForCi;
  return row;
}

}  // namespace

PopulationReport aggregate(std::span<const RunReport> reports) {
  if (reports.size() < 2) {
    throw ConfigError("aggregate needs at least two run reports");
  }
  PopulationReport out;
  for (const Algorithm a : kAllAlgorithms) {
    std::vector<double> time_mean, time_max, words_mean, words_max;
    for (const RunReport& r : reports) {
      const AlgorithmSummary& s = r.of(a);
      if (s.searches == 0) {
        continue;
      }
      time_mean.push_back(s.mean_time_us);
      time_max.push_back(s.max_time_us);
      words_mean.push_back(s.mean_words);
      words_max.push_back(s.max_words);
    }
    if (time_mean.empty()) {
      continue;
    }
    const std::string name(to_string(a));
    out.rows.push_back(population_row("time_us", name, time_mean, time_max));
    out.rows.push_back(population_row("words", name, words_mean, words_max));
  }
  std::vector<double> util_mean, util_max, blocking;
  for (const RunReport& r : reports) {
    if (r.mean_utilization) {
      util_mean.push_back(*r.mean_utilization);
      util_max.push_back(r.max_utilization.value_or(*r.mean_utilization));
    }
    if (r.offered > 0) {
      blocking.push_back(static_cast<double>(r.blocked) / static_cast<double>(r.offered));
    }
  }
  if (util_mean.size() == reports.size()) {
    out.rows.push_back(population_row("utilization", "all", util_mean, util_max));
  }
  if (!blocking.empty()) {
    out.rows.push_back(population_row("blocking", "all", blocking, blocking));
  }
  return out;
}

void write_population_csv(std::ostream& os, const PopulationReport& report,
                          std::string_view prefix_header, std::string_view prefix_values) {
  if (!prefix_header.empty()) {
    os << prefix_header << ',';
  }
  os << "metric,algo,sample_mean,sample_max,rse,ci95,samples,low_sample\n";
  for (const PopulationRow& r : report.rows) {
    if (!prefix_values.empty()) {
      os << prefix_values << ',';
    }
    os << r.metric << ',' << r.algo << ',' << std::setprecision(10) << r.sample_mean << ','
       << r.sample_max << ',' << r.rse << ',' << r.ci95 << ',' << r.samples << ','
       << (r.low_sample ? 1 : 0) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Randomized cross-check

RandomInstance random_instance(Rng& rng, const VerifyConfig& config) {
  if (config.max_vertices < 2 || config.max_omega < 1) {
    throw ConfigError("verify needs max_vertices >= 2 and max_omega >= 1");
  }
  std::uniform_int_distribution<VertexId> vertex_count(2, config.max_vertices);
  std::uniform_int_distribution<Unit> omega_dist(1, config.max_omega);
  std::uniform_real_distribution<double> unit01(0.0, 1.0);
  std::bernoulli_distribution coin(0.5);

  RandomInstance inst;
  const VertexId n = vertex_count(rng);
  const Unit omega = omega_dist(rng);
  inst.gabriel = coin(rng);
  if (inst.gabriel) {
    std::uniform_real_distribution<double> coord(0.0, 100.0);
    std::vector<Point> points(static_cast<std::size_t>(n));
    for (auto& p : points) {
      p.x = coord(rng);
      p.y = coord(rng);
    }
    inst.graph = gabriel_from_points(points, omega);
  } else {
    inst.graph = Multigraph(n, omega);
    const double edge_p = 0.15 + 0.35 * unit01(rng);
    std::uniform_int_distribution<Cost> length(1, 20);
    for (VertexId u = 0; u < n; ++u) {
      for (VertexId v = u + 1; v < n; ++v) {
        if (unit01(rng) < edge_p) {
          inst.graph.add_edge(u, v, length(rng));
          if (unit01(rng) < 0.2) {
            inst.graph.add_edge(u, v, length(rng));  // parallel edge
          }
        }
      }
    }
  }

  const double density = 0.3 + 0.6 * unit01(rng);
  for (EdgeId e = 0; e < inst.graph.edge_count(); ++e) {
    std::vector<CU> units;
    for (Unit u = 0; u < omega; ++u) {
      if (unit01(rng) < density) {
        units.push_back(CU{u, u});
      }
    }
    inst.graph.set_available(e, UnitSet::from_cus(std::move(units)));
  }

  std::uniform_int_distribution<VertexId> vertex(0, n - 1);
  inst.source = vertex(rng);
  inst.target = vertex(rng);
  if (inst.target == inst.source && unit01(rng) < 0.9) {
    inst.target = (inst.source + 1) % n;
  }
  std::uniform_int_distribution<Unit> n_base(1, 4);
  inst.n_base = n_base(rng);

  if (coin(rng)) {
    Cost longest = 0;
    for (VertexId s = 0; s < n; ++s) {
      const ShortestPathTree tree = shortest_path_tree(inst.graph, s);
      for (const Cost d : tree.dist) {
        longest = std::max(longest, d);
      }
    }
    if (longest > 0) {
      std::uniform_int_distribution<int> levels(1, 4);
      const double factor = 0.5 + 1.5 * unit01(rng);
      const int m = levels(rng);
      inst.model = ModulationModel(m, std::ldexp(factor * static_cast<double>(longest), 1 - m));
    }
  }
  return inst;
}

VerifyReport verify_random_instances(const VerifyConfig& config) {
  VerifyReport report;
  Rng rng = make_rng(config.seed, Stream::kInstances);
  for (int i = 0; i < config.instances; ++i) {
    const RandomInstance inst = random_instance(rng, config);
    std::unique_ptr<DemandRule> rule;
    if (inst.model) {
      rule = std::make_unique<ModulatedUnits>(inst.n_base, *inst.model);
      ++report.modulated;
    } else {
      rule = std::make_unique<FixedUnits>(inst.n_base);
    }
    report.gabriel += inst.gabriel ? 1 : 0;
    ++report.instances;

    const Multigraph& g = inst.graph;
    Rng fit = make_rng(config.seed, Stream::kRandomFit, static_cast<std::uint64_t>(i));
    FilteredStats fstats;
    const auto generic = generic_dijkstra(g, inst.source, inst.target, *rule);
    const auto filtered =
        filtered_search(g, inst.source, inst.target, *rule, AllocationPolicy::kFirstFit, nullptr,
                        nullptr, &fstats);
    const auto brute = brute_search(g, inst.source, inst.target, *rule);
    const auto best =
        generic_dijkstra(g, inst.source, inst.target, *rule, AllocationPolicy::kBestFit);
    const auto random =
        generic_dijkstra(g, inst.source, inst.target, *rule, AllocationPolicy::kRandomFit, &fit);

    std::ostringstream problem;
    auto same = [](const std::optional<Route>& a, const std::optional<Route>& b) {
      return a.has_value() == b.has_value() &&
             (!a || (a->cost == b->cost && a->cu.width() == b->cu.width()));
    };
    if (!same(generic, filtered)) problem << " generic/filtered differ;";
    if (!same(generic, brute)) problem << " generic/brute differ;";
    if (best.has_value() != generic.has_value() || (best && best->cost != generic->cost)) {
      problem << " best-fit cost differs;";
    }
    if (random.has_value() != generic.has_value() || (random && random->cost != generic->cost)) {
      problem << " random-fit cost differs;";
    }
    std::int64_t expected_slots = 0;
    for (Unit w = rule->min_units(); w <= std::min(rule->max_units(), g.omega()); ++w) {
      expected_slots += g.omega() - w + 1;
    }
    if (fstats.slots_examined != expected_slots) problem << " filtered slot count;";
    const std::pair<const char*, const std::optional<Route>*> all[] = {
        {"generic", &generic}, {"filtered", &filtered}, {"brute", &brute},
        {"best-fit", &best},   {"random-fit", &random}};
    for (const auto& [name, route] : all) {
      if (*route) {
        if (auto defect = route_defect(g, inst.source, inst.target, *rule, **route)) {
          problem << ' ' << name << ": " << *defect << ';';
        }
      }
    }

    if (problem.str().empty()) {
      ++report.agreed;
      report.feasible += generic ? 1 : 0;
    } else {
      report.mismatches.push_back("instance " + std::to_string(i) + ":" + problem.str());
    }
  }
  return report;
}

}  // namespace eon
