#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "eon/modulation.hpp"
#include "eon/netgraph.hpp"
#include "eon/random.hpp"
#include "eon/routing.hpp"
#include "eon/words.hpp"

namespace eon {

class ValidationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

enum class Algorithm : int { kGeneric = 0, kFiltered = 1, kBruteForce = 2 };
inline constexpr std::array<Algorithm, 3> kAllAlgorithms{
    Algorithm::kGeneric, Algorithm::kFiltered, Algorithm::kBruteForce};

std::string_view to_string(Algorithm a) noexcept;
/// "generic", "filtered" or "brute".
Algorithm parse_algorithm(std::string_view name);
/// Comma separated list, e.g. "generic,filtered".
std::vector<Algorithm> parse_algorithms(std::string_view list);

/// Describes what is wrong with a route for this demand, or nullopt if it
/// is a loop-free source-to-target path whose CU is available on every edge,
/// whose cost is the sum of edge lengths and whose width the rule requires.
std::optional<std::string> route_defect(const Multigraph& g, VertexId source, VertexId target,
                                        const DemandRule& rule, const Route& route);

/// Runs one search with the given algorithm.
std::optional<Route> run_search(Algorithm algo, const Multigraph& g, VertexId source,
                                VertexId target, const DemandRule& rule, AllocationPolicy policy,
                                Rng* rng, WordMeter* meter, bool count_archive = false);

// ---------------------------------------------------------------------------
// Traffic

struct TrafficConfig {
  double mu = 0.3;      // offered load
  double gamma = 10;    // mean demanded units
  double delta = 10;    // mean holding time, days
  double horizon = 100; // simulated days

  void validate() const;
};

/// Mean arrival rate in demands per day for offered load mu.
double arrival_rate(double mu, std::int64_t edges, Unit omega, double delta, double alpha,
                    double gamma);

/// Mean hop count of the length-shortest paths over all ordered pairs.
/// Throws GraphError on a disconnected graph.
double mean_shortest_hops(const Multigraph& g);

struct DemandSpec {
  VertexId source = 0;
  VertexId target = 0;
  Unit n_base = 1;
};

struct DrawnDemand {
  DemandSpec demand;
  double holding = 0;  // days
};

/// The random inputs of a run, each drawn from its own substream.
class TrafficSource {
public:
  TrafficSource(std::uint64_t seed, const TrafficConfig& config, VertexId vertices,
                double lambda);

  /// Days until the next arrival; infinity when lambda is 0.
  double next_interarrival();
  DrawnDemand next_demand();

private:
  TrafficConfig config_;
  VertexId vertices_;
  double lambda_;
  Rng arrivals_;
  Rng sizes_;
  Rng endpoints_;
  Rng holding_;
};

/// n_base ~ 1 + Poisson(gamma - 1), distinct uniform endpoints, holding
/// time ~ Exponential(mean delta).
DrawnDemand draw_demand(Rng& sizes, Rng& endpoints, Rng& holding, double gamma, double delta,
                        VertexId vertices);

// ---------------------------------------------------------------------------
// Runs

struct Connection {
  DemandSpec demand;
  std::vector<EdgeId> path;
  CU cu;
  double departure = 0;
};

struct SearchMetrics {
  Algorithm algo = Algorithm::kGeneric;
  bool success = false;
  Cost cost = -1;
  CU cu{-1, -2};  // width 0 when unsuccessful
  double time_us = 0;
  WordCount words;
};

struct SearchRecord {
  double day = 0;
  DemandSpec demand;
  SearchMetrics metrics;
};

struct AlgorithmSummary {
  std::int64_t searches = 0;
  double mean_time_us = 0;
  double max_time_us = 0;
  double mean_words = 0;
  double max_words = 0;
  /// Category split of the largest footprint seen.
  WordCount peak_words;
};

struct RunReport {
  std::int64_t offered = 0;
  std::int64_t established = 0;
  std::int64_t blocked = 0;
  std::int64_t events = 0;
  std::int64_t invariant_checks = 0;
  /// Absent for reports rebuilt from per-search CSVs.
  std::optional<double> mean_utilization;
  std::optional<double> max_utilization;
  std::vector<Algorithm> algorithms;
  std::array<AlgorithmSummary, kAllAlgorithms.size()> summary{};
  std::vector<SearchRecord> records;

  const AlgorithmSummary& of(Algorithm a) const { return summary[static_cast<std::size_t>(a)]; }
};

struct SimulationOptions {
  AllocationPolicy policy = AllocationPolicy::kFirstFit;
  /// Searched on every arrival, all on the same network state. The first
  /// of generic, filtered, brute that is enabled establishes connections.
  std::vector<Algorithm> algorithms{Algorithm::kGeneric};
  std::uint64_t seed = 1;
  bool measure_memory = true;
  bool count_archive = false;
  bool keep_records = true;
  /// Check spectrum conservation and allocation disjointness after every
  /// event; throws ValidationError on the first violation.
  bool check_invariants = false;
  /// Days between arrivals follow Exp(lambda); when absent lambda comes
  /// from the offered load and mean_shortest_hops.
  std::optional<double> lambda;
};

/// Simulates the horizon of dynamic traffic on a copy of g (its spectrum is
/// reset first). Throws ValidationError when algorithms disagree on
/// feasibility, cost or CU width.
RunReport run_simulation(const Multigraph& g, const TrafficConfig& traffic,
                         const ModulationModel& model, const SimulationOptions& options);

/// Throws ValidationError unless, on every edge, the units of active
/// connections and the available units are disjoint and cover omega.
void check_spectrum_conservation(const Multigraph& g, std::span<const Connection> active);

/// Rebuilds the per-algorithm summaries from per-search records.
RunReport report_from_records(std::vector<SearchRecord> records);

void write_run_csv(std::ostream& os, const RunReport& report);
std::vector<SearchRecord> read_run_csv(std::istream& is);

// ---------------------------------------------------------------------------
// Populations

struct PopulationRow {
  std::string metric;
  std::string algo;
  std::size_t samples = 0;
  double sample_mean = 0;
  double sample_max = 0;
  double rse = 0;   // relative standard error of the sample mean
  double ci95 = 0;  // half-width, normal approximation
  bool low_sample = false;
};

struct PopulationReport {
  std::vector<PopulationRow> rows;

  const PopulationRow* find(std::string_view metric, std::string_view algo) const;
};

/// Normal-approximation intervals are flagged below this many samples.
inline constexpr std::size_t kMinSamplesForCi = 30;

/// Sample mean of the run means and sample maximum of the run maxima per
/// metric; needs at least two reports.
PopulationReport aggregate(std::span<const RunReport> reports);

void write_population_csv(std::ostream& os, const PopulationReport& report,
                          std::string_view prefix_header = {},
                          std::string_view prefix_values = {});

// ---------------------------------------------------------------------------
// Randomized cross-check of the three algorithms

struct VerifyConfig {
  int instances = 1000;
  VertexId max_vertices = 10;
  Unit max_omega = 16;
  std::uint64_t seed = 1;
};

struct RandomInstance {
  Multigraph graph;
  VertexId source = 0;
  VertexId target = 0;
  Unit n_base = 1;
  std::optional<ModulationModel> model;
  bool gabriel = false;
};

RandomInstance random_instance(Rng& rng, const VerifyConfig& config);

struct VerifyReport {
  int instances = 0;
  int agreed = 0;
  int feasible = 0;
  int modulated = 0;
  int gabriel = 0;
  std::vector<std::string> mismatches;
};

/// Runs generic, filtered and brute-force searches on random instances and
/// counts those where all agree on feasibility, cost and CU width. Generic
/// search under best-fit and random-fit must also match the cost.
VerifyReport verify_random_instances(const VerifyConfig& config);

}  // namespace eon
