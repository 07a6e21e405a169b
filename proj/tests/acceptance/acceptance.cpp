// Acceptance suite: one PASS/FAIL line per criterion. Usage: acceptance <eonsim>
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "eon/baselines.hpp"
#include "eon/modulation.hpp"
#include "eon/netgraph.hpp"
#include "eon/routing.hpp"
#include "eon/simcore.hpp"
#include "fixtures.hpp"

namespace fs = std::filesystem;
using namespace eon;
using Clock = std::chrono::steady_clock;

namespace {

std::string eonsim_path;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string str(const Label& l) {
  std::ostringstream os;
  os << l;
  return os.str();
}

// Each check returns an empty string on success, otherwise what went wrong.
// `detail` collects measurements shown on the PASS/FAIL line.
using Check = std::function<std::string(std::string& detail)>;

std::string revisit_fixture(std::string& detail) {
  const Multigraph g = testing::revisit_graph();
  const auto two = generic_dijkstra(g, 0, 2, FixedUnits(2));
  if (!two || two->edges != std::vector<EdgeId>{1, 2} || two->cost != 12 || two->cu != CU{2, 3}) {
    return "2-unit demand: wrong route";
  }
  const auto one = generic_dijkstra(g, 0, 2, FixedUnits(1));
  if (!one || one->edges != std::vector<EdgeId>{0, 2} || one->cost != 11 || one->cu != CU{2, 2}) {
    return "1-unit demand: wrong route";
  }
  std::vector<double> us;
  for (int k = 0; k < 101; ++k) {
    const auto start = Clock::now();
    const auto r = generic_dijkstra(g, 0, 2, FixedUnits(2));
    us.push_back(seconds_since(start) * 1e6);
    if (!r) return "route vanished";
  }
  std::nth_element(us.begin(), us.begin() + 50, us.end());
  detail = "median " + std::to_string(us[50]) + " us";
  return us[50] < 1000 ? "" : "slower than 1 ms";
}

std::string discard_fixture(std::string& detail) {
  const Multigraph g = testing::discard_graph();
  const FixedUnits two(2);
  GenericDijkstra search(g, 0, 2, two);
  search.step();  // visits s
  const auto tentative = search.tentative(1);
  if (tentative.size() != 1 || str(tentative[0]) != "(1,[1,3],e2)") {
    return "tentative set at i is not {(1,[1,3],e2)}";
  }
  detail = "discarded " + std::to_string(search.discarded_count());
  const auto visit = search.step();
  if (!visit || search.vertex_of(visit->id) != 1) return "second pop is not at i";
  const auto permanent = search.permanent(1);
  if (permanent.size() != 1 || permanent[0].cost != 1 || permanent[0].cu != CU{1, 3}) {
    return "permanent label at i is not cost 1 with [1,3]";
  }
  return "";
}

std::string label_order(std::string& detail) {
  // Columns: CU(li) properly includes, equals, is properly included in, or
  // is incomparable with CU(lj). Rows: cost(li) <, =, > cost(lj).
  // 'b' li better, 'w' li worse, 'e' equal, 'i' incomparable.
  const char expected[3][4] = {{'b', 'b', 'i', 'i'}, {'b', 'e', 'w', 'i'}, {'i', 'w', 'w', 'i'}};
  const CU cus[4] = {{0, 5}, {1, 3}, {2, 2}, {3, 6}};  // against lj's [1,3]
  const Cost costs[3] = {4, 5, 6};
  int cells = 0;
  for (int row = 0; row < 3; ++row) {
    for (int col = 0; col < 4; ++col) {
      const Label li{costs[row], cus[col], 0, kNoLabel, kNoLabel};
      const Label lj{5, CU{1, 3}, 1, kNoLabel, kNoLabel};
      const bool ab = label_better(li, lj), ba = label_better(lj, li);
      const char got = ab ? 'b' : ba ? 'w' : label_equivalent(li, lj) ? 'e' : 'i';
      if (got != expected[row][col]) {
        return "cell (" + std::to_string(row) + "," + std::to_string(col) + ") is " + got;
      }
      if (label_incomparable(li, lj) != (got == 'i' || got == 'e')) return "incomparability mismatch";
      ++cells;
    }
  }
  const auto lbl = [](Cost c, Unit lo, Unit hi) { return Label{c, CU{lo, hi}, 0, kNoLabel, kNoLabel}; };
  if (!label_better(lbl(1, 1, 2), lbl(2, 1, 2))) return "(1,[1,2]) should beat (2,[1,2])";
  if (!label_better(lbl(1, 1, 3), lbl(1, 1, 2))) return "(1,[1,3]) should beat (1,[1,2])";
  if (!label_incomparable(lbl(1, 1, 2), lbl(2, 1, 3))) return "(1,[1,2]) and (2,[1,3]) should be incomparable";
  detail = std::to_string(cells) + " cells + 3 literal examples";
  return "";
}

std::string oracle_equivalence(std::string& detail) {
  const auto start = Clock::now();
  const VerifyReport r = verify_random_instances(VerifyConfig{1000, 10, 16, 2024});
  const double secs = seconds_since(start);
  detail = std::to_string(r.agreed) + "/" + std::to_string(r.instances) + " agreed, " +
           std::to_string(r.feasible) + " feasible, " + std::to_string(r.modulated) + " modulated, " +
           std::to_string(r.gabriel) + " gabriel, " + std::to_string(secs) + " s";
  if (!r.mismatches.empty()) return r.mismatches.front();
  if (r.agreed != 1000) return "not all instances agreed";
  if (r.modulated == 0 || r.modulated == 1000 || r.gabriel == 0 || r.gabriel == 1000) {
    return "instance mix lacks a variant";
  }
  return secs < 60 ? "" : "slower than 60 s";
}

std::string gabriel_statistics(std::string& detail) {
  std::vector<Multigraph> graphs;
  std::int64_t lo = 1 << 30, hi = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    graphs.push_back(gabriel_generate(75, kDefaultDensity, seed).graph);
    lo = std::min<std::int64_t>(lo, graphs.back().edge_count());
    hi = std::max<std::int64_t>(hi, graphs.back().edge_count());
  }
  const GraphStats stats = compute_stats(graphs);
  detail = "mean degree " + std::to_string(stats.vertex_degree.mean) + ", edges " +
           std::to_string(lo) + ".." + std::to_string(hi);
  if (stats.vertex_degree.mean < 3.0 || stats.vertex_degree.mean > 4.0) return "mean degree out of range";
  if (lo < 110 || hi > 155) return "edge count out of range";
  return "";
}

std::string modulation_identities(std::string& detail) {
  std::mt19937_64 rng(6);
  int checked = 0;
  for (int levels = 1; levels <= 6; ++levels) {
    const ModulationModel model(levels, std::uniform_real_distribution<double>(10, 500)(rng));
    for (Unit n_base = 1; n_base <= 10; ++n_base) {
      if (required_units(n_base, model.reach(levels), model) != n_base) return "r_M does not need n_base";
      if (required_units(n_base, model.reach(1), model) != levels * n_base) return "r_1 does not need M n_base";
      if (required_units(n_base, model.reach(1) * 1.0001, model)) return "beyond r_1 is feasible";
      std::vector<double> ds(10000);
      std::uniform_real_distribution<double> dist(0, model.reach(1) * 1.2);
      for (double& d : ds) d = dist(rng);
      std::sort(ds.begin(), ds.end());
      Unit prev = 0;
      for (const double d : ds) {
        const auto need = required_units(n_base, d, model);
        if (!need) {
          if (d <= model.reach(1)) return "infeasible within r_1";
          prev = levels * n_base + 1;
          continue;
        }
        if (*need < prev) return "not monotone at " + std::to_string(d);
        prev = *need;
        ++checked;
      }
    }
  }
  detail = std::to_string(checked) + " feasible distances";
  return "";
}

struct PerformanceRuns {
  double secs = 0;
  double generic_us = 0, filtered_us = 0;
  double max_words[3] = {0, 0, 0};
  std::string error;
};

const PerformanceRuns& performance_runs() {
  static const PerformanceRuns runs = [] {
    PerformanceRuns p;
    const auto start = Clock::now();
    double time_sum[3] = {0, 0, 0};
    std::int64_t searches[3] = {0, 0, 0};
    try {
      for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Multigraph g = gabriel_generate(75, kDefaultDensity, seed, 160).graph;
        SimulationOptions options;
        options.seed = seed;
        options.algorithms = {Algorithm::kGeneric, Algorithm::kFiltered, Algorithm::kBruteForce};
        options.keep_records = false;
        const RunReport r =
            run_simulation(g, TrafficConfig{0.3, 10, 10, 20}, calibrate_reach(g, 1.5, 4), options);
        for (const Algorithm a : kAllAlgorithms) {
          const auto i = static_cast<std::size_t>(a);
          time_sum[i] += r.of(a).mean_time_us * static_cast<double>(r.of(a).searches);
          searches[i] += r.of(a).searches;
          p.max_words[i] = std::max(p.max_words[i], r.of(a).max_words);
        }
      }
    } catch (const std::exception& e) {
      p.error = e.what();
    }
    p.secs = seconds_since(start);
    p.generic_us = time_sum[0] / std::max<std::int64_t>(searches[0], 1);
    p.filtered_us = time_sum[1] / std::max<std::int64_t>(searches[1], 1);
    return p;
  }();
  return runs;
}

std::string performance_direction(std::string& detail) {
  const PerformanceRuns& p = performance_runs();
  if (!p.error.empty()) return p.error;
  detail = "generic " + std::to_string(p.generic_us) + " us, filtered " + std::to_string(p.filtered_us) +
           " us (" + std::to_string(p.filtered_us / p.generic_us) + "x), total " + std::to_string(p.secs) + " s";
  if (p.generic_us > p.filtered_us / 5) return "generic search is not 5x faster";
  return p.secs <= 600 ? "" : "runs took longer than 10 minutes";
}

std::string memory_ordering(std::string& detail) {
  const PerformanceRuns& p = performance_runs();
  if (!p.error.empty()) return p.error;
  const double filtered = p.max_words[1], generic = p.max_words[0], brute = p.max_words[2];
  detail = "max words filtered " + std::to_string(static_cast<long long>(filtered)) + ", generic " +
           std::to_string(static_cast<long long>(generic)) + ", brute " +
           std::to_string(static_cast<long long>(brute));
  if (!(filtered < generic && generic < brute)) return "order is not filtered < generic < brute";
  return brute >= 10 * generic ? "" : "brute uses less than 10x generic";
}

std::string conservation(std::string& detail) {
  const Multigraph g = gabriel_generate(40, kDefaultDensity, 77, 64).graph;
  SimulationOptions options;
  options.seed = 77;
  options.check_invariants = true;
  options.policy = AllocationPolicy::kRandomFit;
  options.algorithms = {Algorithm::kGeneric, Algorithm::kFiltered};
  try {
    const RunReport r = run_simulation(g, TrafficConfig{0.8, 4, 5, 120}, calibrate_reach(g, 1.5, 4), options);
    detail = std::to_string(r.events) + " events, " + std::to_string(r.invariant_checks) + " checks, " +
             std::to_string(r.blocked) + " blocked";
    if (r.events < 1000) return "fewer than 1000 events";
    if (r.invariant_checks != r.events) return "not every event was checked";
  } catch (const ValidationError& e) {
    return std::string("violation: ") + e.what();
  }
  return "";
}

std::string strip_time(const fs::path& csv) {
  std::ifstream in(csv);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    if (fields.size() > 9) fields.erase(fields.begin() + 9);  // time_us
    for (const auto& x : fields) out << x << ',';
    out << '\n';
  }
  return out.str();
}

std::string determinism(std::string& detail) {
  const fs::path dir = fs::temp_directory_path() / "eonsim_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto sh = [&](const std::string& args) {
    return std::system((eonsim_path + " " + args + " 2>/dev/null").c_str());
  };
  if (sh("generate --vertices 30 --count 1 --seed 3 --out-dir " + dir.string()) != 0) return "generate failed";
  const std::string run = "run --graph " + (dir / "graph_000.txt").string() +
                          " --omega 64 --gamma 4 --mu 0.5 --days 15 --algos generic,filtered --seed 11 --out ";
  if (sh(run + (dir / "a.csv").string()) != 0 || sh(run + (dir / "b.csv").string()) != 0) return "run failed";
  const std::string a = strip_time(dir / "a.csv"), b = strip_time(dir / "b.csv");
  const auto rows = std::count(a.begin(), a.end(), '\n');
  detail = std::to_string(rows) + " lines";
  fs::remove_all(dir);
  if (rows < 10) return "too few rows to be meaningful";
  return a == b ? "" : "CSVs differ";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path-to-eonsim>\n";
    return 2;
  }
  eonsim_path = argv[1];
  const std::vector<std::pair<const char*, Check>> criteria{
      {"revisit fixture", revisit_fixture},
      {"discard fixture", discard_fixture},
      {"label order table", label_order},
      {"oracle equivalence", oracle_equivalence},
      {"gabriel statistics", gabriel_statistics},
      {"modulation identities", modulation_identities},
      {"performance direction", performance_direction},
      {"memory word ordering", memory_ordering},
      {"spectrum conservation", conservation},
      {"run determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string detail, error;
    try {
      error = criteria[i].second(detail);
    } catch (const std::exception& e) {
      error = std::string("exception: ") + e.what();
    }
    std::cout << (error.empty() ? "PASS" : "FAIL") << ' ' << (i + 1) << ' ' << criteria[i].first;
    if (!detail.empty()) std::cout << " [" << detail << ']';
    if (!error.empty()) std::cout << ": " << error;
    std::cout << std::endl;
    failed += !error.empty();
  }
  return failed == 0 ? 0 : 1;
}
