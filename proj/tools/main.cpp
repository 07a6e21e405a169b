// eonsim: generate Gabriel networks, simulate dynamic RMSA traffic and
// cross-check the search algorithms.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "eon/modulation.hpp"
#include "eon/netgraph.hpp"
#include "eon/simcore.hpp"

namespace fs = std::filesystem;

namespace {

struct ModelFlags {
  int levels = 4;
  double reach_factor = 1.5;
};

struct GenerateFlags {
  eon::VertexId vertices = 75;
  double density = eon::kDefaultDensity;
  int count = 1;
  std::uint64_t seed = 1;
  eon::Unit omega = 160;
  std::string out_dir = ".";
};

struct RunFlags {
  std::string graph;
  eon::Unit omega = 0;  // 0 keeps the graph file's value
  double gamma = 10;
  double mu = 0.3;
  double delta = 10;
  double days = 100;
  std::string policy = "first-fit";
  std::string algos = "generic";
  std::uint64_t seed = 1;
  std::string out = "-";
  bool check = false;
  bool no_words = false;
  bool count_archive = false;
};

struct SweepFlags {
  std::string omega = "160,320,640";
  std::string mu = "0.1,0.2,0.3,0.4,0.5";
  std::string gamma = "1,10";
  int samples = 10;
  eon::VertexId vertices = 75;
  double density = eon::kDefaultDensity;
  double delta = 10;
  double days = 100;
  std::string policy = "first-fit";
  std::string algos = "generic,filtered";
  std::uint64_t seed = 1;
  std::string out = "-";
  std::string run_dir;
};

struct StatsFlags {
  std::vector<std::string> inputs;
  std::string out = "-";
};

// Writes to a file, or to stdout for "-".
class Output {
public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      if (const auto parent = fs::path(path).parent_path(); !parent.empty()) {
        fs::create_directories(parent);
      }
      file_.open(path);
      if (!file_) {
        throw std::runtime_error("cannot write " + path);
      }
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
  std::ofstream file_;
};

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) {
      continue;
    }
    std::istringstream is(item);
    T value{};
    if (!(is >> value) || !is.eof()) {
      throw eon::ConfigError(std::string("bad value in --") + what + ": '" + item + "'");
    }
    out.push_back(value);
  }
  if (out.empty()) {
    throw eon::ConfigError(std::string("--") + what + " needs at least one value");
  }
  return out;
}

void print_report(std::ostream& os, const eon::RunReport& r) {
  os << "offered " << r.offered << ", established " << r.established << ", blocked "
     << r.blocked << '\n';
  if (r.mean_utilization) {
    os << "utilization mean " << std::setprecision(4) << *r.mean_utilization << ", max "
       << r.max_utilization.value_or(0) << '\n';
  }
  for (const eon::Algorithm a : r.algorithms) {
    const eon::AlgorithmSummary& s = r.of(a);
    os << std::left << std::setw(9) << eon::to_string(a) << std::right << " time_us mean "
       << std::setprecision(5) << s.mean_time_us << " max " << s.max_time_us << ", words mean "
       << s.mean_words << " max " << s.max_words << '\n';
  }
}

int cmd_generate(const GenerateFlags& f) {
  fs::create_directories(f.out_dir);
  std::vector<eon::Multigraph> graphs;
  for (int i = 0; i < f.count; ++i) {
    const std::uint64_t seed = f.seed + static_cast<std::uint64_t>(i);
    eon::GabrielGraph gg = eon::gabriel_generate(f.vertices, f.density, seed, f.omega);
    if (gg.redraws > 0) {
      std::cerr << "seed " << seed << ": redrew " << gg.redraws << " disconnected graph(s)\n";
    }
    std::ostringstream name;
    name << "graph_" << std::setw(3) << std::setfill('0') << i << ".txt";
    eon::save_graph(fs::path(f.out_dir) / name.str(), gg.graph);
    graphs.push_back(std::move(gg.graph));
  }
  std::ofstream stats(fs::path(f.out_dir) / "stats.csv");
  eon::write_stats_csv(stats, eon::compute_stats(graphs));
  std::cerr << "wrote " << f.count << " graph(s) and stats.csv to " << f.out_dir << '\n';
  return 0;
}

int cmd_run(const RunFlags& f, const ModelFlags& m) {
  eon::Multigraph g = eon::load_graph(f.graph);
  if (f.omega > 0) {
    g = g.with_omega(f.omega);
  }
  const eon::ModulationModel model = eon::calibrate_reach(g, m.reach_factor, m.levels);
  eon::TrafficConfig traffic{f.mu, f.gamma, f.delta, f.days};
  eon::SimulationOptions options;
  options.policy = eon::parse_policy(f.policy);
  options.algorithms = eon::parse_algorithms(f.algos);
  options.seed = f.seed;
  options.measure_memory = !f.no_words;
  options.count_archive = f.count_archive;
  options.check_invariants = f.check;
  const eon::RunReport report = eon::run_simulation(g, traffic, model, options);
  Output out(f.out);
  eon::write_run_csv(out.stream(), report);
  print_report(std::cerr, report);
  return 0;
}

int cmd_sweep(const SweepFlags& f, const ModelFlags& m) {
  const auto omegas = parse_list<eon::Unit>(f.omega, "omega");
  const auto mus = parse_list<double>(f.mu, "mu");
  const auto gammas = parse_list<double>(f.gamma, "gamma");
  if (f.samples < 2) {
    throw eon::ConfigError("--samples must be at least 2");
  }

  // One graph per sample index, shared by every grid point.
  std::vector<eon::Multigraph> graphs;
  std::vector<eon::ModulationModel> models;
  for (int s = 0; s < f.samples; ++s) {
    auto gg = eon::gabriel_generate(f.vertices, f.density, f.seed + static_cast<std::uint64_t>(s));
    models.push_back(eon::calibrate_reach(gg.graph, m.reach_factor, m.levels));
    graphs.push_back(std::move(gg.graph));
  }

  Output out(f.out);
  bool first = true;
  for (const eon::Unit omega : omegas) {
    for (const double gamma : gammas) {
      for (const double mu : mus) {
        std::vector<eon::RunReport> reports;
        for (int s = 0; s < f.samples; ++s) {
          eon::SimulationOptions options;
          options.policy = eon::parse_policy(f.policy);
          options.algorithms = eon::parse_algorithms(f.algos);
          options.seed = f.seed + static_cast<std::uint64_t>(s);
          options.keep_records = !f.run_dir.empty();
          const eon::TrafficConfig traffic{mu, gamma, f.delta, f.days};
          const auto g = graphs[static_cast<std::size_t>(s)].with_omega(omega);
          reports.push_back(eon::run_simulation(g, traffic, models[static_cast<std::size_t>(s)],
                                                options));
          if (!f.run_dir.empty()) {
            std::ostringstream name;
            name << "run_o" << omega << "_g" << gamma << "_m" << mu << "_s" << s << ".csv";
            Output run_out((fs::path(f.run_dir) / name.str()).string());
            eon::write_run_csv(run_out.stream(), reports.back());
          }
        }
        std::ostringstream prefix;
        prefix << omega << ',' << mu << ',' << gamma;
        const auto population = eon::aggregate(reports);
        if (first) {
          eon::write_population_csv(out.stream(), population, "omega,mu,gamma", prefix.str());
          first = false;
        } else {
          std::ostringstream tmp;
          eon::write_population_csv(tmp, population, "omega,mu,gamma", prefix.str());
          const std::string text = tmp.str();
          out.stream() << text.substr(text.find('\n') + 1);
        }
        std::cerr << "omega " << omega << " gamma " << gamma << " mu " << mu << ": "
                  << reports.size() << " runs\n";
      }
    }
  }
  return 0;
}

int cmd_verify(const eon::VerifyConfig& c) {
  const eon::VerifyReport r = eon::verify_random_instances(c);
  std::cout << "instances " << r.instances << ", agreed " << r.agreed << ", feasible "
            << r.feasible << ", modulated " << r.modulated << ", gabriel " << r.gabriel << '\n';
  for (const auto& m : r.mismatches) {
    std::cout << m << '\n';
  }
  return r.mismatches.empty() ? 0 : 2;
}

int cmd_stats(const StatsFlags& f) {
  std::vector<eon::RunReport> reports;
  for (const auto& path : f.inputs) {
    std::ifstream in(path);
    if (!in) {
      throw std::runtime_error("cannot read " + path);
    }
    try {
      reports.push_back(eon::report_from_records(eon::read_run_csv(in)));
    } catch (const eon::ParseError& e) {
      throw std::runtime_error(path + ": " + e.what());
    }
  }
  Output out(f.out);
  eon::write_population_csv(out.stream(), eon::aggregate(reports));
  return 0;
}

// Splices the key = value lines of --config FILE in front of the
// subcommand's own arguments so that explicit flags win.
std::vector<std::string> expand_config(std::vector<std::string> args, const CLI::App& app) {
  std::string config;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                 args.begin() + static_cast<std::ptrdiff_t>(i + 2));
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      config = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (config.empty()) {
    return args;
  }
  std::ifstream in(config);
  if (!in) {
    throw std::runtime_error("cannot read config file " + config);
  }
  const auto items = CLI::ConfigINI().from_config(in);

  auto sub_pos = std::find_if(args.begin(), args.end(), [&](const std::string& a) {
    return app.get_subcommand_no_throw(a) != nullptr;
  });
  if (sub_pos == args.end()) {
    return args;
  }
  const CLI::App* sub = app.get_subcommand_no_throw(*sub_pos);
  std::vector<std::string> injected;
  for (const CLI::ConfigItem& item : items) {
    if (!item.parents.empty() && item.parents.front() != sub->get_name()) {
      continue;
    }
    const std::string flag = "--" + item.name;
    const CLI::Option* opt = sub->get_option_no_throw(flag);
    if (opt == nullptr) {
      std::cerr << "config: ignoring '" << item.name << "' (not an option of "
                << sub->get_name() << ")\n";
      continue;
    }
    if (opt->get_type_size() == 0) {
      if (item.inputs.empty() || item.inputs.front() == "true" || item.inputs.front() == "1") {
        injected.push_back(flag);
      }
      continue;
    }
    std::string value;
    for (const auto& v : item.inputs) {
      value += (value.empty() ? "" : ",") + v;
    }
    injected.push_back(flag + "=" + value);
  }
  args.insert(sub_pos + 1, injected.begin(), injected.end());
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elastic optical network RMSA simulator"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  // --config is consumed by expand_config; registered here for --help.
  std::string config_path;
  const std::string config_help = "Read 'key = value' defaults from FILE";

  ModelFlags model;
  auto add_model = [&](CLI::App* sub) {
    sub->add_option("--levels", model.levels, "Modulation levels M")->check(CLI::Range(1, 30));
    sub->add_option("--reach-factor", model.reach_factor,
                    "r_1 as a multiple of the longest shortest path")
        ->check(CLI::PositiveNumber);
  };

  GenerateFlags gen;
  auto* generate = app.add_subcommand("generate", "Generate Gabriel graphs");
  generate->add_option("--vertices", gen.vertices)->check(CLI::Range(2, 1000000));
  generate->add_option("--density", gen.density, "Vertices per km^2")->check(CLI::PositiveNumber);
  generate->add_option("--count", gen.count)->check(CLI::Range(1, 1000000));
  generate->add_option("--seed", gen.seed);
  generate->add_option("--omega", gen.omega, "Units per edge")->check(CLI::Range(1, 1 << 20));
  generate->add_option("--out-dir", gen.out_dir);
  generate->add_option("--config", config_path, config_help);

  RunFlags run;
  auto* run_cmd = app.add_subcommand("run", "Simulate one run and write per-search CSV");
  run_cmd->add_option("--graph", run.graph)->required();
  run_cmd->add_option("--omega", run.omega, "Units per edge (default: from graph file)")
      ->check(CLI::Range(0, 1 << 20));
  run_cmd->add_option("--gamma", run.gamma, "Mean demanded units");
  run_cmd->add_option("--mu", run.mu, "Offered load");
  run_cmd->add_option("--delta", run.delta, "Mean holding time, days");
  run_cmd->add_option("--days", run.days, "Simulated days");
  run_cmd->add_option("--policy", run.policy, "first-fit, best-fit or random-fit");
  run_cmd->add_option("--algos", run.algos, "Comma list of generic, filtered, brute");
  run_cmd->add_option("--seed", run.seed);
  run_cmd->add_option("--out", run.out, "Run CSV path, - for stdout");
  run_cmd->add_flag("--check", run.check, "Check spectrum invariants after every event");
  run_cmd->add_flag("--no-words", run.no_words, "Skip memory-word instrumentation");
  run_cmd->add_flag("--count-archive", run.count_archive,
                    "Include discarded generic labels in word counts");
  run_cmd->add_option("--config", config_path, config_help);
  add_model(run_cmd);

  SweepFlags sw;
  auto* sweep = app.add_subcommand("sweep", "Population runs over a parameter grid");
  sweep->add_option("--omega", sw.omega, "Comma list of units per edge");
  sweep->add_option("--mu", sw.mu, "Comma list of offered loads");
  sweep->add_option("--gamma", sw.gamma, "Comma list of mean demanded units");
  sweep->add_option("--samples", sw.samples, "Runs (graphs) per grid point");
  sweep->add_option("--vertices", sw.vertices)->check(CLI::Range(2, 1000000));
  sweep->add_option("--density", sw.density)->check(CLI::PositiveNumber);
  sweep->add_option("--delta", sw.delta);
  sweep->add_option("--days", sw.days);
  sweep->add_option("--policy", sw.policy);
  sweep->add_option("--algos", sw.algos);
  sweep->add_option("--seed", sw.seed);
  sweep->add_option("--out", sw.out, "Population CSV path, - for stdout");
  sweep->add_option("--run-dir", sw.run_dir, "Also write every run's CSV here");
  sweep->add_option("--config", config_path, config_help);
  add_model(sweep);

  eon::VerifyConfig ver;
  auto* verify = app.add_subcommand("verify", "Cross-check the algorithms on random instances");
  verify->add_option("--instances", ver.instances)->check(CLI::Range(1, 100000000));
  verify->add_option("--max-vertices", ver.max_vertices)->check(CLI::Range(2, 64));
  verify->add_option("--max-omega", ver.max_omega)->check(CLI::Range(1, 256));
  verify->add_option("--seed", ver.seed);
  verify->add_option("--config", config_path, config_help);

  StatsFlags st;
  auto* stats = app.add_subcommand("stats", "Aggregate run CSVs into a population CSV");
  stats->add_option("inputs", st.inputs, "Run CSV files")->required()->expected(2, -1);
  stats->add_option("--out", st.out, "Population CSV path, - for stdout");
  stats->add_option("--config", config_path, config_help);

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = expand_config(std::move(args), app);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (generate->parsed()) return cmd_generate(gen);
    if (run_cmd->parsed()) return cmd_run(run, model);
    if (sweep->parsed()) return cmd_sweep(sw, model);
    if (verify->parsed()) return cmd_verify(ver);
    if (stats->parsed()) return cmd_stats(st);
  } catch (const eon::ValidationError& e) {
    std::cerr << "validation failed: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
