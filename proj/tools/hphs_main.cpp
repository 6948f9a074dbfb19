// Command line front end: explore, bench, render, defaults.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hphs/bench.hpp"
#include "hphs/config.hpp"
#include "hphs/explorer.hpp"
#include "hphs/map_io.hpp"
#include "hphs/report.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitComplete = 0;
constexpr int kExitError = 1;
constexpr int kExitBudget = 2;

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

hphs::RunConfig load_config(const std::string& config_path) {
  hphs::RunConfig cfg;
  std::string path = config_path;
  if (path.empty()) {
    if (const char* env = std::getenv(hphs::kConfigEnvVar)) path = env;
  }
  if (!path.empty()) hphs::apply_config_file(cfg, path);
  return cfg;
}

// "0-9", "1,4,7" or a mix such as "0-2,5".
std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty()) continue;
    const auto dash = part.find('-');
    try {
      if (dash == std::string::npos) {
        seeds.push_back(std::stoull(part));
      } else {
        const auto lo = std::stoull(part.substr(0, dash));
        const auto hi = std::stoull(part.substr(dash + 1));
        if (hi < lo) throw std::invalid_argument("descending range");
        for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
      }
    } catch (const std::logic_error&) {
      throw std::invalid_argument("bad seed list element '" + part + "'");
    }
  }
  if (seeds.empty()) throw std::invalid_argument("empty seed list");
  return seeds;
}

struct ExploreArgs {
  std::string map;
  std::string config;
  std::uint64_t seed = 0;
  std::string planner = "hphs";
  std::string out_dir = "out";
  std::optional<int> max_steps;
  bool record = false;
  bool verbose = false;
};

int cmd_explore(const ExploreArgs& a) {
  hphs::RunConfig cfg = load_config(a.config);
  if (a.max_steps) cfg.max_steps = *a.max_steps;
  if (a.verbose) cfg.log_gains = true;
  cfg.rng_seed = a.seed;
  const hphs::Planner planner = hphs::parse_planner(a.planner);
  if (!fs::exists(a.map)) throw std::runtime_error("map file not found: " + a.map);
  const hphs::LoadedMap map = hphs::load_map_file(a.map, cfg.resolution);
  const hphs::Pose start = hphs::jittered_start(map.truth, map.start, a.seed, cfg.start_jitter, cfg.clearance);
  const hphs::RunResult result = hphs::run(map.truth, start, cfg, planner);

  fs::create_directories(a.out_dir);
  const fs::path out(a.out_dir);
  const std::string name = hphs::map_name(a.map);
  write_file(out / "steps.csv", hphs::steps_csv(result));
  write_file(out / "summary.csv", hphs::summary_csv(name, result, a.seed));
  write_file(out / "trajectory.svg", hphs::render_svg(result));
  if (a.record) write_file(out / "run.jsonl", hphs::write_run_records(result));
  if (a.verbose) write_file(out / "gains.csv", hphs::gains_csv(result));

  const hphs::MetricsRow m = hphs::metrics(result);
  std::cout << name << " " << hphs::to_string(planner) << " seed " << a.seed << ": " << hphs::to_string(result.status)
            << " after " << result.steps << " steps, distance " << hphs::format_fixed(m.distance_m, 2) << " m, time "
            << hphs::format_fixed(m.time_s, 1) << " s, rate " << hphs::format_fixed(m.rate_m2_per_m, 3)
            << " m2/m, completion " << hphs::format_fixed(100.0 * m.completion, 2) << "%\n";
  return result.status == hphs::RunStatus::Complete ? kExitComplete : kExitBudget;
}

struct BenchArgs {
  std::vector<std::string> maps;
  std::string planners = "hphs,nearest";
  std::string seeds = "0-9";
  std::string config;
  unsigned jobs = 1;
  std::string out = "bench.csv";
  std::optional<int> max_steps;
};

int cmd_bench(const BenchArgs& a) {
  hphs::BenchmarkSpec spec;
  spec.config = load_config(a.config);
  if (a.max_steps) spec.config.max_steps = *a.max_steps;
  for (const auto& m : a.maps) spec.maps.emplace_back(m);
  std::stringstream ss(a.planners);
  std::string p;
  while (std::getline(ss, p, ',')) {
    if (!p.empty()) spec.planners.push_back(hphs::parse_planner(p));
  }
  spec.seeds = parse_seeds(a.seeds);
  spec.jobs = a.jobs;

  const hphs::BenchReport report = hphs::run_bench(spec);
  write_file(a.out, hphs::bench_csv(report));

  bool any_error = false;
  for (const auto& row : report.rows) {
    if (!row.status) {
      any_error = true;
      std::cerr << "run failed: " << row.map << " " << hphs::to_string(row.planner) << " seed " << row.seed << ": "
                << row.error << "\n";
    }
  }
  std::cout << "map        planner  done   dist(m) avg/std     time(s) avg/std     rate   completion\n";
  for (const auto& g : report.aggregates) {
    char line[256];
    std::snprintf(line, sizeof line, "%-10s %-8s %2zu/%-2zu %8.1f %6.1f   %8.1f %6.1f   %6.3f   %7.2f%%\n",
                  g.map.c_str(), std::string(hphs::to_string(g.planner)).c_str(), g.complete, g.runs,
                  g.mean_distance, g.std_distance, g.mean_time, g.std_time, g.mean_rate, 100.0 * g.mean_completion);
    std::cout << line;
  }
  return any_error ? kExitError : kExitComplete;
}

int cmd_render(const std::string& run_path, const std::string& out) {
  const hphs::RunResult result = hphs::read_run_records(read_file(run_path));
  write_file(out, hphs::render_svg(result));
  return kExitComplete;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grid-world frontier exploration with hierarchical subregion planning"};
  app.require_subcommand(1);

  ExploreArgs ex;
  auto* explore = app.add_subcommand("explore", "Run one exploration scenario");
  explore->add_option("--map", ex.map, "Map file")->required();
  explore->add_option("--config", ex.config, "Config file (falls back to $HPHS_CONFIG)");
  explore->add_option("--seed", ex.seed, "Start-pose jitter seed");
  explore->add_option("--planner", ex.planner, "hphs or nearest");
  explore->add_option("--out-dir", ex.out_dir, "Directory for steps.csv, summary.csv, trajectory.svg");
  explore->add_option("--max-steps", ex.max_steps, "Step budget override");
  explore->add_flag("--record", ex.record, "Also write run.jsonl for the render command");
  explore->add_flag("--verbose", ex.verbose, "Also write per-candidate gains to gains.csv");

  BenchArgs bn;
  auto* bench = app.add_subcommand("bench", "Run a map x planner x seed benchmark");
  bench->add_option("--map", bn.maps, "Map file (repeatable)")->required();
  bench->add_option("--planners", bn.planners, "Comma-separated planners");
  bench->add_option("--seeds", bn.seeds, "Seed list, e.g. 0-9 or 1,3,5");
  bench->add_option("--config", bn.config, "Config file (falls back to $HPHS_CONFIG)");
  bench->add_option("--jobs", bn.jobs, "Concurrent runs");
  bench->add_option("--out", bn.out, "Output CSV path");
  bench->add_option("--max-steps", bn.max_steps, "Step budget override");

  std::string run_path;
  std::string svg_out = "trajectory.svg";
  auto* render = app.add_subcommand("render", "Render a recorded run (run.jsonl) to SVG");
  render->add_option("--run", run_path, "run.jsonl written by explore --record")->required();
  render->add_option("--out", svg_out, "Output SVG path");

  std::string defaults_config;
  auto* defaults = app.add_subcommand("defaults", "Print the effective configuration");
  defaults->add_option("--config", defaults_config, "Config file to apply first");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }

  try {
    if (*explore) return cmd_explore(ex);
    if (*bench) return cmd_bench(bn);
    if (*render) return cmd_render(run_path, svg_out);
    if (*defaults) {
      std::cout << hphs::format_config(load_config(defaults_config));
      return kExitComplete;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
