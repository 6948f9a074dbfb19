#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hphs/explorer.hpp"

namespace hphs {

struct BenchmarkSpec {
  std::vector<std::filesystem::path> maps;
  std::vector<Planner> planners;
  std::vector<std::uint64_t> seeds;
  RunConfig config;
  unsigned jobs = 1;

  void validate() const;
};

struct BenchRow {
  std::string map;
  Planner planner = Planner::Hphs;
  std::uint64_t seed = 0;
  std::optional<RunStatus> status;  // empty when the run raised an error
  std::string error;
  MetricsRow metrics;
  std::size_t safety_violations = 0;
  int steps = 0;
};

struct Aggregate {
  std::string map;
  Planner planner = Planner::Hphs;
  std::size_t runs = 0;
  std::size_t complete = 0;
  double mean_distance = 0.0;
  double std_distance = 0.0;  // population
  double median_distance = 0.0;
  double mean_time = 0.0;
  double std_time = 0.0;
  double median_time = 0.0;
  double mean_rate = 0.0;
  double std_rate = 0.0;
  double median_rate = 0.0;
  double mean_completion = 0.0;
  double std_completion = 0.0;
  double median_completion = 0.0;
};

struct BenchReport {
  std::vector<BenchRow> rows;  // map-major, then planner, then seed
  std::vector<Aggregate> aggregates;
};

struct Stats {
  double mean = 0.0;
  double stddev = 0.0;  // population
  double median = 0.0;
};
Stats describe(std::vector<double> values);

/// Runs every (map, planner, seed) cell on up to `jobs` threads.
BenchReport run_bench(const BenchmarkSpec& spec);

// Per-run rows in the summary schema, then one block per (map, planner) with
// seed = mean / std / median and status = "<complete>/<runs>".
std::string bench_csv(const BenchReport& report);

/// Map name used in CSV rows: the file stem.
std::string map_name(const std::filesystem::path& path);

}  // namespace hphs
