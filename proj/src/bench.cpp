#include "hphs/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "hphs/map_io.hpp"
#include "hphs/report.hpp"

namespace hphs {

void BenchmarkSpec::validate() const {
  if (maps.empty()) throw std::invalid_argument("benchmark needs at least one map");
  if (planners.empty()) throw std::invalid_argument("benchmark needs at least one planner");
  if (seeds.empty()) throw std::invalid_argument("benchmark needs at least one seed");
  config.validate();
}

std::string map_name(const std::filesystem::path& path) { return path.stem().string(); }

Stats describe(std::vector<double> values) {
  Stats s;
  if (values.empty()) return s;
  const double n = static_cast<double>(values.size());
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (const double v : values) ss += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(ss / n);
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  s.median = values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
  return s;
}

BenchReport run_bench(const BenchmarkSpec& spec) {
  spec.validate();

  struct MapSlot {
    std::optional<LoadedMap> map;
    std::string error;
  };
  std::vector<MapSlot> maps(spec.maps.size());
  for (std::size_t i = 0; i < spec.maps.size(); ++i) {
    try {
      maps[i].map = load_map_file(spec.maps[i], spec.config.resolution);
    } catch (const std::exception& e) {
      maps[i].error = e.what();
    }
  }

  BenchReport report;
  for (std::size_t m = 0; m < spec.maps.size(); ++m) {
    for (const Planner p : spec.planners) {
      for (const std::uint64_t seed : spec.seeds) {
        BenchRow row;
        row.map = map_name(spec.maps[m]);
        row.planner = p;
        row.seed = seed;
        report.rows.push_back(row);
      }
    }
  }

  const std::size_t per_map = spec.planners.size() * spec.seeds.size();
  auto work = [&](std::size_t i) {
    BenchRow& row = report.rows[i];
    const MapSlot& slot = maps[i / per_map];
    if (!slot.map) {
      row.error = slot.error;
      return;
    }
    try {
      RunConfig cfg = spec.config;
      cfg.rng_seed = row.seed;
      const Pose start = jittered_start(slot.map->truth, slot.map->start, row.seed, cfg.start_jitter, cfg.clearance);
      const RunResult r = run(slot.map->truth, start, cfg, row.planner);
      row.status = r.status;
      row.metrics = metrics(r);
      row.safety_violations = r.safety_violations;
      row.steps = r.steps;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  };

  const std::size_t jobs = std::clamp<std::size_t>(spec.jobs, 1, report.rows.size());
  if (jobs == 1) {
    for (std::size_t i = 0; i < report.rows.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < jobs; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < report.rows.size(); i = next++) work(i);
      });
    }
    for (auto& th : pool) th.join();
  }

  for (std::size_t m = 0; m < spec.maps.size(); ++m) {
    for (std::size_t pi = 0; pi < spec.planners.size(); ++pi) {
      Aggregate a;
      a.map = map_name(spec.maps[m]);
      a.planner = spec.planners[pi];
      std::vector<double> dist, time, rate, completion;
      for (std::size_t s = 0; s < spec.seeds.size(); ++s) {
        const BenchRow& row = report.rows[m * per_map + pi * spec.seeds.size() + s];
        ++a.runs;
        if (!row.status) continue;
        if (*row.status == RunStatus::Complete) ++a.complete;
        dist.push_back(row.metrics.distance_m);
        time.push_back(row.metrics.time_s);
        rate.push_back(row.metrics.rate_m2_per_m);
        completion.push_back(row.metrics.completion);
      }
      const Stats d = describe(dist), t = describe(time), r = describe(rate), c = describe(completion);
      a.mean_distance = d.mean;
      a.std_distance = d.stddev;
      a.median_distance = d.median;
      a.mean_time = t.mean;
      a.std_time = t.stddev;
      a.median_time = t.median;
      a.mean_rate = r.mean;
      a.std_rate = r.stddev;
      a.median_rate = r.median;
      a.mean_completion = c.mean;
      a.std_completion = c.stddev;
      a.median_completion = c.median;
      report.aggregates.push_back(a);
    }
  }
  return report;
}

std::string bench_csv(const BenchReport& report) {
  std::string out(kSummaryHeader);
  out += '\n';
  for (const BenchRow& row : report.rows) {
    if (!row.status) {
      out += row.map + ',' + std::string(to_string(row.planner)) + ',' + std::to_string(row.seed) + ",Error,,,,\n";
      continue;
    }
    out += summary_row(row.map, row.planner, row.seed, to_string(*row.status), row.metrics);
  }
  for (const Aggregate& a : report.aggregates) {
    const std::string prefix = a.map + ',' + std::string(to_string(a.planner)) + ',';
    const std::string status = std::to_string(a.complete) + "/" + std::to_string(a.runs);
    auto emit = [&](const char* label, double d, double t, double r, double c) {
      out += prefix + label + ',' + status + ',' + format_fixed(d) + ',' + format_fixed(t) + ',' + format_fixed(r) +
             ',' + format_fixed(c) + '\n';
    };
    emit("mean", a.mean_distance, a.mean_time, a.mean_rate, a.mean_completion);
    emit("std", a.std_distance, a.std_time, a.std_rate, a.std_completion);
    emit("median", a.median_distance, a.median_time, a.median_rate, a.median_completion);
  }
  return out;
}

}  // namespace hphs
