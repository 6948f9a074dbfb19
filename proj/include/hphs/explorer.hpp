#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hphs/frontier.hpp"
#include "hphs/grid.hpp"
#include "hphs/hierarchy.hpp"
#include "hphs/selection.hpp"

namespace hphs {

enum class Planner { Hphs, Nearest };
enum class RunStatus { Complete, Budget };

std::string_view to_string(Planner p);
std::string_view to_string(RunStatus s);
/// Accepts "hphs" and "nearest"; throws std::invalid_argument otherwise.
Planner parse_planner(std::string_view name);

struct RunConfig {
  double resolution = 0.1;  // m/cell for loaded maps
  int beams = 360;
  double max_range = 10.0;  // m
  int clearance = 2;        // cells
  SamplerConfig sampler;
  int n_w = 4;
  int n_h = 4;
  SequenceWeights sequence;
  SequenceOptions sequence_options;
  GainWeights gains;
  double speed = 0.6;  // m/s
  int replan_interval = 25;
  int max_steps = 20000;
  std::uint64_t rng_seed = 0;
  double start_jitter = 0.5;  // m, harness-level start perturbation radius
  bool log_gains = false;

  void validate() const;
};

class InvalidStartError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One row of steps.csv.
struct StepRecord {
  int step = 0;
  double sim_time = 0.0;
  Pose pose;
  double traveled = 0.0;
  double explored_m2 = 0.0;
  double completion = 0.0;
  std::size_t frontiers = 0;
  std::size_t subregions = 0;
  std::optional<Vec2> target;
};

struct GainLogRow {
  int step = 0;
  GainBreakdown gain;
};

struct RunResult {
  Planner planner = Planner::Hphs;
  RunStatus status = RunStatus::Budget;
  int steps = 0;
  double traveled = 0.0;  // m
  double sim_time = 0.0;  // s
  std::vector<Pose> trajectory;
  OccupancyGrid known{1, 1, 1.0};
  std::vector<FrontierPoint> frontiers;        // active set at termination
  std::optional<SubregionGrid> subregions;     // last segmentation (HPHS only)
  std::vector<StepRecord> log;
  std::vector<GainLogRow> gain_log;
  std::size_t reachable_free_cells = 0;        // flood fill from start on the truth map
  std::size_t explored_reachable_free_cells = 0;
  std::size_t safety_violations = 0;           // steps spent in a truth-Occupied cell
};

/// 4-connected flood fill over Free truth cells from `start`.
std::vector<bool> reachable_free_mask(const OccupancyGrid& truth, Cell start);

/// Deterministic start perturbation: a truth cell within `radius` of the
/// nominal start that satisfies the planner clearance, plus a heading in
/// [-pi, pi). Falls back to the nominal start when no such cell exists.
Pose jittered_start(const OccupancyGrid& truth, const Pose& nominal, std::uint64_t seed, double radius, int clearance);

/// Sense, sample, filter, segment, sequence, select, move; until no frontier
/// is left (Complete) or max_steps is hit (Budget).
RunResult run(const OccupancyGrid& truth, const Pose& start, const RunConfig& config, Planner planner = Planner::Hphs);
/// Same loop with the hierarchy skipped: always drive to the frontier with
/// the lowest planned path cost.
RunResult run_nearest_baseline(const OccupancyGrid& truth, const Pose& start, const RunConfig& config);

struct MetricsRow {
  double distance_m = 0.0;
  double time_s = 0.0;
  double explored_m2 = 0.0;
  double rate_m2_per_m = 0.0;
  double completion = 0.0;
};

MetricsRow metrics(const RunResult& result);
/// Rate with the distance floored at one cell.
double exploration_rate(double explored_m2, double distance_m, double resolution);

}  // namespace hphs
