#include "hphs/explorer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "hphs/lidar.hpp"
#include "hphs/path.hpp"

namespace hphs {

std::string_view to_string(Planner p) { return p == Planner::Hphs ? "hphs" : "nearest"; }

std::string_view to_string(RunStatus s) { return s == RunStatus::Complete ? "Complete" : "Budget"; }

Planner parse_planner(std::string_view name) {
  if (name == "hphs") return Planner::Hphs;
  if (name == "nearest") return Planner::Nearest;
  throw std::invalid_argument("unknown planner '" + std::string(name) + "' (expected hphs or nearest)");
}

void RunConfig::validate() const {
  if (!(resolution > 0.0)) throw std::invalid_argument("resolution must be positive");
  if (beams <= 0) throw std::invalid_argument("sensor beams must be positive");
  if (!(max_range > 0.0)) throw std::invalid_argument("sensor max_range must be positive");
  if (clearance < 0) throw std::invalid_argument("planner clearance must be >= 0");
  if (n_w < 1 || n_h < 1) throw std::invalid_argument("subregion split counts must be >= 1");
  if (!(speed > 0.0)) throw std::invalid_argument("speed must be positive");
  if (replan_interval < 1) throw std::invalid_argument("replan_interval must be >= 1");
  if (max_steps <= 0) throw std::invalid_argument("max_steps must be positive");
  if (start_jitter < 0.0) throw std::invalid_argument("start_jitter must be >= 0");
  sampler.validate(kTwoPi / beams);
  sequence.validate();
  gains.validate();
}

std::vector<bool> reachable_free_mask(const OccupancyGrid& truth, Cell start) {
  std::vector<bool> mask(truth.size(), false);
  if (!truth.contains(start) || truth.at(start) != CellState::Free) return mask;
  std::vector<Cell> stack{start};
  mask[truth.index(start)] = true;
  while (!stack.empty()) {
    const Cell c = stack.back();
    stack.pop_back();
    for (const Cell d : {Cell{1, 0}, Cell{-1, 0}, Cell{0, 1}, Cell{0, -1}}) {
      const Cell n{c.x + d.x, c.y + d.y};
      if (!truth.contains(n) || truth.at(n) != CellState::Free || mask[truth.index(n)]) continue;
      mask[truth.index(n)] = true;
      stack.push_back(n);
    }
  }
  return mask;
}

Pose jittered_start(const OccupancyGrid& truth, const Pose& nominal, std::uint64_t seed, double radius,
                    int clearance) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> heading(-std::numbers::pi, std::numbers::pi);
  const double h = heading(rng);
  const auto home = truth.world_to_cell(nominal.position());
  if (!home) return nominal;
  const auto reach = reachable_free_mask(truth, *home);

  std::vector<Cell> options;
  const int span = static_cast<int>(std::ceil(radius / truth.resolution()));
  for (int y = home->y - span; y <= home->y + span; ++y) {
    for (int x = home->x - span; x <= home->x + span; ++x) {
      const Cell c{x, y};
      if (!truth.contains(c) || !reach[truth.index(c)]) continue;
      if (distance(truth.cell_center(c), truth.cell_center(*home)) > radius) continue;
      if (cell_traversable(truth, c, clearance)) options.push_back(c);
    }
  }
  if (options.empty()) return Pose(nominal.position(), h);
  std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
  return Pose(truth.cell_center(options[pick(rng)]), h);
}

namespace {

class Session {
 public:
  Session(const OccupancyGrid& truth, const Pose& start, const RunConfig& config, Planner planner)
      : truth_(truth), config_(config), known_(truth.blank_copy()), pose_(start) {
    config_.validate();
    const auto cell = truth.world_to_cell(start.position());
    if (!cell || truth.at(*cell) != CellState::Free) throw InvalidStartError("start pose is not in a free cell");
    pose_ = Pose(truth.cell_center(*cell), start.heading);
    reachable_ = reachable_free_mask(truth, *cell);
    result_.planner = planner;
    result_.reachable_free_cells = static_cast<std::size_t>(std::count(reachable_.begin(), reachable_.end(), true));
  }

  RunResult run() {
    result_.trajectory.push_back(pose_);
    sense();
    record();

    bool need_replan = true;
    bool keep_target = false;
    int since_replan = 0;
    for (;;) {
      if (need_replan) {
        if (!replan(keep_target)) {
          result_.status = RunStatus::Complete;
          break;
        }
        need_replan = false;
        keep_target = false;
        since_replan = 0;
      }
      if (result_.steps >= config_.max_steps) {
        result_.status = RunStatus::Budget;
        break;
      }
      if (path_pos_ + 1 >= path_.cells.size()) {
        // End of the path: the target cell itself.
        retire(target_id_);
        need_replan = true;
        continue;
      }
      if (!path_ahead_clear()) {
        // A fresh plan that is already blocked cannot make progress.
        if (since_replan == 0) active_.remove(target_id_);
        need_replan = true;
        continue;
      }

      advance();
      ++since_replan;
      sense();
      record();

      const FrontierPoint* target = active_.find(target_id_);
      if (!target) {
        need_replan = true;
      } else if (distance(pose_.position(), target->position) <= 0.5 * config_.sampler.dedup_radius) {
        retire(target_id_);
        need_replan = true;
      } else if (since_replan >= config_.replan_interval) {
        need_replan = true;
        keep_target = true;
      }
    }

    result_.traveled = traveled_;
    result_.sim_time = traveled_ / config_.speed;
    result_.known = known_;
    result_.frontiers.assign(active_.points().begin(), active_.points().end());
    return std::move(result_);
  }

 private:
  // The retired target may have shadowed this step's candidates as a
  // duplicate, so sample again without it.
  void retire(int id) {
    if (const FrontierPoint* f = active_.find(id)) retired_.push_back(f->position);
    active_.remove(id);
    sample();
  }

  Cell robot_cell() const { return known_.locate(pose_.position()); }

  void sense() {
    last_scan_ = simulate_scan(truth_, pose_, config_.beams, config_.max_range);
    for (const std::size_t idx : integrate_scan(known_, last_scan_, pose_)) {
      ++known_cells_;
      if (known_.at(idx) == CellState::Free && reachable_[idx]) ++result_.explored_reachable_free_cells;
    }
    sample();
  }

  void sample() {
    auto candidates = detect_scan_frontiers(last_scan_, pose_, config_.sampler, result_.steps);
    auto local = detect_local_frontiers(known_, pose_, config_.sampler.d_s, result_.steps,
                                        config_.sampler.clearance_radius);
    // Scan points next to a frontier the robot already reached carry no news.
    std::erase_if(candidates, [&](const FrontierPoint& c) {
      return std::any_of(retired_.begin(), retired_.end(), [&](const Vec2& r) {
        return distance(r, c.position) <= config_.sampler.dedup_radius;
      });
    });
    candidates.insert(candidates.end(), local.begin(), local.end());
    filter_frontiers(candidates, known_, active_, config_.sampler);
    prune_visited(active_, known_, config_.sampler);
  }

  void record() {
    StepRecord r;
    r.step = result_.steps;
    r.traveled = traveled_;
    r.sim_time = traveled_ / config_.speed;
    r.pose = pose_;
    const double res = known_.resolution();
    r.explored_m2 = static_cast<double>(known_cells_) * res * res;
    r.completion = result_.reachable_free_cells == 0
                       ? 1.0
                       : static_cast<double>(result_.explored_reachable_free_cells) /
                             static_cast<double>(result_.reachable_free_cells);
    r.frontiers = active_.size();
    r.subregions = subregion_count_;
    if (const FrontierPoint* t = active_.find(target_id_)) r.target = t->position;
    result_.log.push_back(r);
  }

  // Clearance actually used for this cycle: relaxed only when the robot's
  // own cell no longer satisfies the configured one.
  int cycle_clearance() const {
    int clr = config_.clearance;
    while (clr > 0 && !cell_traversable(known_, robot_cell(), clr)) --clr;
    return clr;
  }

  bool replan(bool keep_target) {
    clearance_ = cycle_clearance();
    const Traversability trav(known_, clearance_);
    const Cell here = robot_cell();
    const CostField field(known_, trav, here);
    prune_frontiers(active_, known_, field, config_.sampler);

    // Periodic refresh: new path, same target. Re-scoring here made the robot
    // flip between two targets whose paths bend away from them.
    if (keep_target && active_.contains(target_id_)) {
      if (auto path = plan_path(known_, trav, here, known_.locate(active_.find(target_id_)->position))) {
        path_ = std::move(*path);
        path_pos_ = 0;
        return true;
      }
    }

    while (!active_.empty()) {
      const std::optional<int> target = result_.planner == Planner::Hphs ? choose_hphs() : choose_nearest(field);
      if (!target) return false;
      const FrontierPoint* f = active_.find(*target);
      auto path = plan_path(known_, trav, here, known_.locate(f->position));
      if (!path) {
        active_.remove(*target);
        continue;
      }
      target_id_ = *target;
      path_ = std::move(*path);
      path_pos_ = 0;
      return true;
    }
    target_id_ = -1;
    return false;
  }

  std::optional<int> choose_hphs() {
    const CellRect bounds = compute_bounds(known_);
    SubregionGrid grid = segment(known_, bounds, config_.n_w, config_.n_h, active_.points());
    const std::vector<int> candidates = grid.filtered();
    if (candidates.empty()) return std::nullopt;
    const std::vector<int> previous = remap_previous_order(previous_centers_, grid);
    const SequencePlan plan =
        optimize_sequence(grid, candidates, pose_.position(), previous, config_.sequence, config_.sequence_options);
    previous_centers_ = grid.centers(plan.order);
    subregion_count_ = plan.order.size();

    std::optional<int> chosen;
    for (const int sr : plan.order) {
      std::vector<FrontierPoint> inside;
      for (const int id : grid.subregions[static_cast<std::size_t>(sr)].frontier_ids) {
        if (const FrontierPoint* f = active_.find(id)) inside.push_back(*f);
      }
      const auto sel = select_target(inside, pose_, known_, config_.gains);
      if (!sel) continue;
      if (config_.log_gains) {
        for (const GainBreakdown& g : sel->gains) result_.gain_log.push_back({result_.steps, g});
      }
      chosen = sel->target_id;
      break;
    }
    result_.subregions = std::move(grid);
    return chosen;
  }

  std::optional<int> choose_nearest(const CostField& field) const {
    std::optional<int> best;
    double best_cost = std::numeric_limits<double>::infinity();
    for (const FrontierPoint& f : active_.points()) {
      const double c = field.cost(f.position);
      if (c < best_cost || (c == best_cost && best && f.id < *best)) {
        best_cost = c;
        best = f.id;
      }
    }
    return best;
  }

  bool path_ahead_clear() const {
    const Cell next = path_.cells[path_pos_ + 1];
    if (known_.at(next) != CellState::Free) return false;
    for (std::size_t i = path_pos_ + 1; i < path_.cells.size(); ++i) {
      if (!cell_traversable(known_, path_.cells[i], clearance_)) return false;
    }
    return true;
  }

  void advance() {
    const Cell next = path_.cells[++path_pos_];
    const Vec2 to = known_.cell_center(next);
    const Vec2 d = to - pose_.position();
    traveled_ += d.norm();
    pose_ = Pose(to, std::atan2(d.y, d.x));
    ++result_.steps;
    result_.trajectory.push_back(pose_);
    if (truth_.at(next) == CellState::Occupied) ++result_.safety_violations;
  }

  const OccupancyGrid& truth_;
  RunConfig config_;
  OccupancyGrid known_;
  Pose pose_;
  std::vector<bool> reachable_;
  FrontierSet active_;
  RunResult result_;

  std::size_t known_cells_ = 0;
  double traveled_ = 0.0;
  int target_id_ = -1;
  Path path_;
  std::size_t path_pos_ = 0;
  int clearance_ = 0;
  std::vector<Vec2> previous_centers_;
  std::vector<Vec2> retired_;
  PolarScan last_scan_;
  std::size_t subregion_count_ = 0;
};

}  // namespace

RunResult run(const OccupancyGrid& truth, const Pose& start, const RunConfig& config, Planner planner) {
  return Session(truth, start, config, planner).run();
}

RunResult run_nearest_baseline(const OccupancyGrid& truth, const Pose& start, const RunConfig& config) {
  return run(truth, start, config, Planner::Nearest);
}

double exploration_rate(double explored_m2, double distance_m, double resolution) {
  return explored_m2 / std::max(distance_m, resolution);
}

MetricsRow metrics(const RunResult& result) {
  MetricsRow m;
  const double res = result.known.resolution();
  m.distance_m = result.traveled;
  m.time_s = result.sim_time;
  const auto known_cells = result.known.count(CellState::Free) + result.known.count(CellState::Occupied);
  m.explored_m2 = static_cast<double>(known_cells) * res * res;
  m.rate_m2_per_m = exploration_rate(m.explored_m2, m.distance_m, res);
  m.completion = result.reachable_free_cells == 0 ? 1.0
                                                  : static_cast<double>(result.explored_reachable_free_cells) /
                                                        static_cast<double>(result.reachable_free_cells);
  return m;
}

}  // namespace hphs
