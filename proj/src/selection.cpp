#include "hphs/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace hphs {

void GainWeights::validate() const {
  if (tau1 < 0.0 || tau2 < 0.0 || tau3 < 0.0) throw std::invalid_argument("gain weights tau must be >= 0");
  if (kernel_k < 3 || kernel_k % 2 == 0) throw std::invalid_argument("information kernel size must be odd and >= 3");
  if (!(0.0 <= s_occupied && s_occupied <= s_free && s_free <= s_unknown)) {
    throw std::invalid_argument("state scores must satisfy 0 <= s_occupied <= s_free <= s_unknown");
  }
}

double GainWeights::score(CellState s) const {
  switch (s) {
    case CellState::Free:
      return s_free;
    case CellState::Occupied:
      return s_occupied;
    case CellState::Unknown:
      break;
  }
  return s_unknown;
}

double traveling_gain(Vec2 robot, Vec2 frontier) { return distance(robot, frontier); }

double orientation_angle(const Pose& robot, Vec2 frontier) {
  const Vec2 d = frontier - robot.position();
  if (d.x == 0.0 && d.y == 0.0) return 0.0;
  return std::abs(normalize_angle(std::atan2(d.y, d.x) - robot.heading));
}

double orientation_gain(double theta_ori) { return std::exp(2.0 * (2.0 * theta_ori / std::numbers::pi - 1.0)); }

double orientation_gain(const Pose& robot, Vec2 frontier) { return orientation_gain(orientation_angle(robot, frontier)); }

double information_gain(const OccupancyGrid& known, Vec2 frontier, const GainWeights& weights) {
  const Cell c = known.locate(frontier);
  const int half = weights.kernel_k / 2;
  double sum = 0.0;
  for (int dy = -half; dy <= half; ++dy) {
    for (int dx = -half; dx <= half; ++dx) {
      const Cell n{c.x + dx, c.y + dy};
      sum += weights.score(known.contains(n) ? known.at(n) : CellState::Unknown);
    }
  }
  const double k2 = static_cast<double>(weights.kernel_k) * weights.kernel_k;
  return std::exp(sum / k2);
}

namespace {

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  double normalize(double v) const { return hi > lo ? (v - lo) / (hi - lo) : 0.5; }
};

}  // namespace

Selection select_from_raw(std::span<const RawGain> raw, const GainWeights& weights) {
  if (raw.empty()) throw std::invalid_argument("select_from_raw needs at least one candidate");
  Range rd, ro, ri;
  for (const RawGain& g : raw) {
    rd.add(g.distance);
    ro.add(g.orientation);
    ri.add(g.information);
  }

  Selection sel;
  sel.gains.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const RawGain& g = raw[i];
    GainBreakdown b;
    b.frontier_id = g.frontier_id;
    b.g_distance = g.distance;
    b.g_orientation = g.orientation;
    b.g_information = g.information;
    b.n_distance = rd.normalize(g.distance);
    b.n_orientation = ro.normalize(g.orientation);
    b.n_information = ri.normalize(g.information);
    b.total = weights.tau3 * b.n_information - weights.tau1 * b.n_distance - weights.tau2 * b.n_orientation;
    sel.gains.push_back(b);

    const GainBreakdown& best = sel.gains[sel.target_index];
    const bool better = i == 0 || b.total > best.total ||
                        (b.total == best.total && (b.g_distance < best.g_distance ||
                                                   (b.g_distance == best.g_distance && b.frontier_id < best.frontier_id)));
    if (better) sel.target_index = i;
  }
  sel.target_id = sel.gains[sel.target_index].frontier_id;
  return sel;
}

std::optional<Selection> select_target(std::span<const FrontierPoint> candidates, const Pose& robot,
                                       const OccupancyGrid& known, const GainWeights& weights) {
  if (candidates.empty()) return std::nullopt;
  std::vector<RawGain> raw;
  raw.reserve(candidates.size());
  for (const FrontierPoint& f : candidates) {
    raw.push_back({f.id, traveling_gain(robot.position(), f.position), orientation_gain(robot, f.position),
                   information_gain(known, f.position, weights)});
  }
  return select_from_raw(raw, weights);
}

}  // namespace hphs
