#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hphs/frontier.hpp"
#include "hphs/grid.hpp"

namespace hphs {

struct GainWeights {
  double tau1 = 1.0;  // distance penalty
  double tau2 = 0.6;  // orientation penalty
  double tau3 = 1.2;  // information reward
  int kernel_k = 9;
  double s_occupied = 0.0;
  double s_free = 0.2;
  double s_unknown = 1.0;

  /// Enforces tau >= 0, odd k >= 3 and 0 <= s_occupied <= s_free <= s_unknown.
  void validate() const;
  double score(CellState s) const;
};

/// Raw indicators for one candidate.
struct RawGain {
  int frontier_id = -1;
  double distance = 0.0;
  double orientation = 0.0;
  double information = 0.0;
};

struct GainBreakdown {
  int frontier_id = -1;
  double g_distance = 0.0;
  double g_orientation = 0.0;
  double g_information = 0.0;
  double n_distance = 0.0;  // min-max normalized
  double n_orientation = 0.0;
  double n_information = 0.0;
  double total = 0.0;
};

struct Selection {
  int target_id = -1;
  std::size_t target_index = 0;
  std::vector<GainBreakdown> gains;
};

double traveling_gain(Vec2 robot, Vec2 frontier);

/// |angle between the heading vector and (frontier - robot)| in [0, pi];
/// 0 when the frontier coincides with the robot.
double orientation_angle(const Pose& robot, Vec2 frontier);
/// exp(2 * (2 * theta / pi - 1)).
double orientation_gain(double theta_ori);
double orientation_gain(const Pose& robot, Vec2 frontier);

/// exp(mean state score over the k x k window centred on the frontier cell);
/// cells outside the map count as Unknown.
double information_gain(const OccupancyGrid& known, Vec2 frontier, const GainWeights& weights);

// Min-max normalizes each indicator over the candidates (a constant indicator
// normalizes to 0.5) and takes the argmax of
//   tau3 * |G^I| - tau1 * |G^D| - tau2 * |G^O|
// Ties go to the smaller raw distance, then the smaller frontier id.
Selection select_from_raw(std::span<const RawGain> raw, const GainWeights& weights);

/// nullopt when there are no candidates.
std::optional<Selection> select_target(std::span<const FrontierPoint> candidates, const Pose& robot,
                                       const OccupancyGrid& known, const GainWeights& weights);

}  // namespace hphs
