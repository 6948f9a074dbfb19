#pragma once

#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "hphs/grid.hpp"
#include "hphs/lidar.hpp"
#include "hphs/path.hpp"

namespace hphs {

enum class FrontierSource { Scan, LocalMap };

struct FrontierPoint {
  int id = -1;  // assigned when accepted into a FrontierSet
  Vec2 position;
  FrontierSource source = FrontierSource::Scan;
  int created_step = 0;
};

struct SamplerConfig {
  double r_gap = 1.0;                                // m, range jump that marks an occlusion edge
  double theta_inf = 15.0 * std::numbers::pi / 180;  // rad, angular gap that marks missing returns
  double d_s = 6.0;                                  // m, local-map detection radius
  double clearance_radius = 0.3;                     // m
  double dedup_radius = 1.0;                         // m

  /// Throws std::invalid_argument when a field is non-positive or theta_inf
  /// does not exceed the scan's beam spacing.
  void validate(double angular_spacing) const;
};

/// Operation counts for one detect_scan_frontiers call.
struct ScanSamplingStats {
  std::size_t pair_evaluations = 0;
  std::size_t synthesized = 0;
  std::size_t operations() const { return pair_evaluations + synthesized; }
};

// Range-discontinuity (|r_{i+1} - r_i| >= r_gap) and angular-gap
// (dtheta >= theta_inf) tests over cyclically consecutive returns. Work is
// linear in the number of returns and never touches a map.
std::vector<FrontierPoint> detect_scan_frontiers(const PolarScan& scan, const Pose& pose, const SamplerConfig& config,
                                                 int step = 0, ScanSamplingStats* stats = nullptr);

// Free cells within d_s of the pose that touch an Unknown cell (8-neighborhood),
// clustered 8-connected. One point per cluster of >= 3 cells, placed on the
// member closest to the cluster centroid. With clearance > 0, members with no
// Occupied cell within that distance are preferred when any exist.
std::vector<FrontierPoint> detect_local_frontiers(const OccupancyGrid& known, const Pose& pose, double d_s,
                                                  int step = 0, double clearance = 0.0);

inline constexpr std::size_t kMinLocalClusterSize = 3;

/// Active frontier points plus the id counter for new arrivals.
class FrontierSet {
 public:
  std::span<const FrontierPoint> points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  bool contains(int id) const;
  const FrontierPoint* find(int id) const;

  const FrontierPoint& add(FrontierPoint p);
  bool remove(int id);
  template <class Pred>
  std::size_t remove_if(Pred&& pred) {
    const auto before = points_.size();
    std::erase_if(points_, pred);
    return before - points_.size();
  }

 private:
  std::vector<FrontierPoint> points_;
  int next_id_ = 0;
};

/// Grid line of sight: no Occupied cell on the segment between a and b.
bool line_of_sight(const OccupancyGrid& known, Vec2 a, Vec2 b);

/// Some Occupied cell center lies within `radius` of p.
bool occupied_within(const OccupancyGrid& known, Vec2 p, double radius);

/// True when an Unknown cell within `radius` of p is connected to p's cell
/// through non-Occupied cells (4-neighborhood) inside that disk. Unknown
/// space behind a mapped wall does not count.
bool unknown_within(const OccupancyGrid& known, Vec2 p, double radius);

// Rejects a candidate that (a) lies outside the map or has an Occupied cell
// within clearance_radius, (b) sees an active frontier within dedup_radius, or
// (c) sits on a Free cell with no Unknown cell within dedup_radius.
// Survivors are added to `active` in order; their accepted copies are returned.
std::vector<FrontierPoint> filter_frontiers(std::span<const FrontierPoint> candidates, const OccupancyGrid& known,
                                            FrontierSet& active, const SamplerConfig& config);

/// The mapped-through rule alone; cheap enough to run every step.
std::size_t prune_visited(FrontierSet& active, const OccupancyGrid& known, const SamplerConfig& config);

/// Removes visited frontiers and frontiers the planner cannot reach. Returns
/// the number removed.
std::size_t prune_frontiers(FrontierSet& active, const OccupancyGrid& known, const CostField& reach,
                            const SamplerConfig& config);

}  // namespace hphs
