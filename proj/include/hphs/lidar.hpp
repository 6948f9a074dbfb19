#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "hphs/grid.hpp"

namespace hphs {

struct ScanReturn {
  double theta = 0.0;  // radians in [0, 2pi), world frame
  double range = 0.0;  // meters in (0, max_range]
};

/// Planar 360 degree scan. Beam k points at 2*pi*k/beams; beams that hit
/// nothing within max_range are absent from `returns`.
struct PolarScan {
  std::vector<ScanReturn> returns;
  double max_range = 10.0;
  int beams = 360;

  double angular_spacing() const { return kTwoPi / beams; }
};

class InvalidPoseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One entry of a ray traversal: the cell(s) the ray enters at distance `t`.
/// When the ray crosses a lattice corner exactly, the two side cells are
/// reported together before the diagonal cell.
struct RayStep {
  double t = 0.0;
  std::array<Cell, 2> cells{};
  int count = 1;
};

// Supercover traversal from `from` along `angle` up to `max_dist`. The
// visitor receives every RayStep in order and returns false to stop. The walk
// ends silently at the grid border.
template <class Visitor>
void traverse_ray(const OccupancyGrid& geometry, Vec2 from, double angle, double max_dist, Visitor&& visit) {
  const double res = geometry.resolution();
  const Vec2 p{(from.x - geometry.origin().x) / res, (from.y - geometry.origin().y) / res};
  Cell c{static_cast<int>(std::floor(p.x)), static_cast<int>(std::floor(p.y))};
  if (!geometry.contains(c)) return;
  if (!visit(RayStep{0.0, {c, c}, 1})) return;

  const double dx = std::cos(angle);
  const double dy = std::sin(angle);
  const int step_x = dx > 0.0 ? 1 : (dx < 0.0 ? -1 : 0);
  const int step_y = dy > 0.0 ? 1 : (dy < 0.0 ? -1 : 0);
  constexpr double inf = std::numeric_limits<double>::infinity();
  const double tie_eps = 1e-9 * res;

  auto next_x = [&] {
    if (step_x == 0) return inf;
    const double boundary = step_x > 0 ? c.x + 1.0 : static_cast<double>(c.x);
    return (boundary - p.x) * res / dx;
  };
  auto next_y = [&] {
    if (step_y == 0) return inf;
    const double boundary = step_y > 0 ? c.y + 1.0 : static_cast<double>(c.y);
    return (boundary - p.y) * res / dy;
  };

  for (;;) {
    const double tx = next_x();
    const double ty = next_y();
    const double t = std::min(tx, ty);
    if (!(t <= max_dist)) return;
    if (std::abs(tx - ty) <= tie_eps) {
      const Cell side_a{c.x + step_x, c.y};
      const Cell side_b{c.x, c.y + step_y};
      if (!geometry.contains(side_a) || !geometry.contains(side_b)) return;
      if (!visit(RayStep{t, {side_a, side_b}, 2})) return;
      c = Cell{c.x + step_x, c.y + step_y};
    } else if (tx < ty) {
      c.x += step_x;
    } else {
      c.y += step_y;
    }
    if (!geometry.contains(c)) return;
    if (!visit(RayStep{t, {c, c}, 1})) return;
  }
}

/// Casts `beams` uniformly spaced rays against the ground truth.
PolarScan simulate_scan(const OccupancyGrid& truth, const Pose& pose, int beams, double max_range);

/// Folds a scan into the knowledge map. Returns the indices of cells that
/// were Unknown before the call. Occupied cells are never cleared.
std::vector<std::size_t> integrate_scan(OccupancyGrid& known, const PolarScan& scan, const Pose& pose);

}  // namespace hphs
