#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "hphs/grid.hpp"

namespace hphs {

/// Cells usable by the planner: not Occupied, and no Occupied cell within
/// Chebyshev distance `clearance`. Unknown cells count as traversable.
class Traversability {
 public:
  Traversability(const OccupancyGrid& known, int clearance);

  bool ok(Cell c) const { return geometry_->contains(c) && mask_[geometry_->index(c)]; }
  bool ok(std::size_t idx) const { return mask_[idx]; }
  int clearance() const { return clearance_; }

 private:
  const OccupancyGrid* geometry_;
  int clearance_;
  std::vector<bool> mask_;
};

/// Pointwise form of Traversability::ok, for checks against a map that has
/// changed since the mask was built.
bool cell_traversable(const OccupancyGrid& known, Cell c, int clearance);

struct Path {
  std::vector<Cell> cells;
  std::vector<Vec2> waypoints;
  double cost = 0.0;  // meters, Unknown cells weighted 2x
};

// Move cost into a neighbor: resolution for straight moves, sqrt(2)*resolution
// for diagonals, doubled when the entered cell is Unknown. Diagonal moves need
// both orthogonal neighbors traversable. The start cell is always allowed.
double move_cost(const OccupancyGrid& known, Cell to, bool diagonal);

/// A* search; nullopt means unreachable.
std::optional<Path> plan_path(const OccupancyGrid& known, const Pose& from, Vec2 to, int clearance);
std::optional<Path> plan_path(const OccupancyGrid& known, const Traversability& trav, Cell from, Cell to);

/// Single-source Dijkstra cost map over the same move model as plan_path.
class CostField {
 public:
  CostField(const OccupancyGrid& known, const Traversability& trav, Cell from);

  double cost(Cell c) const {
    return geometry_->contains(c) ? cost_[geometry_->index(c)] : std::numeric_limits<double>::infinity();
  }
  bool reachable(Cell c) const { return cost(c) < std::numeric_limits<double>::infinity(); }
  bool reachable(Vec2 p) const;
  double cost(Vec2 p) const;

 private:
  const OccupancyGrid* geometry_;
  std::vector<double> cost_;
};

}  // namespace hphs
