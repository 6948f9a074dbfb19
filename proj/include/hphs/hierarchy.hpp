#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "hphs/frontier.hpp"
#include "hphs/grid.hpp"

namespace hphs {

/// Half-open cell rectangle [x0, x1) x [y0, y1).
struct CellRect {
  int x0 = 0;
  int y0 = 0;
  int x1 = 0;
  int y1 = 0;

  int width() const { return x1 - x0; }
  int height() const { return y1 - y0; }
  bool contains(Cell c) const { return c.x >= x0 && c.x < x1 && c.y >= y0 && c.y < y1; }
  bool contains(const CellRect& r) const { return r.x0 >= x0 && r.y0 >= y0 && r.x1 <= x1 && r.y1 <= y1; }
  friend bool operator==(const CellRect&, const CellRect&) = default;
};

struct WorldRect {
  Vec2 min;
  Vec2 max;

  double width() const { return max.x - min.x; }
  double height() const { return max.y - min.y; }
  Vec2 center() const { return {0.5 * (min.x + max.x), 0.5 * (min.y + max.y)}; }
};

WorldRect to_world(const OccupancyGrid& geometry, const CellRect& r);

class NoBoundsError : public std::runtime_error {
 public:
  NoBoundsError() : std::runtime_error("map has no known cells") {}
};

/// Minimal rectangle covering every Free or Occupied cell.
CellRect compute_bounds(const OccupancyGrid& known);

struct Subregion {
  int index = 0;
  CellRect cells;
  WorldRect rect;
  Vec2 center;
  std::vector<int> frontier_ids;
};

struct SubregionGrid {
  CellRect bounds;
  int n_w = 1;
  int n_h = 1;
  std::vector<Subregion> subregions;  // row-major, index = row * n_w + col

  /// Indices of subregions holding at least one frontier, ascending.
  std::vector<int> filtered() const;
  /// Subregion owning a cell; cells outside the bounds clamp to the nearest edge.
  int owner(Cell c) const;
  Vec2 center(int index) const { return subregions[static_cast<std::size_t>(index)].center; }
  std::vector<Vec2> centers(std::span<const int> order) const;

  std::vector<int> col_edges;  // n_w + 1 cell x coordinates
  std::vector<int> row_edges;  // n_h + 1 cell y coordinates
};

// Splits `bounds` into n_w x n_h rectangles whose edges sit on cell
// boundaries (x0 + floor(j * width / n_w)). A frontier on a shared edge
// belongs to the higher-index subregion.
SubregionGrid segment(const OccupancyGrid& geometry, const CellRect& bounds, int n_w, int n_h,
                      std::span<const FrontierPoint> frontiers);

/// Classic DTW with Euclidean point cost over the full warping window. An
/// empty sequence has distance 0 to anything.
double dtw_distance(std::span<const Vec2> a, std::span<const Vec2> b);

struct SequenceWeights {
  double lambda1 = 0.15;  // 1/m, decay on cumulative distance
  double lambda2 = 0.05;  // 1/m, decay on DTW to the previous order
  double lambda3 = 2.0;   // weight of the robot-to-first-subregion leg

  void validate() const;
};

// exp(-lambda2 * DTW(centers, previous)) * sum_i exp(-lambda1 * D_i) with
// D_i = lambda3 * |robot - c_0| + |c_0 - c_1| + ... + |c_{i-1} - c_i|.
double sequence_revenue(std::span<const Vec2> centers, Vec2 robot, std::span<const Vec2> previous,
                        const SequenceWeights& weights);
double sequence_revenue(const SubregionGrid& grid, std::span<const int> order, Vec2 robot,
                        std::span<const Vec2> previous, const SequenceWeights& weights);

struct SequenceOptions {
  std::size_t exhaustive_limit = 8;  // exact search up to this many subregions
  bool force_heuristic = false;
};

struct SequencePlan {
  std::vector<int> order;
  double revenue = 0.0;
  std::vector<int> previous_order;
};

/// Order of positions 0..n-1 over `centers` maximizing sequence_revenue.
/// Exact ties resolve to the lexicographically smallest order.
std::vector<int> optimize_order(std::span<const Vec2> centers, Vec2 robot, std::span<const Vec2> previous,
                                const SequenceWeights& weights, const SequenceOptions& options = {});

/// Orders `candidates` (subregion indices, e.g. SubregionGrid::filtered()).
/// `previous_order` must already be expressed in this grid's indices.
SequencePlan optimize_sequence(const SubregionGrid& grid, std::span<const int> candidates, Vec2 robot,
                               std::span<const int> previous_order, const SequenceWeights& weights,
                               const SequenceOptions& options = {});

/// Maps last cycle's subregion centers onto the nearest current subregion.
std::vector<int> remap_previous_order(std::span<const Vec2> previous_centers, const SubregionGrid& grid);

/// The subregion to explore now.
int current_subregion(const SequencePlan& plan);

}  // namespace hphs
