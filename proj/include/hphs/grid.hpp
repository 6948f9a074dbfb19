#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hphs/geometry.hpp"

namespace hphs {

enum class CellState : std::uint8_t { Free, Unknown, Occupied };

/// Row-major 2D lattice of cell states. Cell (0,0) spans
/// [origin.x, origin.x + resolution) x [origin.y, origin.y + resolution).
class OccupancyGrid {
 public:
  OccupancyGrid(int width, int height, double resolution, Vec2 origin = {},
                CellState fill = CellState::Unknown);

  int width() const { return width_; }
  int height() const { return height_; }
  double resolution() const { return resolution_; }
  Vec2 origin() const { return origin_; }
  std::size_t size() const { return cells_.size(); }

  bool contains(Cell c) const { return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_; }
  std::size_t index(Cell c) const {
    return static_cast<std::size_t>(c.y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(c.x);
  }
  Cell cell_of(std::size_t idx) const {
    return {static_cast<int>(idx % static_cast<std::size_t>(width_)),
            static_cast<int>(idx / static_cast<std::size_t>(width_))};
  }

  CellState at(Cell c) const { return cells_[index(c)]; }
  CellState at(std::size_t idx) const { return cells_[idx]; }
  void set(Cell c, CellState s) { cells_[index(c)] = s; }
  void set(std::size_t idx, CellState s) { cells_[idx] = s; }

  /// Cell containing the world point, without bounds checking.
  Cell locate(Vec2 p) const;
  /// Cell containing the world point, or nullopt when outside the grid.
  std::optional<Cell> world_to_cell(Vec2 p) const;
  Vec2 cell_center(Cell c) const;

  std::size_t count(CellState s) const;
  std::span<const CellState> cells() const { return cells_; }

  /// Same geometry, every cell set to `fill`.
  OccupancyGrid blank_copy(CellState fill = CellState::Unknown) const;

  friend bool operator==(const OccupancyGrid&, const OccupancyGrid&) = default;

 private:
  int width_;
  int height_;
  double resolution_;
  Vec2 origin_;
  std::vector<CellState> cells_;
};

}  // namespace hphs
