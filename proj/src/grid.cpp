#include "hphs/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hphs {

OccupancyGrid::OccupancyGrid(int width, int height, double resolution, Vec2 origin, CellState fill)
    : width_(width), height_(height), resolution_(resolution), origin_(origin) {
  if (width <= 0 || height <= 0) throw std::invalid_argument("grid dimensions must be positive");
  if (!(resolution > 0.0)) throw std::invalid_argument("grid resolution must be positive");
  cells_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

Cell OccupancyGrid::locate(Vec2 p) const {
  return {static_cast<int>(std::floor((p.x - origin_.x) / resolution_)),
          static_cast<int>(std::floor((p.y - origin_.y) / resolution_))};
}

std::optional<Cell> OccupancyGrid::world_to_cell(Vec2 p) const {
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) return std::nullopt;
  const Cell c = locate(p);
  if (!contains(c)) return std::nullopt;
  return c;
}

Vec2 OccupancyGrid::cell_center(Cell c) const {
  return {origin_.x + (c.x + 0.5) * resolution_, origin_.y + (c.y + 0.5) * resolution_};
}

std::size_t OccupancyGrid::count(CellState s) const {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), s));
}

OccupancyGrid OccupancyGrid::blank_copy(CellState fill) const {
  return OccupancyGrid(width_, height_, resolution_, origin_, fill);
}

}  // namespace hphs
