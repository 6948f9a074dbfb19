#include "hphs/path.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <queue>
#include <tuple>

namespace hphs {

namespace {

constexpr std::array<Cell, 8> kNeighbors{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};
constexpr double kInf = std::numeric_limits<double>::infinity();

bool allowed(const Traversability& trav, Cell c, Cell start) { return c == start || trav.ok(c); }

// Visits every legal move out of `c` as (neighbor, step cost).
template <class F>
void expand(const OccupancyGrid& known, const Traversability& trav, Cell c, Cell start, F&& f) {
  for (const Cell d : kNeighbors) {
    const Cell n{c.x + d.x, c.y + d.y};
    if (!known.contains(n) || !allowed(trav, n, start)) continue;
    const bool diagonal = d.x != 0 && d.y != 0;
    if (diagonal && (!allowed(trav, {c.x + d.x, c.y}, start) || !allowed(trav, {c.x, c.y + d.y}, start))) continue;
    f(n, move_cost(known, n, diagonal));
  }
}

double octile(Cell a, Cell b, double res) {
  const double dx = std::abs(a.x - b.x);
  const double dy = std::abs(a.y - b.y);
  return res * (std::max(dx, dy) + (std::numbers::sqrt2 - 1.0) * std::min(dx, dy));
}

}  // namespace

Traversability::Traversability(const OccupancyGrid& known, int clearance)
    : geometry_(&known), clearance_(std::max(clearance, 0)), mask_(known.size(), false) {
  const int w = known.width();
  const int h = known.height();
  // Summed-area table of Occupied cells.
  std::vector<int> sat(static_cast<std::size_t>(w + 1) * static_cast<std::size_t>(h + 1), 0);
  auto at = [&](int x, int y) -> int& { return sat[static_cast<std::size_t>(y) * static_cast<std::size_t>(w + 1) + static_cast<std::size_t>(x)]; };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int occ = known.at(Cell{x, y}) == CellState::Occupied ? 1 : 0;
      at(x + 1, y + 1) = occ + at(x, y + 1) + at(x + 1, y) - at(x, y);
    }
  }
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int x0 = std::max(0, x - clearance_);
      const int y0 = std::max(0, y - clearance_);
      const int x1 = std::min(w, x + clearance_ + 1);
      const int y1 = std::min(h, y + clearance_ + 1);
      const int occ = at(x1, y1) - at(x0, y1) - at(x1, y0) + at(x0, y0);
      mask_[known.index(Cell{x, y})] = occ == 0;
    }
  }
}

bool cell_traversable(const OccupancyGrid& known, Cell c, int clearance) {
  if (!known.contains(c)) return false;
  clearance = std::max(clearance, 0);
  for (int y = std::max(0, c.y - clearance); y <= std::min(known.height() - 1, c.y + clearance); ++y) {
    for (int x = std::max(0, c.x - clearance); x <= std::min(known.width() - 1, c.x + clearance); ++x) {
      if (known.at(Cell{x, y}) == CellState::Occupied) return false;
    }
  }
  return true;
}

double move_cost(const OccupancyGrid& known, Cell to, bool diagonal) {
  const double base = diagonal ? std::numbers::sqrt2 * known.resolution() : known.resolution();
  return known.at(to) == CellState::Unknown ? 2.0 * base : base;
}

std::optional<Path> plan_path(const OccupancyGrid& known, const Pose& from, Vec2 to, int clearance) {
  const auto start = known.world_to_cell(from.position());
  const auto goal = known.world_to_cell(to);
  if (!start || !goal) return std::nullopt;
  const Traversability trav(known, clearance);
  return plan_path(known, trav, *start, *goal);
}

std::optional<Path> plan_path(const OccupancyGrid& known, const Traversability& trav, Cell from, Cell to) {
  if (!known.contains(from) || !known.contains(to)) return std::nullopt;
  if (from == to) return Path{{from}, {known.cell_center(from)}, 0.0};
  if (!trav.ok(to)) return std::nullopt;

  const double res = known.resolution();
  std::vector<double> g(known.size(), kInf);
  std::vector<std::size_t> parent(known.size(), known.size());
  std::vector<bool> closed(known.size(), false);
  using Entry = std::tuple<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;

  const std::size_t s = known.index(from);
  const std::size_t t = known.index(to);
  g[s] = 0.0;
  open.emplace(octile(from, to, res), s);
  while (!open.empty()) {
    const auto [f, idx] = open.top();
    open.pop();
    if (closed[idx]) continue;
    closed[idx] = true;
    if (idx == t) break;
    const Cell c = known.cell_of(idx);
    expand(known, trav, c, from, [&](Cell n, double step) {
      const std::size_t ni = known.index(n);
      const double cand = g[idx] + step;
      if (cand < g[ni]) {
        g[ni] = cand;
        parent[ni] = idx;
        open.emplace(cand + octile(n, to, res), ni);
      }
    });
  }
  if (!closed[t]) return std::nullopt;

  Path path;
  path.cost = g[t];
  for (std::size_t idx = t; idx != known.size(); idx = parent[idx]) path.cells.push_back(known.cell_of(idx));
  std::reverse(path.cells.begin(), path.cells.end());
  path.waypoints.reserve(path.cells.size());
  for (const Cell c : path.cells) path.waypoints.push_back(known.cell_center(c));
  return path;
}

CostField::CostField(const OccupancyGrid& known, const Traversability& trav, Cell from)
    : geometry_(&known), cost_(known.size(), kInf) {
  if (!known.contains(from)) return;
  using Entry = std::tuple<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  const std::size_t s = known.index(from);
  cost_[s] = 0.0;
  open.emplace(0.0, s);
  while (!open.empty()) {
    const auto [d, idx] = open.top();
    open.pop();
    if (d > cost_[idx]) continue;
    expand(known, trav, known.cell_of(idx), from, [&](Cell n, double step) {
      const std::size_t ni = known.index(n);
      if (d + step < cost_[ni]) {
        cost_[ni] = d + step;
        open.emplace(cost_[ni], ni);
      }
    });
  }
}

bool CostField::reachable(Vec2 p) const { return cost(p) < kInf; }

double CostField::cost(Vec2 p) const {
  const auto c = geometry_->world_to_cell(p);
  return c ? cost(*c) : kInf;
}

}  // namespace hphs
