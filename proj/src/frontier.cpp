#include "hphs/frontier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hphs {

namespace {

constexpr double kOpenRangeFraction = 0.8;

template <class F>
void for_cells_in_disk(const OccupancyGrid& grid, Vec2 center, double radius, F&& f) {
  const double res = grid.resolution();
  const Cell lo = grid.locate({center.x - radius, center.y - radius});
  const Cell hi = grid.locate({center.x + radius, center.y + radius});
  for (int y = std::max(0, lo.y); y <= std::min(grid.height() - 1, hi.y); ++y) {
    for (int x = std::max(0, lo.x); x <= std::min(grid.width() - 1, hi.x); ++x) {
      const Cell c{x, y};
      if (distance(grid.cell_center(c), center) <= radius + 1e-12 * res) {
        if (!f(c)) return;
      }
    }
  }
}

Vec2 polar_point(const Pose& pose, double theta, double range) {
  return {pose.x + range * std::cos(theta), pose.y + range * std::sin(theta)};
}

}  // namespace

bool occupied_within(const OccupancyGrid& known, Vec2 p, double radius) {
  bool found = false;
  for_cells_in_disk(known, p, radius, [&](Cell c) {
    found = known.at(c) == CellState::Occupied;
    return !found;
  });
  return found;
}

void SamplerConfig::validate(double angular_spacing) const {
  if (!(r_gap > 0.0) || !(theta_inf > 0.0) || !(d_s > 0.0) || !(clearance_radius > 0.0) || !(dedup_radius > 0.0)) {
    throw std::invalid_argument("sampler parameters must be strictly positive");
  }
  if (!(theta_inf > angular_spacing)) {
    throw std::invalid_argument("sampler theta_inf must exceed the scan angular spacing");
  }
}

std::vector<FrontierPoint> detect_scan_frontiers(const PolarScan& scan, const Pose& pose, const SamplerConfig& config,
                                                 int step, ScanSamplingStats* stats) {
  std::vector<FrontierPoint> out;
  ScanSamplingStats local;
  const double open_range = kOpenRangeFraction * scan.max_range;
  const auto& rs = scan.returns;

  if (rs.empty()) {
    // Nothing returned at all: the whole circle is one angular gap.
    for (int k = 0; k * config.theta_inf < kTwoPi; ++k) {
      out.push_back({-1, polar_point(pose, k * config.theta_inf, open_range), FrontierSource::Scan, step});
      ++local.synthesized;
    }
  } else {
    const std::size_t n = rs.size();
    for (std::size_t i = 0; i < n; ++i) {
      const ScanReturn& a = rs[i];
      const ScanReturn& b = rs[(i + 1) % n];
      const double dtheta = i + 1 < n ? b.theta - a.theta : b.theta + kTwoPi - a.theta;
      ++local.pair_evaluations;
      const bool range_jump = std::abs(b.range - a.range) >= config.r_gap;
      const bool angular_gap = dtheta >= config.theta_inf;
      if (!range_jump && !angular_gap) continue;
      const double theta = wrap_two_pi(a.theta + 0.5 * dtheta);
      const double range = range_jump ? std::min(a.range, b.range) + 0.5 * config.r_gap
                                      : std::min(0.5 * (a.range + b.range), open_range);
      out.push_back({-1, polar_point(pose, theta, range), FrontierSource::Scan, step});
    }
  }
  if (stats) *stats = local;
  return out;
}

std::vector<FrontierPoint> detect_local_frontiers(const OccupancyGrid& known, const Pose& pose, double d_s, int step,
                                                  double clearance) {
  // 0 = not a frontier cell, 1 = unvisited frontier cell, 2 = clustered
  std::vector<std::uint8_t> mark(known.size(), 0);
  std::vector<std::size_t> seeds;
  const Vec2 center = pose.position();
  for_cells_in_disk(known, center, d_s, [&](Cell c) {
    if (known.at(c) != CellState::Free) return true;
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        const Cell n{c.x + dx, c.y + dy};
        if ((dx || dy) && known.contains(n) && known.at(n) == CellState::Unknown) {
          mark[known.index(c)] = 1;
          seeds.push_back(known.index(c));
          return true;
        }
      }
    }
    return true;
  });
  std::sort(seeds.begin(), seeds.end());

  std::vector<FrontierPoint> out;
  std::vector<std::size_t> cluster;
  for (const std::size_t seed : seeds) {
    if (mark[seed] != 1) continue;
    cluster.clear();
    cluster.push_back(seed);
    mark[seed] = 2;
    for (std::size_t head = 0; head < cluster.size(); ++head) {
      const Cell c = known.cell_of(cluster[head]);
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const Cell n{c.x + dx, c.y + dy};
          if (!known.contains(n)) continue;
          const std::size_t ni = known.index(n);
          if (mark[ni] == 1) {
            mark[ni] = 2;
            cluster.push_back(ni);
          }
        }
      }
    }
    if (cluster.size() < kMinLocalClusterSize) continue;

    double sx = 0.0;
    double sy = 0.0;
    for (const std::size_t idx : cluster) {
      const Cell c = known.cell_of(idx);
      sx += c.x;
      sy += c.y;
    }
    const double cx = sx / static_cast<double>(cluster.size());
    const double cy = sy / static_cast<double>(cluster.size());
    std::size_t best = cluster.front();
    double best_d = std::numeric_limits<double>::infinity();
    bool best_clear = false;
    for (const std::size_t idx : cluster) {
      const Cell c = known.cell_of(idx);
      const bool clear = clearance > 0.0 && !occupied_within(known, known.cell_center(c), clearance);
      const double d = (c.x - cx) * (c.x - cx) + (c.y - cy) * (c.y - cy);
      if (clear != best_clear) {
        if (!clear) continue;
      } else if (!(d < best_d || (d == best_d && idx < best))) {
        continue;
      }
      best_clear = clear;
      best_d = d;
      best = idx;
    }
    out.push_back({-1, known.cell_center(known.cell_of(best)), FrontierSource::LocalMap, step});
  }
  return out;
}

bool FrontierSet::contains(int id) const { return find(id) != nullptr; }

const FrontierPoint* FrontierSet::find(int id) const {
  for (const auto& p : points_) {
    if (p.id == id) return &p;
  }
  return nullptr;
}

const FrontierPoint& FrontierSet::add(FrontierPoint p) {
  p.id = next_id_++;
  points_.push_back(p);
  return points_.back();
}

bool FrontierSet::remove(int id) {
  return remove_if([id](const FrontierPoint& p) { return p.id == id; }) > 0;
}

bool line_of_sight(const OccupancyGrid& known, Vec2 a, Vec2 b) {
  const Vec2 d = b - a;
  const double len = d.norm();
  bool clear = true;
  traverse_ray(known, a, std::atan2(d.y, d.x), len, [&](const RayStep& s) {
    for (int i = 0; i < s.count; ++i) {
      if (known.at(s.cells[static_cast<std::size_t>(i)]) == CellState::Occupied) {
        clear = false;
        return false;
      }
    }
    return true;
  });
  return clear;
}

bool unknown_within(const OccupancyGrid& known, Vec2 p, double radius) {
  const auto start = known.world_to_cell(p);
  if (!start) return false;
  if (known.at(*start) == CellState::Unknown) return true;
  if (known.at(*start) == CellState::Occupied) return false;

  // 4-connected flood over non-Occupied cells whose centers lie in the disk.
  const int span = static_cast<int>(std::ceil(radius / known.resolution())) + 1;
  const int side = 2 * span + 1;
  std::vector<bool> seen(static_cast<std::size_t>(side) * static_cast<std::size_t>(side), false);
  auto slot = [&](Cell c) {
    return static_cast<std::size_t>(c.y - start->y + span) * static_cast<std::size_t>(side) +
           static_cast<std::size_t>(c.x - start->x + span);
  };
  std::vector<Cell> stack{*start};
  seen[slot(*start)] = true;
  while (!stack.empty()) {
    const Cell c = stack.back();
    stack.pop_back();
    for (const Cell d : {Cell{1, 0}, Cell{-1, 0}, Cell{0, 1}, Cell{0, -1}}) {
      const Cell n{c.x + d.x, c.y + d.y};
      if (std::abs(n.x - start->x) > span || std::abs(n.y - start->y) > span) continue;
      if (!known.contains(n) || seen[slot(n)]) continue;
      seen[slot(n)] = true;
      if (distance(known.cell_center(n), p) > radius) continue;
      const CellState s = known.at(n);
      if (s == CellState::Unknown) return true;
      if (s == CellState::Free) stack.push_back(n);
    }
  }
  return false;
}

namespace {

bool mapped_through(const OccupancyGrid& known, const FrontierPoint& f, double radius) {
  const auto cell = known.world_to_cell(f.position);
  return cell && known.at(*cell) == CellState::Free && !unknown_within(known, f.position, radius);
}

}  // namespace

std::vector<FrontierPoint> filter_frontiers(std::span<const FrontierPoint> candidates, const OccupancyGrid& known,
                                            FrontierSet& active, const SamplerConfig& config) {
  std::vector<FrontierPoint> accepted;
  for (const FrontierPoint& cand : candidates) {
    const auto cell = known.world_to_cell(cand.position);
    if (!cell || known.at(*cell) == CellState::Occupied) continue;
    if (occupied_within(known, cand.position, config.clearance_radius)) continue;

    bool seen = false;
    for (const FrontierPoint& other : active.points()) {
      if (distance(other.position, cand.position) <= config.dedup_radius &&
          line_of_sight(known, cand.position, other.position)) {
        seen = true;
        break;
      }
    }
    if (seen) continue;
    if (mapped_through(known, cand, config.dedup_radius)) continue;
    accepted.push_back(active.add(cand));
  }
  return accepted;
}

std::size_t prune_visited(FrontierSet& active, const OccupancyGrid& known, const SamplerConfig& config) {
  return active.remove_if([&](const FrontierPoint& f) { return mapped_through(known, f, config.dedup_radius); });
}

std::size_t prune_frontiers(FrontierSet& active, const OccupancyGrid& known, const CostField& reach,
                            const SamplerConfig& config) {
  return active.remove_if([&](const FrontierPoint& f) {
    return mapped_through(known, f, config.dedup_radius) || !reach.reachable(f.position);
  });
}

}  // namespace hphs
