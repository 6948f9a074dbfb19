#pragma once

// Grid builders and brute-force reference implementations shared by the unit
// tests and the acceptance binary. Every oracle here is written without
// calling into the code it checks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "hphs/frontier.hpp"
#include "hphs/grid.hpp"
#include "hphs/lidar.hpp"

namespace testing {

using hphs::Cell;
using hphs::CellState;
using hphs::OccupancyGrid;
using hphs::Vec2;

// '#' Occupied, '.' Free, '?' Unknown. Row i of the picture is y = i.
inline OccupancyGrid grid_from(const std::vector<std::string>& rows, double res = 0.1) {
  OccupancyGrid g(static_cast<int>(rows.front().size()), static_cast<int>(rows.size()), res);
  for (int y = 0; y < g.height(); ++y) {
    for (int x = 0; x < g.width(); ++x) {
      const char ch = rows[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)];
      g.set(Cell{x, y}, ch == '#' ? CellState::Occupied : ch == '.' ? CellState::Free : CellState::Unknown);
    }
  }
  return g;
}

inline OccupancyGrid walled_room(int w, int h, double res = 0.1) {
  OccupancyGrid g(w, h, res, {}, CellState::Free);
  for (int x = 0; x < w; ++x) {
    g.set(Cell{x, 0}, CellState::Occupied);
    g.set(Cell{x, h - 1}, CellState::Occupied);
  }
  for (int y = 0; y < h; ++y) {
    g.set(Cell{0, y}, CellState::Occupied);
    g.set(Cell{w - 1, y}, CellState::Occupied);
  }
  return g;
}

// Random three-state grid; `p_unknown` and `p_occ` are per-cell odds.
inline OccupancyGrid random_grid(std::mt19937_64& rng, int w, int h, double p_unknown, double p_occ,
                                 double res = 0.1) {
  OccupancyGrid g(w, h, res, {}, CellState::Free);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double r = u(rng);
    g.set(i, r < p_unknown ? CellState::Unknown : r < p_unknown + p_occ ? CellState::Occupied : CellState::Free);
  }
  return g;
}

// ---------------------------------------------------------------------------
// Scan frontier oracle: direct pairwise evaluation over the cyclic sequence.

struct PolarPoint {
  double theta;
  double range;
};

inline std::vector<PolarPoint> scan_frontier_oracle(const hphs::PolarScan& scan, const hphs::SamplerConfig& cfg) {
  std::vector<PolarPoint> out;
  const double two_pi = 2.0 * std::acos(-1.0);
  const double cap = 0.8 * scan.max_range;
  const auto& r = scan.returns;
  if (r.empty()) {
    for (double a = 0.0; a < two_pi; a += cfg.theta_inf) out.push_back({a, cap});
    return out;
  }
  for (std::size_t i = 0; i < r.size(); ++i) {
    const bool last = i + 1 == r.size();
    const auto& lo = r[i];
    const auto& hi = r[last ? 0 : i + 1];
    const double gap = last ? (hi.theta + two_pi) - lo.theta : hi.theta - lo.theta;
    const bool jump = std::fabs(hi.range - lo.range) >= cfg.r_gap;
    const bool open = gap >= cfg.theta_inf;
    if (!jump && !open) continue;
    double theta = lo.theta + gap / 2.0;
    if (theta >= two_pi) theta -= two_pi;
    const double range = jump ? std::min(lo.range, hi.range) + cfg.r_gap / 2.0
                              : std::min((lo.range + hi.range) / 2.0, cap);
    out.push_back({theta, range});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Local frontier oracle: union-find over frontier cells in the d_s disk.

inline std::vector<Cell> local_frontier_oracle(const OccupancyGrid& g, Vec2 pose, double d_s) {
  const int w = g.width();
  const int h = g.height();
  auto in_disk = [&](int x, int y) {
    const double cx = g.origin().x + (x + 0.5) * g.resolution();
    const double cy = g.origin().y + (y + 0.5) * g.resolution();
    return std::hypot(cx - pose.x, cy - pose.y) <= d_s + 1e-12 * g.resolution();
  };
  auto state = [&](int x, int y) { return g.cells()[static_cast<std::size_t>(y * w + x)]; };
  std::vector<char> is_frontier(static_cast<std::size_t>(w * h), 0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (state(x, y) != CellState::Free || !in_disk(x, y)) continue;
      bool touches = false;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const int nx = x + dx;
          const int ny = y + dy;
          if ((dx || dy) && nx >= 0 && ny >= 0 && nx < w && ny < h && state(nx, ny) == CellState::Unknown) {
            touches = true;
          }
        }
      }
      is_frontier[static_cast<std::size_t>(y * w + x)] = touches;
    }
  }
  std::vector<int> parent(static_cast<std::size_t>(w * h));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[static_cast<std::size_t>(a)] != a) {
      parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
      a = parent[static_cast<std::size_t>(a)];
    }
    return a;
  };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!is_frontier[static_cast<std::size_t>(y * w + x)]) continue;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const int nx = x + dx;
          const int ny = y + dy;
          if (nx < 0 || ny < 0 || nx >= w || ny >= h || !is_frontier[static_cast<std::size_t>(ny * w + nx)]) continue;
          const int a = find(y * w + x);
          const int b = find(ny * w + nx);
          if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
        }
      }
    }
  }
  std::map<int, std::vector<int>> clusters;
  for (int i = 0; i < w * h; ++i) {
    if (is_frontier[static_cast<std::size_t>(i)]) clusters[find(i)].push_back(i);
  }
  std::vector<Cell> out;
  for (const auto& [root, members] : clusters) {
    if (members.size() < 3) continue;
    double sx = 0;
    double sy = 0;
    for (const int m : members) {
      sx += m % w;
      sy += m / w;
    }
    const double cx = sx / static_cast<double>(members.size());
    const double cy = sy / static_cast<double>(members.size());
    int best = -1;
    double best_d = 0;
    for (const int m : members) {  // ascending index, so strict < keeps the smallest on ties
      const double d = (m % w - cx) * (m % w - cx) + (m / w - cy) * (m / w - cy);
      if (best < 0 || d < best_d) {
        best = m;
        best_d = d;
      }
    }
    out.push_back(Cell{best % w, best / w});
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// DTW oracle: memoized recursion over the full alignment lattice.

inline double dtw_oracle(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
  if (a.empty() || b.empty()) return 0.0;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> memo(a.size(), std::vector<double>(b.size(), -1.0));
  auto rec = [&](auto&& self, std::size_t i, std::size_t j) -> double {
    if (memo[i][j] >= 0.0) return memo[i][j];
    const double here = std::hypot(a[i].x - b[j].x, a[i].y - b[j].y);
    double best = inf;
    if (i == 0 && j == 0) best = 0.0;
    if (i > 0) best = std::min(best, self(self, i - 1, j));
    if (j > 0) best = std::min(best, self(self, i, j - 1));
    if (i > 0 && j > 0) best = std::min(best, self(self, i - 1, j - 1));
    return memo[i][j] = here + best;
  };
  return rec(rec, a.size() - 1, b.size() - 1);
}

// ---------------------------------------------------------------------------
// Revenue oracle and exhaustive permutation search.

inline double revenue_oracle(const std::vector<Vec2>& centers, Vec2 robot, const std::vector<Vec2>& previous,
                             double l1, double l2, double l3) {
  double sum = 0.0;
  double d = 0.0;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    const Vec2 from = i == 0 ? robot : centers[i - 1];
    const double leg = std::hypot(centers[i].x - from.x, centers[i].y - from.y);
    d += i == 0 ? l3 * leg : leg;
    sum += std::exp(-l1 * d);
  }
  const double factor = previous.empty() ? 1.0 : std::exp(-l2 * dtw_oracle(centers, previous));
  return factor * sum;
}

struct BruteBest {
  std::vector<int> order;
  double revenue;
};

inline BruteBest brute_force_order(const std::vector<Vec2>& centers, Vec2 robot, const std::vector<Vec2>& previous,
                                   double l1, double l2, double l3) {
  std::vector<int> perm(centers.size());
  std::iota(perm.begin(), perm.end(), 0);
  BruteBest best{perm, -1.0};
  do {
    std::vector<Vec2> seq;
    for (const int i : perm) seq.push_back(centers[static_cast<std::size_t>(i)]);
    const double r = revenue_oracle(seq, robot, previous, l1, l2, l3);
    if (r > best.revenue) best = {perm, r};
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// ---------------------------------------------------------------------------
// Plain O(n^2) Dijkstra with the planner's move model, recomputing clearance
// by brute force.

inline double dijkstra_oracle(const OccupancyGrid& g, Cell from, Cell to, int clearance) {
  const int w = g.width();
  const int h = g.height();
  const double res = g.resolution();
  auto state = [&](int x, int y) { return g.cells()[static_cast<std::size_t>(y * w + x)]; };
  auto clear = [&](int x, int y) {
    if (x < 0 || y < 0 || x >= w || y >= h) return false;
    if (x == from.x && y == from.y) return true;
    for (int yy = y - clearance; yy <= y + clearance; ++yy) {
      for (int xx = x - clearance; xx <= x + clearance; ++xx) {
        if (xx >= 0 && yy >= 0 && xx < w && yy < h && state(xx, yy) == CellState::Occupied) return false;
      }
    }
    return true;
  };
  if (from == to) return 0.0;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(static_cast<std::size_t>(w * h), inf);
  std::vector<char> done(static_cast<std::size_t>(w * h), 0);
  dist[static_cast<std::size_t>(from.y * w + from.x)] = 0.0;
  for (;;) {
    int u = -1;
    for (int i = 0; i < w * h; ++i) {
      if (!done[static_cast<std::size_t>(i)] && dist[static_cast<std::size_t>(i)] < inf &&
          (u < 0 || dist[static_cast<std::size_t>(i)] < dist[static_cast<std::size_t>(u)])) {
        u = i;
      }
    }
    if (u < 0) break;
    done[static_cast<std::size_t>(u)] = 1;
    const int ux = u % w;
    const int uy = u / w;
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        if (!dx && !dy) continue;
        const int nx = ux + dx;
        const int ny = uy + dy;
        if (!clear(nx, ny)) continue;
        if (dx && dy && (!clear(ux + dx, uy) || !clear(ux, uy + dy))) continue;
        double step = (dx && dy) ? std::sqrt(2.0) * res : res;
        if (state(nx, ny) == CellState::Unknown) step *= 2.0;
        double& d = dist[static_cast<std::size_t>(ny * w + nx)];
        d = std::min(d, dist[static_cast<std::size_t>(u)] + step);
      }
    }
  }
  if (!clear(to.x, to.y)) return inf;
  return dist[static_cast<std::size_t>(to.y * w + to.x)];
}

// ---------------------------------------------------------------------------
// Random scans for the sampler oracle: sorted beams on a regular lattice,
// random dropouts, ranges with occasional jumps.

inline hphs::PolarScan random_scan(std::mt19937_64& rng, int beams, double max_range) {
  hphs::PolarScan scan;
  scan.beams = beams;
  scan.max_range = max_range;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double keep = 0.3 + 0.7 * u(rng);
  double r = 0.2 + u(rng) * (max_range - 0.2);
  for (int k = 0; k < beams; ++k) {
    if (u(rng) < 0.15) r = 0.2 + u(rng) * (max_range - 0.2);
    r = std::clamp(r + (u(rng) - 0.5) * 0.2, 0.05, max_range);
    if (u(rng) < keep) scan.returns.push_back({2.0 * std::acos(-1.0) * k / beams, r});
  }
  return scan;
}

}  // namespace testing
