#include "hphs/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace hphs {

WorldRect to_world(const OccupancyGrid& geometry, const CellRect& r) {
  const double res = geometry.resolution();
  const Vec2 o = geometry.origin();
  return {{o.x + r.x0 * res, o.y + r.y0 * res}, {o.x + r.x1 * res, o.y + r.y1 * res}};
}

CellRect compute_bounds(const OccupancyGrid& known) {
  CellRect r{known.width(), known.height(), 0, 0};
  bool any = false;
  for (int y = 0; y < known.height(); ++y) {
    for (int x = 0; x < known.width(); ++x) {
      if (known.at(Cell{x, y}) == CellState::Unknown) continue;
      any = true;
      r.x0 = std::min(r.x0, x);
      r.y0 = std::min(r.y0, y);
      r.x1 = std::max(r.x1, x + 1);
      r.y1 = std::max(r.y1, y + 1);
    }
  }
  if (!any) throw NoBoundsError();
  return r;
}

std::vector<int> SubregionGrid::filtered() const {
  std::vector<int> out;
  for (const Subregion& s : subregions) {
    if (!s.frontier_ids.empty()) out.push_back(s.index);
  }
  return out;
}

namespace {

int slot(const std::vector<int>& edges, int v) {
  // Last left edge <= v, over the n left edges.
  const auto first = edges.begin();
  const auto last = edges.end() - 1;
  const auto it = std::upper_bound(first, last, v);
  return std::max(0, static_cast<int>(it - first) - 1);
}

}  // namespace

int SubregionGrid::owner(Cell c) const { return slot(row_edges, c.y) * n_w + slot(col_edges, c.x); }

std::vector<Vec2> SubregionGrid::centers(std::span<const int> order) const {
  std::vector<Vec2> out;
  out.reserve(order.size());
  for (const int i : order) out.push_back(center(i));
  return out;
}

SubregionGrid segment(const OccupancyGrid& geometry, const CellRect& bounds, int n_w, int n_h,
                      std::span<const FrontierPoint> frontiers) {
  if (n_w < 1 || n_h < 1) throw std::invalid_argument("subregion split counts must be >= 1");
  SubregionGrid grid;
  grid.bounds = bounds;
  grid.n_w = n_w;
  grid.n_h = n_h;
  for (int j = 0; j <= n_w; ++j) grid.col_edges.push_back(bounds.x0 + (j * bounds.width()) / n_w);
  for (int i = 0; i <= n_h; ++i) grid.row_edges.push_back(bounds.y0 + (i * bounds.height()) / n_h);

  grid.subregions.reserve(static_cast<std::size_t>(n_w * n_h));
  for (int i = 0; i < n_h; ++i) {
    for (int j = 0; j < n_w; ++j) {
      Subregion s;
      s.index = i * n_w + j;
      s.cells = {grid.col_edges[static_cast<std::size_t>(j)], grid.row_edges[static_cast<std::size_t>(i)],
                 grid.col_edges[static_cast<std::size_t>(j + 1)], grid.row_edges[static_cast<std::size_t>(i + 1)]};
      s.rect = to_world(geometry, s.cells);
      s.center = s.rect.center();
      grid.subregions.push_back(std::move(s));
    }
  }
  for (const FrontierPoint& f : frontiers) {
    const int owner = grid.owner(geometry.locate(f.position));
    grid.subregions[static_cast<std::size_t>(owner)].frontier_ids.push_back(f.id);
  }
  return grid;
}

double dtw_distance(std::span<const Vec2> a, std::span<const Vec2> b) {
  if (a.empty() || b.empty()) return 0.0;
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> prev(b.size(), inf);
  std::vector<double> cur(b.size(), inf);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double cost = distance(a[i], b[j]);
      double best;
      if (i == 0 && j == 0) {
        best = 0.0;
      } else {
        best = inf;
        if (i > 0) best = std::min(best, prev[j]);
        if (j > 0) best = std::min(best, cur[j - 1]);
        if (i > 0 && j > 0) best = std::min(best, prev[j - 1]);
      }
      cur[j] = cost + best;
    }
    std::swap(prev, cur);
  }
  return prev.back();
}

void SequenceWeights::validate() const {
  if (lambda1 < 0.0 || lambda2 < 0.0 || lambda3 < 0.0) throw std::invalid_argument("sequence weights must be >= 0");
}

double sequence_revenue(std::span<const Vec2> centers, Vec2 robot, std::span<const Vec2> previous,
                        const SequenceWeights& weights) {
  double cumulative = 0.0;
  double sum = 0.0;
  Vec2 last = robot;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    const double leg = distance(last, centers[i]);
    cumulative = i == 0 ? weights.lambda3 * leg : cumulative + leg;
    sum += std::exp(-weights.lambda1 * cumulative);
    last = centers[i];
  }
  if (previous.empty()) return sum;
  return std::exp(-weights.lambda2 * dtw_distance(centers, previous)) * sum;
}

double sequence_revenue(const SubregionGrid& grid, std::span<const int> order, Vec2 robot,
                        std::span<const Vec2> previous, const SequenceWeights& weights) {
  const auto centers = grid.centers(order);
  return sequence_revenue(centers, robot, previous, weights);
}

namespace {

// Depth-first enumeration of all orders in lexicographic order. Partial sums
// and DTW rows are carried down the tree and evaluated in exactly the order
// sequence_revenue uses, so leaf values match it bit for bit.
class ExhaustiveSearch {
 public:
  ExhaustiveSearch(std::span<const Vec2> centers, Vec2 robot, std::span<const Vec2> previous,
                   const SequenceWeights& weights)
      : centers_(centers), robot_(robot), previous_(previous), weights_(weights), used_(centers.size(), false),
        rows_((centers.size() + 1) * std::max<std::size_t>(previous.size(), 1), 0.0) {}

  std::vector<int> run() {
    current_.clear();
    descend(robot_, 0.0, 0.0);
    return best_;
  }

 private:
  double* row(std::size_t depth) { return rows_.data() + depth * std::max<std::size_t>(previous_.size(), 1); }

  void descend(Vec2 last, double cumulative, double sum) {
    const std::size_t depth = current_.size();
    if (depth == centers_.size()) {
      const double revenue =
          previous_.empty() ? sum : std::exp(-weights_.lambda2 * row(depth)[previous_.size() - 1]) * sum;
      if (best_.empty() || revenue > best_revenue_) {
        best_revenue_ = revenue;
        best_ = current_;
      }
      return;
    }
    for (std::size_t k = 0; k < centers_.size(); ++k) {
      if (used_[k]) continue;
      const Vec2 c = centers_[k];
      const double leg = distance(last, c);
      const double cum = depth == 0 ? weights_.lambda3 * leg : cumulative + leg;
      const double s = sum + std::exp(-weights_.lambda1 * cum);
      if (!previous_.empty()) fill_row(depth, c);
      used_[k] = true;
      current_.push_back(static_cast<int>(k));
      descend(c, cum, s);
      current_.pop_back();
      used_[k] = false;
    }
  }

  // DTW row for the element placed at `depth`, stored at row(depth + 1).
  void fill_row(std::size_t depth, Vec2 c) {
    const double* up = row(depth);
    double* out = row(depth + 1);
    constexpr double inf = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < previous_.size(); ++j) {
      const double cost = distance(c, previous_[j]);
      double best;
      if (depth == 0 && j == 0) {
        best = 0.0;
      } else {
        best = inf;
        if (depth > 0) best = std::min(best, up[j]);
        if (j > 0) best = std::min(best, out[j - 1]);
        if (depth > 0 && j > 0) best = std::min(best, up[j - 1]);
      }
      out[j] = cost + best;
    }
  }

  std::span<const Vec2> centers_;
  Vec2 robot_;
  std::span<const Vec2> previous_;
  const SequenceWeights& weights_;
  std::vector<bool> used_;
  std::vector<double> rows_;
  std::vector<int> current_;
  std::vector<int> best_;
  double best_revenue_ = -std::numeric_limits<double>::infinity();
};

class LocalSearch {
 public:
  LocalSearch(std::span<const Vec2> centers, Vec2 robot, std::span<const Vec2> previous,
              const SequenceWeights& weights)
      : centers_(centers), robot_(robot), previous_(previous), weights_(weights) {}

  // Local search from a few starts; the first best one wins.
  std::vector<int> run() {
    std::vector<int> winner;
    double winner_rev = -std::numeric_limits<double>::infinity();
    for (std::vector<int> order : {nearest_insertion(), nearest_chain(), follow_previous()}) {
      double best = evaluate(order);
      bool improved = true;
      while (improved) {
        improved = two_opt(order, best) || relocate(order, best);
      }
      if (best > winner_rev) {
        winner_rev = best;
        winner = std::move(order);
      }
    }
    return winner;
  }

 private:
  double evaluate(const std::vector<int>& order) {
    scratch_.clear();
    for (const int k : order) scratch_.push_back(centers_[static_cast<std::size_t>(k)]);
    return sequence_revenue(scratch_, robot_, previous_, weights_);
  }

  std::vector<int> nearest_insertion() {
    const std::size_t n = centers_.size();
    std::vector<int> order;
    std::vector<bool> used(n, false);
    for (std::size_t placed = 0; placed < n; ++placed) {
      std::size_t pick = n;
      double pick_d = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < n; ++k) {
        if (used[k]) continue;
        double d = distance(robot_, centers_[k]);
        for (const int o : order) d = std::min(d, distance(centers_[static_cast<std::size_t>(o)], centers_[k]));
        if (d < pick_d) {
          pick_d = d;
          pick = k;
        }
      }
      used[pick] = true;
      std::vector<int> best_order;
      double best_rev = -std::numeric_limits<double>::infinity();
      for (std::size_t pos = 0; pos <= order.size(); ++pos) {
        std::vector<int> trial = order;
        trial.insert(trial.begin() + static_cast<std::ptrdiff_t>(pos), static_cast<int>(pick));
        const double rev = evaluate(trial);
        if (rev > best_rev) {
          best_rev = rev;
          best_order = std::move(trial);
        }
      }
      order = std::move(best_order);
    }
    return order;
  }

  std::vector<int> nearest_chain() const {
    const std::size_t n = centers_.size();
    std::vector<int> order;
    std::vector<bool> used(n, false);
    Vec2 at = robot_;
    for (std::size_t placed = 0; placed < n; ++placed) {
      std::size_t pick = n;
      for (std::size_t k = 0; k < n; ++k) {
        if (!used[k] && (pick == n || distance(at, centers_[k]) < distance(at, centers_[pick]))) pick = k;
      }
      used[pick] = true;
      order.push_back(static_cast<int>(pick));
      at = centers_[pick];
    }
    return order;
  }

  // Last cycle's sequence mapped onto the nearest unused centers, leftovers
  // appended by index.
  std::vector<int> follow_previous() const {
    const std::size_t n = centers_.size();
    std::vector<int> order;
    std::vector<bool> used(n, false);
    for (const Vec2& p : previous_) {
      std::size_t pick = n;
      for (std::size_t k = 0; k < n; ++k) {
        if (!used[k] && (pick == n || distance(p, centers_[k]) < distance(p, centers_[pick]))) pick = k;
      }
      if (pick == n) break;
      used[pick] = true;
      order.push_back(static_cast<int>(pick));
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (!used[k]) order.push_back(static_cast<int>(k));
    }
    return order;
  }

  bool two_opt(std::vector<int>& order, double& best) {
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
      for (std::size_t j = i + 1; j < order.size(); ++j) {
        std::reverse(order.begin() + static_cast<std::ptrdiff_t>(i), order.begin() + static_cast<std::ptrdiff_t>(j + 1));
        const double rev = evaluate(order);
        if (rev > best) {
          best = rev;
          return true;
        }
        std::reverse(order.begin() + static_cast<std::ptrdiff_t>(i), order.begin() + static_cast<std::ptrdiff_t>(j + 1));
      }
    }
    return false;
  }

  bool relocate(std::vector<int>& order, double& best) {
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (std::size_t j = 0; j < order.size(); ++j) {
        if (i == j) continue;
        std::vector<int> trial = order;
        const int v = trial[i];
        trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
        trial.insert(trial.begin() + static_cast<std::ptrdiff_t>(j), v);
        const double rev = evaluate(trial);
        if (rev > best) {
          best = rev;
          order = std::move(trial);
          return true;
        }
      }
    }
    return false;
  }

  std::span<const Vec2> centers_;
  Vec2 robot_;
  std::span<const Vec2> previous_;
  const SequenceWeights& weights_;
  std::vector<Vec2> scratch_;
};

}  // namespace

std::vector<int> optimize_order(std::span<const Vec2> centers, Vec2 robot, std::span<const Vec2> previous,
                                const SequenceWeights& weights, const SequenceOptions& options) {
  if (centers.empty()) return {};
  if (!options.force_heuristic && centers.size() <= options.exhaustive_limit) {
    return ExhaustiveSearch(centers, robot, previous, weights).run();
  }
  return LocalSearch(centers, robot, previous, weights).run();
}

SequencePlan optimize_sequence(const SubregionGrid& grid, std::span<const int> candidates, Vec2 robot,
                               std::span<const int> previous_order, const SequenceWeights& weights,
                               const SequenceOptions& options) {
  std::vector<int> sorted(candidates.begin(), candidates.end());
  std::sort(sorted.begin(), sorted.end());
  const auto centers = grid.centers(sorted);
  const auto previous = grid.centers(previous_order);
  const auto positions = optimize_order(centers, robot, previous, weights, options);

  SequencePlan plan;
  plan.previous_order.assign(previous_order.begin(), previous_order.end());
  for (const int p : positions) plan.order.push_back(sorted[static_cast<std::size_t>(p)]);
  plan.revenue = sequence_revenue(grid, plan.order, robot, previous, weights);
  return plan;
}

std::vector<int> remap_previous_order(std::span<const Vec2> previous_centers, const SubregionGrid& grid) {
  std::vector<int> out;
  out.reserve(previous_centers.size());
  for (const Vec2 p : previous_centers) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (const Subregion& s : grid.subregions) {
      const double d = distance(p, s.center);
      if (d < best_d) {
        best_d = d;
        best = s.index;
      }
    }
    out.push_back(best);
  }
  return out;
}

int current_subregion(const SequencePlan& plan) {
  if (plan.order.empty()) throw std::invalid_argument("empty sequence plan");
  return plan.order.front();
}

}  // namespace hphs
