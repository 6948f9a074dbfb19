#include <cmath>
#include <random>

#include "doctest.h"
#include "hphs/hierarchy.hpp"
#include "hphs/lidar.hpp"
#include "support.hpp"

using namespace hphs;

TEST_CASE("compute_bounds") {
  SUBCASE("single Free cell") {
    OccupancyGrid g(20, 20, 0.1);
    g.set(Cell{5, 5}, CellState::Free);
    const CellRect r = compute_bounds(g);
    CHECK(r == CellRect{5, 5, 6, 6});
    const WorldRect w = to_world(g, r);
    CHECK(w.width() == doctest::Approx(0.1));
    CHECK(w.height() == doctest::Approx(0.1));
    CHECK(w.min.x == doctest::Approx(0.5));
  }
  SUBCASE("opposite corners") {
    OccupancyGrid g(100, 100, 0.1);
    g.set(Cell{0, 0}, CellState::Free);
    g.set(Cell{99, 99}, CellState::Occupied);
    CHECK(compute_bounds(g) == CellRect{0, 0, 100, 100});
  }
  SUBCASE("all Unknown") { CHECK_THROWS_AS(compute_bounds(OccupancyGrid(4, 4, 0.1)), NoBoundsError); }
  SUBCASE("one 10 m scan") {
    const OccupancyGrid truth = testing::walled_room(300, 300);
    OccupancyGrid known = truth.blank_copy();
    const Pose pose(15.05, 15.05);
    integrate_scan(known, simulate_scan(truth, pose, 360, 10.0), pose);
    const CellRect r = compute_bounds(known);
    // Oracle: scan every cell for the known extent.
    int x0 = 1 << 30, y0 = 1 << 30, x1 = -1, y1 = -1;
    for (int y = 0; y < known.height(); ++y) {
      for (int x = 0; x < known.width(); ++x) {
        if (known.at(Cell{x, y}) == CellState::Unknown) continue;
        x0 = std::min(x0, x);
        y0 = std::min(y0, y);
        x1 = std::max(x1, x + 1);
        y1 = std::max(y1, y + 1);
      }
    }
    CHECK(r == CellRect{x0, y0, x1, y1});
    CHECK(r.width() * 0.1 <= 20.0 + 2 * 0.1);
    CHECK(r.height() * 0.1 <= 20.0 + 2 * 0.1);
  }
}

TEST_CASE("segment: equal tiles, filtering and seams") {
  const OccupancyGrid g(400, 200, 0.1);
  const CellRect bounds{0, 0, 400, 200};
  SUBCASE("8 tiles of 10 m") {
    const SubregionGrid s = segment(g, bounds, 4, 2, {});
    REQUIRE(s.subregions.size() == 8);
    for (const Subregion& r : s.subregions) {
      CHECK(r.rect.width() == doctest::Approx(10.0));
      CHECK(r.rect.height() == doctest::Approx(10.0));
    }
    CHECK(s.filtered().empty());
  }
  SUBCASE("three frontiers in one tile") {
    const std::vector<FrontierPoint> f{{0, {1.0, 1.0}}, {1, {2.0, 3.0}}, {2, {9.0, 9.0}}};
    const SubregionGrid s = segment(g, bounds, 4, 2, f);
    CHECK(s.filtered() == std::vector<int>{0});
    CHECK(s.subregions[0].frontier_ids.size() == 3);
  }
  SUBCASE("a point on the seam goes to the higher index") {
    const std::vector<FrontierPoint> f{{0, {10.0, 5.0}}, {1, {5.0, 10.0}}};
    const SubregionGrid s = segment(g, bounds, 4, 2, f);
    CHECK(s.subregions[1].frontier_ids == std::vector<int>{0});
    CHECK(s.subregions[4].frontier_ids == std::vector<int>{1});
  }
  SUBCASE("bad split counts") { CHECK_THROWS_AS(segment(g, bounds, 0, 2, {}), std::invalid_argument); }
}

TEST_CASE("segment tiles uneven bounds exactly") {
  const OccupancyGrid g(100, 100, 0.1);
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<int> lo(0, 60);
    std::uniform_int_distribution<int> span(1, 39);
    std::uniform_int_distribution<int> n(1, 7);
    const int x0 = lo(rng);
    const int y0 = lo(rng);
    const CellRect b{x0, y0, x0 + span(rng), y0 + span(rng)};
    const SubregionGrid s = segment(g, b, n(rng), n(rng), {});
    std::vector<int> hits(static_cast<std::size_t>(b.width() * b.height()), 0);
    for (const Subregion& r : s.subregions) {
      CHECK(b.contains(r.cells));
      for (int y = r.cells.y0; y < r.cells.y1; ++y) {
        for (int x = r.cells.x0; x < r.cells.x1; ++x) {
          ++hits[static_cast<std::size_t>((y - b.y0) * b.width() + (x - b.x0))];
          CHECK(s.owner(Cell{x, y}) == r.index);
        }
      }
    }
    for (const int h : hits) CHECK(h == 1);
  }
}

TEST_CASE("dtw_distance") {
  const std::vector<Vec2> line{{0, 0}, {1, 0}, {2, 0}};
  CHECK(dtw_distance(line, line) == 0.0);
  const std::vector<Vec2> a{{0, 0}};
  const std::vector<Vec2> b{{3, 4}};
  CHECK(dtw_distance(a, b) == doctest::Approx(5.0));
  // Hand-run 2x3 table: 1, 1+r2 / 1+r2, 2, 2+r2.
  const std::vector<Vec2> p{{0, 0}, {1, 0}};
  const std::vector<Vec2> q{{0, 1}, {1, 1}, {2, 1}};
  CHECK(dtw_distance(p, q) == doctest::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-12));
  CHECK(dtw_distance({}, q) == 0.0);
  CHECK(dtw_distance(q, {}) == 0.0);
}

TEST_CASE("dtw matches the recursive oracle and is symmetric") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> c(-20.0, 20.0);
  std::uniform_int_distribution<int> len(1, 10);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Vec2> a(static_cast<std::size_t>(len(rng)));
    std::vector<Vec2> b(static_cast<std::size_t>(len(rng)));
    for (auto& v : a) v = {c(rng), c(rng)};
    for (auto& v : b) v = {c(rng), c(rng)};
    const double d = dtw_distance(a, b);
    CHECK(std::abs(d - testing::dtw_oracle(a, b)) <= 1e-9);
    CHECK(std::abs(d - dtw_distance(b, a)) <= 1e-9);
    CHECK(d >= 0.0);
    CHECK(dtw_distance(a, a) == 0.0);
  }
}

TEST_CASE("sequence_revenue closed forms") {
  SequenceWeights w{0.1, 0.05, 2.0};
  const std::vector<Vec2> one{{3.0, 0.0}};
  CHECK(sequence_revenue(one, {0, 0}, {}, w) == doctest::Approx(std::exp(-0.6)).epsilon(1e-12));
  CHECK(sequence_revenue(one, {0, 0}, one, w) == doctest::Approx(std::exp(-0.6)).epsilon(1e-12));

  w = {0.5, 0.0, 1.0};
  const std::vector<Vec2> near_first{{1, 0}, {2, 0}};
  const std::vector<Vec2> far_first{{2, 0}, {1, 0}};
  const double near = sequence_revenue(near_first, {0, 0}, {}, w);
  const double far = sequence_revenue(far_first, {0, 0}, {}, w);
  CHECK(near == doctest::Approx(std::exp(-0.5) + std::exp(-1.0)));
  CHECK(far == doctest::Approx(std::exp(-1.0) + std::exp(-1.5)));
  CHECK(near > far);
}

TEST_CASE("revenue hysteresis favours the order closer to the previous one") {
  const SequenceWeights w{0.2, 0.3, 1.0};
  // Mirror-image centers: both orders have the same distance sums.
  const std::vector<Vec2> ab{{0, 1}, {0, -1}};
  const std::vector<Vec2> ba{{0, -1}, {0, 1}};
  CHECK(sequence_revenue(ab, {0, 0}, {}, w) == doctest::Approx(sequence_revenue(ba, {0, 0}, {}, w)));
  CHECK(sequence_revenue(ab, {0, 0}, ab, w) > sequence_revenue(ba, {0, 0}, ab, w));
}

TEST_CASE("optimize_order: spec cases") {
  const SequenceWeights w{0.15, 0.05, 2.0};
  const std::vector<Vec2> one{{4, 4}};
  CHECK(optimize_order(one, {0, 0}, {}, w) == std::vector<int>{0});
  const std::vector<Vec2> line{{1, 0}, {2, 0}, {3, 0}};
  CHECK(optimize_order(line, {0, 0}, {}, w) == std::vector<int>{0, 1, 2});
  const std::vector<Vec2> shuffled{{3, 0}, {1, 0}, {2, 0}};
  CHECK(optimize_order(shuffled, {0, 0}, {}, w) == std::vector<int>{1, 2, 0});
  CHECK(optimize_order({}, {0, 0}, {}, w).empty());
}

TEST_CASE("optimize_order ties resolve lexicographically") {
  const SequenceWeights w{0.1, 0.0, 1.0};
  const std::vector<Vec2> mirror{{0, 1}, {0, -1}};
  CHECK(optimize_order(mirror, {0, 0}, {}, w) == std::vector<int>{0, 1});
}

TEST_CASE("exhaustive optimize_order equals brute force") {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> c(0.0, 30.0);
  std::uniform_int_distribution<int> m(1, 7);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Vec2> centers(static_cast<std::size_t>(m(rng)));
    for (auto& v : centers) v = {c(rng), c(rng)};
    std::vector<Vec2> prev(static_cast<std::size_t>(m(rng)));
    for (auto& v : prev) v = {c(rng), c(rng)};
    if (trial % 3 == 0) prev.clear();
    const Vec2 robot{c(rng), c(rng)};
    const SequenceWeights w{0.15, 0.05, 2.0};
    const auto order = optimize_order(centers, robot, prev, w);
    const auto want = testing::brute_force_order(centers, robot, prev, 0.15, 0.05, 2.0);
    std::vector<Vec2> seq;
    for (const int i : order) seq.push_back(centers[static_cast<std::size_t>(i)]);
    CHECK(std::abs(sequence_revenue(seq, robot, prev, w) - want.revenue) <= 1e-12);
    CHECK(order == want.order);
  }
}

TEST_CASE("heuristic order is a permutation and close to the optimum") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> c(0.0, 30.0);
  SequenceOptions heuristic;
  heuristic.force_heuristic = true;
  const SequenceWeights w;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Vec2> centers(8);
    for (auto& v : centers) v = {c(rng), c(rng)};
    const auto h = optimize_order(centers, {15, 15}, {}, w, heuristic);
    std::vector<int> sorted = h;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7});
    std::vector<Vec2> seq;
    for (const int i : h) seq.push_back(centers[static_cast<std::size_t>(i)]);
    const double got = sequence_revenue(seq, {15, 15}, {}, w);
    const double best = testing::brute_force_order(centers, {15, 15}, {}, w.lambda1, w.lambda2, w.lambda3).revenue;
    CHECK(got <= best + 1e-12);
    CHECK(got >= 0.8 * best);
  }
  // Large instances take the heuristic path without a flag.
  std::vector<Vec2> many(20);
  for (auto& v : many) v = {c(rng), c(rng)};
  CHECK(optimize_order(many, {0, 0}, {}, w).size() == 20);
}

TEST_CASE("optimize_sequence maps positions back to subregion indices") {
  const OccupancyGrid g(40, 40, 1.0);
  const std::vector<FrontierPoint> f{{0, {35, 5}}, {1, {5, 5}}, {2, {5, 35}}};
  const SubregionGrid s = segment(g, {0, 0, 40, 40}, 2, 2, f);
  const std::vector<int> cand = s.filtered();
  CHECK(cand == std::vector<int>{0, 1, 2});
  const SequencePlan plan = optimize_sequence(s, cand, {1, 1}, {}, SequenceWeights{});
  CHECK(plan.order.front() == 0);
  CHECK(current_subregion(plan) == 0);
  CHECK(plan.revenue == doctest::Approx(sequence_revenue(s, plan.order, {1, 1}, {}, SequenceWeights{})));
}

TEST_CASE("current_subregion is the head of the order") {
  SequencePlan p;
  p.order = {2, 0, 1};
  CHECK(current_subregion(p) == 2);
  p.order = {5};
  CHECK(current_subregion(p) == 5);
}

TEST_CASE("remap_previous_order picks the nearest current center") {
  const OccupancyGrid g(40, 40, 1.0);
  const SubregionGrid s = segment(g, {0, 0, 40, 40}, 2, 2, {});
  const std::vector<Vec2> prev{{29, 31}, {9, 12}};
  CHECK(remap_previous_order(prev, s) == std::vector<int>{3, 0});
  CHECK(remap_previous_order({}, s).empty());
}

TEST_CASE("sequence weights validation") {
  CHECK_NOTHROW(SequenceWeights{}.validate());
  CHECK_THROWS_AS((SequenceWeights{-1.0, 0.0, 1.0}.validate()), std::invalid_argument);
}
