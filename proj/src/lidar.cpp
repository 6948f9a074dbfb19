#include "hphs/lidar.hpp"

#include <algorithm>
#include <string>

namespace hphs {

namespace {

double beam_angle(int k, int beams) { return kTwoPi * static_cast<double>(k) / static_cast<double>(beams); }

}  // namespace

PolarScan simulate_scan(const OccupancyGrid& truth, const Pose& pose, int beams, double max_range) {
  if (beams <= 0) throw std::invalid_argument("beam count must be positive");
  if (!(max_range > 0.0)) throw std::invalid_argument("max_range must be positive");
  const auto cell = truth.world_to_cell(pose.position());
  if (!cell) throw InvalidPoseError("pose lies outside the map");
  if (truth.at(*cell) != CellState::Free) {
    throw InvalidPoseError("pose lies in an occupied cell (" + std::to_string(cell->x) + ", " +
                           std::to_string(cell->y) + ")");
  }

  PolarScan scan;
  scan.max_range = max_range;
  scan.beams = beams;
  scan.returns.reserve(static_cast<std::size_t>(beams));
  for (int k = 0; k < beams; ++k) {
    const double theta = beam_angle(k, beams);
    double hit = -1.0;
    traverse_ray(truth, pose.position(), theta, max_range, [&](const RayStep& s) {
      for (int i = 0; i < s.count; ++i) {
        if (truth.at(s.cells[static_cast<std::size_t>(i)]) == CellState::Occupied) {
          hit = s.t;
          return false;
        }
      }
      return true;
    });
    if (hit > 0.0) scan.returns.push_back({theta, hit});
  }
  return scan;
}

std::vector<std::size_t> integrate_scan(OccupancyGrid& known, const PolarScan& scan, const Pose& pose) {
  std::vector<std::size_t> revealed;
  const double spacing = scan.angular_spacing();
  const double hit_eps = 1e-9 * known.resolution();

  // Returns indexed by beam number; no-return beams stay negative.
  std::vector<double> ranges(static_cast<std::size_t>(scan.beams), -1.0);
  for (const ScanReturn& r : scan.returns) {
    const long k = std::lround(r.theta / spacing);
    if (k >= 0 && k < scan.beams) ranges[static_cast<std::size_t>(k)] = r.range;
  }

  auto mark = [&](Cell c, CellState s) {
    const std::size_t idx = known.index(c);
    const CellState cur = known.at(idx);
    if (cur == CellState::Occupied || cur == s) return;
    if (cur == CellState::Unknown) revealed.push_back(idx);
    known.set(idx, s);
  };

  for (int k = 0; k < scan.beams; ++k) {
    const double range = ranges[static_cast<std::size_t>(k)];
    const double theta = beam_angle(k, scan.beams);
    if (range < 0.0) {
      // Cells entered right at max range are only grazed.
      traverse_ray(known, pose.position(), theta, scan.max_range, [&](const RayStep& s) {
        if (s.t >= scan.max_range - hit_eps) return false;
        for (int i = 0; i < s.count; ++i) mark(s.cells[static_cast<std::size_t>(i)], CellState::Free);
        return true;
      });
      continue;
    }
    traverse_ray(known, pose.position(), theta, range + hit_eps, [&](const RayStep& s) {
      if (s.t < range - hit_eps) {
        for (int i = 0; i < s.count; ++i) mark(s.cells[static_cast<std::size_t>(i)], CellState::Free);
        return true;
      }
      // A hit on a corner pair does not say which side cell blocked the beam.
      if (s.count == 1) mark(s.cells[0], CellState::Occupied);
      return false;
    });
  }
  return revealed;
}

}  // namespace hphs
