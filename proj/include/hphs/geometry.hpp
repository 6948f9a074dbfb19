#pragma once

#include <cmath>
#include <compare>
#include <numbers>

namespace hphs {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return {a.x * s, a.y * s}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {a.x * s, a.y * s}; }
  friend constexpr bool operator==(Vec2, Vec2) = default;

  double norm() const { return std::hypot(x, y); }
};

inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

/// Integer cell coordinate; x is the column, y the row.
struct Cell {
  int x = 0;
  int y = 0;

  friend constexpr auto operator<=>(const Cell&, const Cell&) = default;
};

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Wraps an angle into [-pi, pi).
inline double normalize_angle(double a) {
  double r = std::fmod(a + std::numbers::pi, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  r -= std::numbers::pi;
  // fmod can round up to exactly pi for inputs a hair below an odd multiple.
  if (r >= std::numbers::pi) r -= kTwoPi;
  return r;
}

/// Wraps an angle into [0, 2pi).
inline double wrap_two_pi(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

struct Pose {
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;

  Pose() = default;
  Pose(double x_, double y_, double heading_ = 0.0) : x(x_), y(y_), heading(normalize_angle(heading_)) {}
  Pose(Vec2 p, double heading_ = 0.0) : Pose(p.x, p.y, heading_) {}

  Vec2 position() const { return {x, y}; }
  friend bool operator==(const Pose&, const Pose&) = default;
};

}  // namespace hphs
