#pragma once

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace formsim {

using Vec2 = Eigen::Vector2d;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Positions closer than this are treated as coincident.
inline constexpr double kEpsPos = 1e-9;

/// Wrapped planar angle. Value is always in (-pi, pi]; construct via wrap_angle().
class Angle {
 public:
  constexpr Angle() = default;
  constexpr double rad() const { return rad_; }

  friend constexpr bool operator==(Angle a, Angle b) { return a.rad_ == b.rad_; }

 private:
  explicit constexpr Angle(double wrapped) : rad_(wrapped) {}
  friend Angle wrap_angle(double raw);
  double rad_ = 0.0;
};

/// Reduce an angle to (-pi, pi]; the +pi boundary is kept.
inline Angle wrap_angle(double raw) {
  if (!std::isfinite(raw)) throw std::domain_error("non-finite angle");
  double m = std::fmod(raw + kPi, kTwoPi);
  if (m <= 0.0) m += kTwoPi;
  double r = m - kPi;
  if (r <= -kPi) r += kTwoPi;  // rounding can land exactly on -pi
  return Angle(r);
}

inline double distance(const Vec2& p, const Vec2& q) { return (p - q).norm(); }

/// Heading of the ray from `from` to `to`.
inline Angle bearing(const Vec2& from, const Vec2& to) {
  if (distance(from, to) < kEpsPos) throw std::domain_error("undefined bearing");
  return wrap_angle(std::atan2(to.y() - from.y(), to.x() - from.x()));
}

inline Vec2 unit_vector(Angle a) { return Vec2(std::cos(a.rad()), std::sin(a.rad())); }

inline bool finite(const Vec2& p) { return std::isfinite(p.x()) && std::isfinite(p.y()); }

/// True if the disk (center, radius) intersects the segment [p, q].
inline bool segment_hits_disk(const Vec2& p, const Vec2& q, const Vec2& center, double radius) {
  const Vec2 d = q - p;
  const double len2 = d.squaredNorm();
  double s = 0.0;
  if (len2 > 0.0) s = std::clamp((center - p).dot(d) / len2, 0.0, 1.0);
  return distance(p + s * d, center) <= radius;
}

}  // namespace formsim
