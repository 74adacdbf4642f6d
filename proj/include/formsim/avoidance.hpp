#pragma once

#include "formsim/tracking.hpp"

namespace formsim {

// Force magnitudes below this leave the flee heading undefined.
inline constexpr double kEpsForce = 1e-9;

struct Obstacle {
  Vec2 center{0.0, 0.0};
  double radius = 1.0;
};

struct AvoidanceReference {
  Angle theta_d;          // direction of the total force; stale when !defined
  double force_mag = 0.0;
  bool defined = false;
};

/// Flee heading from a total repulsive force: theta_d points along F (the
/// descent direction of the collective potential, away from threats).
inline AvoidanceReference avoidance_reference(const Vec2& force) {
  AvoidanceReference ref;
  ref.force_mag = force.norm();
  if (ref.force_mag >= kEpsForce) {
    ref.theta_d = wrap_angle(std::atan2(force.y(), force.x()));
    ref.defined = true;
  }
  return ref;
}

/// Bounded avoidance law: u = -k_theta*e_theta, v = k*cos(e_theta)*min(d_max, d).
inline ControlInput avoidance_law(const TrackingGains& gains, Angle e_theta, double d) {
  ControlInput out;
  out.u = -gains.k_theta * e_theta.rad();
  out.v = gains.k * std::cos(e_theta.rad()) * std::min(gains.d_max, d);
  return out;
}

/// Nearest point of the obstacle circle to p; the "virtual robot" position.
inline Vec2 obstacle_projection(const Vec2& p, const Obstacle& obs) {
  const double d = distance(p, obs.center);
  if (d <= obs.radius) throw std::domain_error("agent inside obstacle");
  const double ratio = obs.radius / d;
  return ratio * p + (1.0 - ratio) * obs.center;
}

/// Tangential reference heading around an obstacle with an explicit
/// half-turn offset (-pi/2 or +pi/2). gamma is the obstacle bearing relative
/// to the current heading; beta is the bearing to the reference point.
inline Angle tangent_heading(const Pose& pose, const Obstacle& obs, const Vec2& ref_point,
                             double branch_offset) {
  const double gamma =
      wrap_angle(bearing(pose.position, obs.center).rad() - pose.heading.rad()).rad();
  const double beta = bearing(pose.position, ref_point).rad();
  return wrap_angle(branch_offset + gamma + beta);
}

/// Circumnavigation heading with the branch picked from the current gamma:
/// -pi/2 offset for gamma > 0, +pi/2 for gamma <= 0.
inline Angle circumnavigation_heading(const Pose& pose, const Obstacle& obs,
                                      const Vec2& ref_point) {
  const double gamma =
      wrap_angle(bearing(pose.position, obs.center).rad() - pose.heading.rad()).rad();
  return tangent_heading(pose, obs, ref_point, gamma > 0.0 ? -kPi / 2.0 : kPi / 2.0);
}

}  // namespace formsim
