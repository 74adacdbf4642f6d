#pragma once

#include "formsim/geometry.hpp"

namespace formsim {

struct Pose {
  Vec2 position{0.0, 0.0};
  Angle heading;
};

/// Translational speed v [m/s] and angular speed u [rad/s].
struct ControlInput {
  double v = 0.0;
  double u = 0.0;
};

/// One explicit-Euler step of the unicycle kinematics.
/// Speed caps are the caller's business; this only rejects non-finite state.
inline Pose step(const Pose& pose, const ControlInput& input, double dt) {
  if (!(dt > 0.0) || !finite(pose.position) || !std::isfinite(input.v) ||
      !std::isfinite(input.u)) {
    throw std::domain_error("invalid state");
  }
  const double c = std::cos(pose.heading.rad());
  const double s = std::sin(pose.heading.rad());
  Pose next;
  next.position = Vec2(pose.position.x() + dt * input.v * c,
                       pose.position.y() + dt * input.v * s);
  next.heading = wrap_angle(pose.heading.rad() + dt * input.u);
  return next;
}

/// No-side-slip diagnostic |dy*cos(th) - dx*sin(th)|/dt at the pre-step heading.
/// Zero (exactly) for any pose produced by step().
inline double nonholonomic_residual(const Pose& before, const Pose& after,
                                    const ControlInput& /*input*/, double dt) {
  const double dx = after.position.x() - before.position.x();
  const double dy = after.position.y() - before.position.y();
  const double c = std::cos(before.heading.rad());
  const double s = std::sin(before.heading.rad());
  return std::abs(dy * c - dx * s) / dt;
}

}  // namespace formsim
