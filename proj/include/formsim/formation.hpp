#pragma once

#include <vector>

#include "formsim/geometry.hpp"

namespace formsim {

/// Per-agent reference generator. Affine: ref_i(t) = rate*t + offset_i.
/// Circular: ref_i(t) = center + radius*(cos, sin)(angular_rate*t + phase_i).
struct FormationSpec {
  enum class Kind { Affine, Circular };

  Kind kind = Kind::Affine;
  // affine
  Vec2 rate{0.0, 0.0};
  std::vector<Vec2> offsets;
  // circular
  Vec2 center{0.0, 0.0};
  double radius = 0.0;
  double angular_rate = 0.0;
  std::vector<double> phases;

  int agent_count() const {
    return static_cast<int>(kind == Kind::Affine ? offsets.size() : phases.size());
  }
};

struct ReferencePoint {
  Vec2 point{0.0, 0.0};
  Vec2 velocity{0.0, 0.0};
};

/// Reference point and its exact time derivative for agent `index` (0-based).
inline ReferencePoint reference(const FormationSpec& spec, int index, double t) {
  ReferencePoint out;
  if (spec.kind == FormationSpec::Kind::Affine) {
    out.point = spec.rate * t + spec.offsets.at(index);
    out.velocity = spec.rate;
  } else {
    const double phase = spec.angular_rate * t + spec.phases.at(index);
    out.point = spec.center + spec.radius * Vec2(std::cos(phase), std::sin(phase));
    out.velocity =
        spec.radius * spec.angular_rate * Vec2(-std::sin(phase), std::cos(phase));
  }
  return out;
}

}  // namespace formsim
