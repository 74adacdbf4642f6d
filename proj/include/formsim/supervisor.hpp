#pragma once

#include <limits>
#include <span>

#include "formsim/avoidance.hpp"
#include "formsim/formation.hpp"
#include "formsim/potential.hpp"

namespace formsim {

enum class Mode { Track = 0, Avoid = 1, Circumnavigate = 2 };

/// Mode-switching thresholds. Avoid is active exactly while some threat is
/// inside the detection radius b (so the repulsive force never dead-zones);
/// chattering is suppressed by a minimum dwell per mode, with an urgent
/// override so deep incursions still get an immediate reaction.
struct SupervisorParams {
  double d_circ = 5.0;         // engage circumnavigation within this surface distance
  double circ_band = 0.5;      // extra slack on the blocking test before circ exits
  int dwell_steps = 10;        // minimum steps between mode switches
  double urgent_margin = 0.3;  // avoid entry bypasses dwell below b - margin
};

/// Per-agent mutable state owned by exactly one agent task.
struct AgentContext {
  int id = 0;
  Pose pose;
  TrackingGains gains;
  ThetaDotEstimator estimator;
  Mode mode = Mode::Track;
  Angle last_theta_d;          // last defined reference heading (any mode)
  int steps_in_mode = std::numeric_limits<int>::max() / 2;
  double circ_branch = kPi / 2.0;  // fixed per circumnavigation episode
};

/// Immutable view of one simulation step shared by all agents.
struct WorldView {
  std::span<const Vec2> positions;  // agent positions, snapshot order = context order
  std::span<const Obstacle> obstacles;
  const FormationSpec* formation = nullptr;
  PotentialParams potential;
  SupervisorParams sup;
};

/// Pick this step's mode for agent `self` and update the context's mode
/// bookkeeping (dwell counter, circ branch, estimator reset on Track entry).
Mode mode_select(AgentContext& ctx, const WorldView& world, int self, double t);

/// Control input for the already-selected mode. Mutates only the agent's own
/// estimator and last_theta_d.
ControlInput control(AgentContext& ctx, const WorldView& world, int self, double t);

}  // namespace formsim
