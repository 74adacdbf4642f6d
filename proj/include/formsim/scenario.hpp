#pragma once

#include <optional>
#include <string>
#include <vector>

#include "formsim/supervisor.hpp"

namespace formsim {

/// Thrown for malformed or invalid scenario documents. Syntax errors carry
/// line/column in the message; semantic errors name the violated invariant.
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AgentInit {
  int id = 0;
  Vec2 start{0.0, 0.0};
  double heading = 0.0;
  TrackingGains gains;  // resolved: per-agent override or the shared gains
};

/// Auto-generated start layout: uniform in `box`, seeded, rejecting samples
/// closer than min_separation to earlier agents or obstacle surfaces.
struct AgentGenerator {
  int count = 0;
  Vec2 box_min{0.0, 0.0};
  Vec2 box_max{0.0, 0.0};
  double min_separation = 0.0;
};

/// Complete declarative description of one run, defaults filled.
struct Scenario {
  std::string name;
  double dt = 0.01;
  double duration = 30.0;
  double estimator_delay = 0.1;  // T
  double theta_dot_cap = 0.0;    // default 2*pi/T
  double v_cap = 0.0;            // default max_i k_i * d_max_i
  double u_cap = 0.0;            // default max_i k_theta_i * pi + theta_dot_cap
  TrackingGains gains;           // shared defaults
  PotentialParams potential;
  std::vector<Obstacle> obstacles;
  std::vector<AgentInit> agents;
  FormationSpec formation;
  SupervisorParams sup;
  double tol_conv = 0.5;
  unsigned long seed = 0;
  std::optional<AgentGenerator> generator;  // retained so serialization echoes it
};

/// Parse and fully validate a scenario document (JSON). All defaults are
/// filled in the returned value.
Scenario parse_scenario(const std::string& text);

/// Scenario back to its document form, every field explicit.
std::string serialize_scenario(const Scenario& scenario);

Scenario load_scenario_file(const std::string& path);

}  // namespace formsim
