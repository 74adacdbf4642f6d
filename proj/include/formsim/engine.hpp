#pragma once

#include <optional>

#include "formsim/scenario.hpp"

namespace formsim {

struct AgentStep {
  double x = 0.0, y = 0.0, theta = 0.0;
  double v = 0.0, u = 0.0;
  Mode mode = Mode::Track;
};

/// One simulation step's observables: the pre-integration state at time t and
/// the controls applied over [t, t+dt). v_a is the collective potential over
/// unordered agent pairs plus each agent's gated virtual-robot terms.
struct StepRecord {
  double t = 0.0;
  std::vector<AgentStep> agents;
  double v_a = 0.0;
  double d_min = 0.0;      // min pairwise distance (inf for a single agent)
  double clearance = 0.0;  // min distance-to-surface over agents x obstacles (inf if none)
};

struct RunMetrics {
  // first t after which every agent's position error stays < tol_conv;
  // +inf when never achieved, NaN when references are unknown (offline report)
  double convergence_time = 0.0;
  double min_pairwise = 0.0;
  double min_clearance = 0.0;
  double max_abs_v = 0.0;
  double max_abs_u = 0.0;
  // 1 admissible, 0 not, -1 unknown
  int admissible = -1;
};

struct Fault {
  int step = 0;
  int agent_id = 0;
  int obstacle_index = 0;
};

struct RunResult {
  std::vector<StepRecord> records;
  RunMetrics metrics;
  std::optional<Fault> fault;
};

struct RunOptions {
  bool parallel = false;  // fan control evaluation out over threads; bit-identical
};

/// Deterministic fixed-step closed loop. An agent on or inside an obstacle
/// surface aborts the run with a fault record; everything simulated up to the
/// fault step is kept.
RunResult run(const Scenario& scenario, const RunOptions& options = {});

/// Aggregate metrics from records. `formation`/`tol_conv` drive the
/// convergence metric (pass nullptr when references are unavailable);
/// `admissible` is forwarded into the result (-1 unknown).
RunMetrics compute_metrics(const std::vector<StepRecord>& records,
                           const FormationSpec* formation, double tol_conv,
                           int admissible);

}  // namespace formsim
