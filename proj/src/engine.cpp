#include "formsim/engine.hpp"

#include <cmath>
#include <thread>

namespace formsim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double min_pairwise(std::span<const Vec2> positions) {
  double d = kInf;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (std::size_t j = i + 1; j < positions.size(); ++j) {
      d = std::min(d, distance(positions[i], positions[j]));
    }
  }
  return d;
}

// Unordered agent pairs once, plus each agent's gated virtual-robot terms.
double recorded_potential(std::span<const Vec2> positions,
                          std::span<const Obstacle> obstacles,
                          const PotentialParams& params) {
  double total = 0.0;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (std::size_t j = i + 1; j < positions.size(); ++j) {
      if (distance(positions[i], positions[j]) < params.b) {
        total += pairwise_potential(positions[i], positions[j], params);
      }
    }
    for (const Obstacle& obs : obstacles) {
      const Vec2 pv = obstacle_projection(positions[i], obs);
      if (distance(positions[i], pv) < params.b) {
        total += pairwise_potential(positions[i], pv, params);
      }
    }
  }
  return total;
}

void eval_range(std::vector<AgentContext>& ctx, const WorldView& world, double t,
                int begin, int end, std::vector<ControlInput>& out) {
  for (int i = begin; i < end; ++i) {
    mode_select(ctx[i], world, i, t);
    out[i] = control(ctx[i], world, i, t);
  }
}

}  // namespace

RunResult run(const Scenario& scenario, const RunOptions& options) {
  const int n = static_cast<int>(scenario.agents.size());
  const double dt = scenario.dt;
  const long steps = std::lround(scenario.duration / dt);

  std::vector<AgentContext> ctx(n);
  for (int i = 0; i < n; ++i) {
    ctx[i].id = scenario.agents[i].id;
    ctx[i].pose.position = scenario.agents[i].start;
    ctx[i].pose.heading = wrap_angle(scenario.agents[i].heading);
    ctx[i].gains = scenario.agents[i].gains;
    ctx[i].estimator = ThetaDotEstimator(scenario.estimator_delay, scenario.theta_dot_cap);
  }

  RunResult result;
  result.records.reserve(static_cast<std::size_t>(steps));

  std::vector<Vec2> positions(n);
  std::vector<ControlInput> inputs(n);

  const int admissible_flag = [&] {
    std::vector<Vec2> starts(n);
    for (int i = 0; i < n; ++i) starts[i] = scenario.agents[i].start;
    return admissible(starts, scenario.potential) ? 1 : 0;
  }();

  for (long k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    for (int i = 0; i < n; ++i) positions[i] = ctx[i].pose.position;

    // fault scan before any control depends on the projections
    for (int i = 0; i < n; ++i) {
      for (int o = 0; o < static_cast<int>(scenario.obstacles.size()); ++o) {
        if (distance(positions[i], scenario.obstacles[o].center) -
                scenario.obstacles[o].radius <=
            kEpsPos) {
          result.fault = Fault{static_cast<int>(k), ctx[i].id, o};
          result.metrics = compute_metrics(result.records, &scenario.formation,
                                           scenario.tol_conv, admissible_flag);
          return result;
        }
      }
    }

    WorldView world;
    world.positions = positions;
    world.obstacles = scenario.obstacles;
    world.formation = &scenario.formation;
    world.potential = scenario.potential;
    world.sup = scenario.sup;

    if (options.parallel && n > 1) {
      const int workers =
          std::min<int>(n, std::max(1u, std::thread::hardware_concurrency()));
      std::vector<std::thread> pool;
      pool.reserve(workers);
      const int chunk = (n + workers - 1) / workers;
      for (int w = 0; w < workers; ++w) {
        const int begin = w * chunk;
        const int end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back(eval_range, std::ref(ctx), std::cref(world), t, begin, end,
                          std::ref(inputs));
      }
      for (std::thread& th : pool) th.join();
    } else {
      eval_range(ctx, world, t, 0, n, inputs);
    }

    StepRecord rec;
    rec.t = t;
    rec.agents.resize(n);
    for (int i = 0; i < n; ++i) {
      ControlInput& in = inputs[i];
      in.v = std::clamp(in.v, -scenario.v_cap, scenario.v_cap);
      in.u = std::clamp(in.u, -scenario.u_cap, scenario.u_cap);
      rec.agents[i] = {ctx[i].pose.position.x(), ctx[i].pose.position.y(),
                       ctx[i].pose.heading.rad(), in.v, in.u, ctx[i].mode};
    }
    rec.v_a = recorded_potential(positions, scenario.obstacles, scenario.potential);
    rec.d_min = min_pairwise(positions);
    rec.clearance = kInf;
    for (const Vec2& p : positions) {
      for (const Obstacle& obs : scenario.obstacles) {
        rec.clearance = std::min(rec.clearance, distance(p, obs.center) - obs.radius);
      }
    }
    result.records.push_back(std::move(rec));

    for (int i = 0; i < n; ++i) {
      ctx[i].pose = step(ctx[i].pose, inputs[i], dt);
    }
  }

  result.metrics = compute_metrics(result.records, &scenario.formation,
                                   scenario.tol_conv, admissible_flag);
  return result;
}

RunMetrics compute_metrics(const std::vector<StepRecord>& records,
                           const FormationSpec* formation, double tol_conv,
                           int admissible) {
  if (records.empty()) throw std::domain_error("no records");
  RunMetrics m;
  m.admissible = admissible;
  m.min_pairwise = kInf;
  m.min_clearance = kInf;
  for (const StepRecord& rec : records) {
    m.min_pairwise = std::min(m.min_pairwise, rec.d_min);
    m.min_clearance = std::min(m.min_clearance, rec.clearance);
    for (const AgentStep& a : rec.agents) {
      m.max_abs_v = std::max(m.max_abs_v, std::abs(a.v));
      m.max_abs_u = std::max(m.max_abs_u, std::abs(a.u));
    }
  }
  if (formation == nullptr) {
    m.convergence_time = std::numeric_limits<double>::quiet_NaN();
    return m;
  }
  m.convergence_time = kInf;
  for (const StepRecord& rec : records) {
    bool all_close = true;
    for (int i = 0; i < static_cast<int>(rec.agents.size()); ++i) {
      const Vec2 ref = reference(*formation, i, rec.t).point;
      const double err =
          std::hypot(rec.agents[i].x - ref.x(), rec.agents[i].y - ref.y());
      if (err >= tol_conv) {
        all_close = false;
        break;
      }
    }
    if (all_close) {
      if (std::isinf(m.convergence_time)) m.convergence_time = rec.t;
    } else {
      m.convergence_time = kInf;
    }
  }
  return m;
}

}  // namespace formsim
