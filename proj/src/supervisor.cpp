#include "formsim/supervisor.hpp"

namespace formsim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Nearest obstacle by surface distance; -1 if there are none.
int nearest_obstacle(const Vec2& p, std::span<const Obstacle> obstacles, double* surface) {
  int best = -1;
  double best_sd = kInf;
  for (int k = 0; k < static_cast<int>(obstacles.size()); ++k) {
    const double sd = distance(p, obstacles[k].center) - obstacles[k].radius;
    if (sd < best_sd) {
      best_sd = sd;
      best = k;
    }
  }
  if (surface) *surface = best_sd;
  return best;
}

double nearest_threat(const WorldView& world, int self) {
  const Vec2& p = world.positions[self];
  double d = kInf;
  for (int j = 0; j < static_cast<int>(world.positions.size()); ++j) {
    if (j != self) d = std::min(d, distance(p, world.positions[j]));
  }
  double sd = kInf;
  nearest_obstacle(p, world.obstacles, &sd);
  return std::min(d, sd);
}

bool path_blocked(const Vec2& p, const Vec2& ref_point, const Obstacle& obs,
                  double inflation) {
  return segment_hits_disk(p, ref_point, obs.center, obs.radius + inflation);
}

}  // namespace

Mode mode_select(AgentContext& ctx, const WorldView& world, int self, double t) {
  const Vec2& p = world.positions[self];
  const double b = world.potential.b;
  const double a = world.potential.a;
  const SupervisorParams& sup = world.sup;

  const double threat = nearest_threat(world, self);
  double surface = kInf;
  const int obs_idx = nearest_obstacle(p, world.obstacles, &surface);
  const Vec2 ref_point = reference(*world.formation, self, t).point;

  Mode want;
  if (threat < b) {
    want = Mode::Avoid;
  } else if (obs_idx < 0) {
    want = Mode::Track;
  } else if (ctx.mode == Mode::Circumnavigate) {
    // sticky: exit only once the path is clear with slack to spare
    const bool still = surface < sup.d_circ + sup.circ_band &&
                       path_blocked(p, ref_point, world.obstacles[obs_idx],
                                    a + sup.circ_band);
    want = still ? Mode::Circumnavigate : Mode::Track;
  } else {
    const bool enter = surface < sup.d_circ &&
                       path_blocked(p, ref_point, world.obstacles[obs_idx], a);
    want = enter ? Mode::Circumnavigate : Mode::Track;
  }

  Mode next = ctx.mode;
  if (want != ctx.mode) {
    const bool urgent = want == Mode::Avoid && threat < b - sup.urgent_margin;
    if (urgent || ctx.steps_in_mode >= sup.dwell_steps) next = want;
  }

  if (next != ctx.mode) {
    ctx.steps_in_mode = 0;
    if (next == Mode::Track) ctx.estimator.reset();
    if (next == Mode::Circumnavigate && obs_idx >= 0) {
      const double gamma =
          wrap_angle(bearing(p, world.obstacles[obs_idx].center).rad() -
                     ctx.pose.heading.rad())
              .rad();
      ctx.circ_branch = gamma > 0.0 ? -kPi / 2.0 : kPi / 2.0;
    }
    ctx.mode = next;
  } else {
    ++ctx.steps_in_mode;
  }
  return ctx.mode;
}

ControlInput control(AgentContext& ctx, const WorldView& world, int self, double t) {
  const Vec2& p = world.positions[self];
  const ReferencePoint ref = reference(*world.formation, self, t);

  switch (ctx.mode) {
    case Mode::Track: {
      TrackingError err = compute_errors(ctx.pose, ref.point);
      if (err.theta_d_defined) {
        ctx.last_theta_d = err.theta_d;
      } else {
        err.theta_d = ctx.last_theta_d;
      }
      ctx.estimator.push(t, err.e_x, err.e_y);
      const double theta_dot_hat = err.theta_d_defined ? ctx.estimator.estimate(t) : 0.0;
      return tracking_law(ctx.gains, err, theta_dot_hat);
    }
    case Mode::Avoid: {
      std::vector<Vec2> virtuals;
      virtuals.reserve(world.obstacles.size());
      for (const Obstacle& obs : world.obstacles) {
        virtuals.push_back(obstacle_projection(p, obs));
      }
      const Vec2 force = total_force(self, world.positions, virtuals, world.potential);
      const AvoidanceReference flee = avoidance_reference(force);
      Angle e_theta;
      double d = 0.0;
      if (flee.defined) {
        ctx.last_theta_d = flee.theta_d;
        e_theta = wrap_angle(ctx.pose.heading.rad() - flee.theta_d.rad());
        d = flee.force_mag;
      } else {
        e_theta = wrap_angle(ctx.pose.heading.rad() - ctx.last_theta_d.rad());
      }
      return avoidance_law(ctx.gains, e_theta, d);
    }
    case Mode::Circumnavigate: {
      double surface = kInf;
      const int obs_idx = nearest_obstacle(p, world.obstacles, &surface);
      const Angle theta_d =
          tangent_heading(ctx.pose, world.obstacles[obs_idx], ref.point, ctx.circ_branch);
      ctx.last_theta_d = theta_d;
      const Angle e_theta = wrap_angle(ctx.pose.heading.rad() - theta_d.rad());
      const double d = distance(p, ref.point);
      return avoidance_law(ctx.gains, e_theta, d);
    }
  }
  return {};
}

}  // namespace formsim
