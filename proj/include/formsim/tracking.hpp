#pragma once

#include <algorithm>
#include <deque>

#include "formsim/unicycle.hpp"

namespace formsim {

struct TrackingGains {
  double k_theta = 3.0;  // heading gain [1/s]
  double k = 4.0;        // translational gain [1/s]
  double d_max = 3.0;    // speed-law saturation distance [m]

  bool valid() const { return k_theta > 0.0 && k > 0.0 && d_max > 0.0; }
};

struct TrackingError {
  double e_x = 0.0;
  double e_y = 0.0;
  double dist = 0.0;       // sqrt(e_x^2 + e_y^2)
  Angle theta_d;           // bearing robot -> reference; stale when !theta_d_defined
  Angle e_theta;           // wrap(heading - theta_d); 0 when !theta_d_defined
  bool theta_d_defined = false;
};

/// Position/heading errors against a reference point. Below the coincidence
/// tolerance theta_d is flagged undefined (caller keeps its previous value)
/// and e_theta is 0.
inline TrackingError compute_errors(const Pose& pose, const Vec2& ref_point) {
  TrackingError err;
  err.e_x = pose.position.x() - ref_point.x();
  err.e_y = pose.position.y() - ref_point.y();
  err.dist = std::hypot(err.e_x, err.e_y);
  if (err.dist >= kEpsPos) {
    err.theta_d = bearing(pose.position, ref_point);
    err.e_theta = wrap_angle(pose.heading.rad() - err.theta_d.rad());
    err.theta_d_defined = true;
  }
  return err;
}

/// Delayed finite-difference estimator of the reference-bearing rate.
/// Keeps a (t, e_x, e_y) history spanning at least the delay T; the backward
/// difference is taken over exactly T via linear interpolation. Cold buffer
/// (span < T) estimates 0.
class ThetaDotEstimator {
 public:
  ThetaDotEstimator() = default;
  ThetaDotEstimator(double delay, double cap) : delay_(delay), cap_(cap) {}

  double delay() const { return delay_; }

  void reset() { buf_.clear(); }

  void push(double t, double e_x, double e_y) {
    if (!buf_.empty() && t <= buf_.back().t) {
      throw std::domain_error("estimator timestamps must increase");
    }
    buf_.push_back({t, e_x, e_y});
    // keep exactly one sample at or before t - delay
    while (buf_.size() >= 2 && buf_[1].t <= t - delay_) buf_.pop_front();
  }

  /// (e_x*de_y - e_y*de_x)/D^2 with backward differences over the delay,
  /// clamped to +-cap. Requires push(now, ...) to have happened already.
  double estimate(double now) const {
    if (buf_.empty()) return 0.0;
    const Sample& cur = buf_.back();
    const double target = now - delay_;
    if (buf_.front().t > target + 1e-12) return 0.0;  // warm-up
    const double d2 = cur.e_x * cur.e_x + cur.e_y * cur.e_y;
    if (d2 < kEpsPos * kEpsPos) return 0.0;
    const Sample past = sample_at(target);
    const double de_x = (cur.e_x - past.e_x) / delay_;
    const double de_y = (cur.e_y - past.e_y) / delay_;
    const double rate = (cur.e_x * de_y - cur.e_y * de_x) / d2;
    return std::clamp(rate, -cap_, cap_);
  }

 private:
  struct Sample {
    double t, e_x, e_y;
  };

  Sample sample_at(double t) const {
    for (std::size_t i = 1; i < buf_.size(); ++i) {
      if (buf_[i].t >= t) {
        const Sample& s0 = buf_[i - 1];
        const Sample& s1 = buf_[i];
        const double w = (s1.t == s0.t) ? 0.0 : (t - s0.t) / (s1.t - s0.t);
        return {t, s0.e_x + w * (s1.e_x - s0.e_x), s0.e_y + w * (s1.e_y - s0.e_y)};
      }
    }
    return buf_.back();
  }

  double delay_ = 0.1;
  double cap_ = kTwoPi / 0.1;
  std::deque<Sample> buf_;
};

/// Bounded tracking law: u = -k_theta*e_theta + theta_dot_hat,
/// v = k*cos(e_theta)*min(d_max, D). |v| <= k*d_max always; v = 0 at the
/// coincidence singularity.
inline ControlInput tracking_law(const TrackingGains& gains, const TrackingError& err,
                                 double theta_dot_hat) {
  ControlInput out;
  out.u = -gains.k_theta * err.e_theta.rad() + theta_dot_hat;
  if (!err.theta_d_defined) {
    out.v = 0.0;
  } else {
    out.v = gains.k * std::cos(err.e_theta.rad()) * std::min(gains.d_max, err.dist);
  }
  return out;
}

}  // namespace formsim
