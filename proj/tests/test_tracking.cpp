#include <doctest.h>

#include <random>

#include "formsim/tracking.hpp"

using namespace formsim;

namespace {

const TrackingGains kSec4{3.0, 4.0, 3.0};

Pose make_pose(double x, double y, double th) {
  Pose p;
  p.position = Vec2(x, y);
  p.heading = wrap_angle(th);
  return p;
}

}  // namespace

TEST_CASE("compute_errors definitions") {
  const TrackingError e1 = compute_errors(make_pose(1, 0, kPi), Vec2(0, 0));
  CHECK(e1.e_x == 1.0);
  CHECK(e1.e_y == 0.0);
  CHECK(e1.dist == 1.0);
  CHECK(e1.theta_d.rad() == doctest::Approx(kPi));
  CHECK(e1.e_theta.rad() == doctest::Approx(0.0));
  CHECK(e1.theta_d_defined);

  const TrackingError e2 = compute_errors(make_pose(0, 0, 0.3), Vec2(0, 0));
  CHECK(e2.dist == 0.0);
  CHECK(e2.e_theta.rad() == 0.0);
  CHECK_FALSE(e2.theta_d_defined);

  const TrackingError e3 = compute_errors(make_pose(0, 1, 0), Vec2(0, 0));
  CHECK(e3.theta_d.rad() == doctest::Approx(-kPi / 2.0));
  CHECK(e3.e_theta.rad() == doctest::Approx(kPi / 2.0));
}

TEST_CASE("estimator: constant errors, ramp, cold start") {
  const double T = 0.01;
  ThetaDotEstimator est(T, kTwoPi / T);

  SUBCASE("constant errors give zero") {
    for (int k = 0; k <= 20; ++k) est.push(k * 0.001, 1.0, 1.0);
    CHECK(est.estimate(0.02) == 0.0);
  }

  SUBCASE("e_x = 1, e_y = t has rate 1/(1 + t^2)") {
    for (int k = 0; k <= 10; ++k) est.push(k * 0.001, 1.0, k * 0.001);
    const double got = est.estimate(0.01);
    CHECK(got == doctest::Approx(1.0 / (1.0 + 0.01 * 0.01)).epsilon(1e-9));
    CHECK(std::abs(got - 1.0) < 2.0 * T);  // within O(T) of the t=0 analytic value
  }

  SUBCASE("cold buffer estimates zero") {
    est.push(0.0, 1.0, 0.5);
    est.push(0.005, 1.0, 0.6);  // span < T
    CHECK(est.estimate(0.005) == 0.0);
  }
}

TEST_CASE("estimator clamps to the rate cap") {
  ThetaDotEstimator est(0.01, 1.0);
  for (int k = 0; k <= 10; ++k) est.push(k * 0.001, 1.0, 10.0 * k * 0.001);
  CHECK(est.estimate(0.01) == 1.0);
}

TEST_CASE("estimator interpolates when the delay is not a sample multiple") {
  ThetaDotEstimator est(0.015, 100.0);
  for (int k = 0; k <= 30; ++k) est.push(k * 0.01, 1.0, k * 0.01);
  // e_y ramps at 1; backward difference over exactly T gives the same slope
  CHECK(est.estimate(0.30) ==
        doctest::Approx(1.0 / (1.0 + 0.30 * 0.30)).epsilon(1e-9));
}

TEST_CASE("estimator reset forgets history") {
  ThetaDotEstimator est(0.01, 100.0);
  for (int k = 0; k <= 20; ++k) est.push(k * 0.001, 1.0, k * 0.001);
  CHECK(est.estimate(0.02) != 0.0);
  est.reset();
  est.push(0.021, 1.0, 0.0);
  CHECK(est.estimate(0.021) == 0.0);
}

TEST_CASE("tracking law examples") {
  TrackingError err;
  err.dist = 1.0;
  err.theta_d_defined = true;
  const ControlInput a = tracking_law(kSec4, err, 0.0);
  CHECK(a.v == doctest::Approx(4.0));
  CHECK(a.u == 0.0);

  err.dist = 10.0;
  const ControlInput b = tracking_law(kSec4, err, 0.0);
  CHECK(b.v == doctest::Approx(12.0));  // saturated at k * d_max

  TrackingError perfect;  // D = 0, theta_d undefined
  const ControlInput c = tracking_law(kSec4, perfect, 0.0);
  CHECK(c.v == 0.0);
  CHECK(c.u == 0.0);
}

TEST_CASE("speed bound |v| <= k*d_max over random errors") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> dist(-40.0, 40.0);
  std::uniform_real_distribution<double> ang(-10.0, 10.0);
  for (int trial = 0; trial < 10000; ++trial) {
    const TrackingError err =
        compute_errors(make_pose(dist(rng), dist(rng), ang(rng)),
                       Vec2(dist(rng), dist(rng)));
    const double theta_dot_hat = ang(rng);
    const ControlInput out = tracking_law(kSec4, err, theta_dot_hat);
    CHECK(std::abs(out.v) <= kSec4.k * kSec4.d_max);
    CHECK(std::abs(out.u) <= kSec4.k_theta * kPi + std::abs(theta_dot_hat) + 1e-12);
  }
}

TEST_CASE("estimation error halves with the delay (order >= 1)") {
  // smooth synthetic trajectory with analytic rate
  auto e_x = [](double t) { return 1.0 + 0.5 * std::sin(t); };
  auto e_y = [](double t) { return 0.8 * std::cos(0.7 * t) + 0.2 * t; };
  auto de_x = [](double t) { return 0.5 * std::cos(t); };
  auto de_y = [](double t) { return -0.56 * std::sin(0.7 * t) + 0.2; };
  auto rate = [&](double t) {
    const double d2 = e_x(t) * e_x(t) + e_y(t) * e_y(t);
    return (e_x(t) * de_y(t) - e_y(t) * de_x(t)) / d2;
  };
  auto max_err = [&](double T) {
    ThetaDotEstimator est(T, 1e9);
    const double dt = 0.002;
    double worst = 0.0;
    for (int k = 0; k <= 3000; ++k) {
      const double t = k * dt;
      est.push(t, e_x(t), e_y(t));
      if (t >= T) worst = std::max(worst, std::abs(est.estimate(t) - rate(t)));
    }
    return worst;
  };
  const double e1 = max_err(0.1);
  const double e2 = max_err(0.05);
  CHECK(e2 / e1 > 0.4);
  CHECK(e2 / e1 < 0.6);
}
