#include <doctest.h>

#include <random>

#include "formsim/geometry.hpp"

using namespace formsim;

TEST_CASE("wrap_angle maps into (-pi, pi]") {
  CHECK(wrap_angle(0.0).rad() == 0.0);
  CHECK(wrap_angle(3.0 * kPi).rad() == doctest::Approx(kPi));
  CHECK(wrap_angle(-1.5 * kPi).rad() == doctest::Approx(kPi / 2.0));
  CHECK(wrap_angle(kPi).rad() == doctest::Approx(kPi));
  CHECK(wrap_angle(-kPi).rad() == doctest::Approx(kPi));  // boundary maps to +pi
  CHECK_THROWS_WITH_AS(wrap_angle(std::numeric_limits<double>::quiet_NaN()),
                       "non-finite angle", std::domain_error);
  CHECK_THROWS_AS(wrap_angle(std::numeric_limits<double>::infinity()), std::domain_error);
}

TEST_CASE("wrap_angle is 2*pi periodic") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-10.0, 10.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double x = dist(rng);
    const double base = wrap_angle(x).rad();
    for (int k = -3; k <= 3; ++k) {
      const double shifted = wrap_angle(x + kTwoPi * k).rad();
      // compare circularly; results may land on opposite sides of the branch cut
      CHECK(std::abs(wrap_angle(shifted - base).rad()) < 1e-9);
      CHECK(shifted > -kPi);
      CHECK(shifted <= kPi);
    }
  }
}

TEST_CASE("bearing on axis-aligned and diagonal cases") {
  CHECK(bearing(Vec2(0, 0), Vec2(1, 0)).rad() == 0.0);
  CHECK(bearing(Vec2(1, 0), Vec2(0, 0)).rad() == doctest::Approx(kPi));
  CHECK(bearing(Vec2(0, 0), Vec2(1, 1)).rad() == doctest::Approx(kPi / 4.0));
  CHECK_THROWS_WITH_AS(bearing(Vec2(2, 3), Vec2(2, 3)), "undefined bearing",
                       std::domain_error);
  CHECK_THROWS_AS(bearing(Vec2(0, 0), Vec2(1e-10, 0)), std::domain_error);
}

TEST_CASE("bearing antipode property") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    const Vec2 a(dist(rng), dist(rng));
    const Vec2 b(dist(rng), dist(rng));
    if (distance(a, b) < 1e-6) continue;
    const double fwd = bearing(a, b).rad();
    const double rev = bearing(b, a).rad();
    CHECK(std::abs(wrap_angle(fwd - wrap_angle(rev + kPi).rad()).rad()) < 1e-12);
  }
}

TEST_CASE("distance basics and properties") {
  CHECK(distance(Vec2(0, 0), Vec2(0, 0)) == 0.0);
  CHECK(distance(Vec2(0, 0), Vec2(3, 4)) == doctest::Approx(5.0));
  CHECK(distance(Vec2(1, -2), Vec2(4, 2)) == doctest::Approx(5.0));

  std::mt19937 rng(13);
  std::uniform_real_distribution<double> dist(-10.0, 10.0);
  for (int trial = 0; trial < 300; ++trial) {
    const Vec2 a(dist(rng), dist(rng)), b(dist(rng), dist(rng)), c(dist(rng), dist(rng));
    CHECK(distance(a, b) == distance(b, a));
    CHECK(distance(a, c) <= distance(a, b) + distance(b, c) + 1e-12);
  }
}

TEST_CASE("segment-disk intersection") {
  CHECK(segment_hits_disk(Vec2(-2, 0), Vec2(2, 0), Vec2(0, 0.5), 1.0));
  CHECK_FALSE(segment_hits_disk(Vec2(-2, 0), Vec2(2, 0), Vec2(0, 3), 1.0));
  // endpoint inside counts
  CHECK(segment_hits_disk(Vec2(0, 0), Vec2(5, 0), Vec2(0.2, 0), 1.0));
  // disk beyond the far endpoint does not
  CHECK_FALSE(segment_hits_disk(Vec2(0, 0), Vec2(1, 0), Vec2(5, 0), 1.0));
}
