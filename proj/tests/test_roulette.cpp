#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "curvekit/error.hpp"
#include "curvekit/numerics.hpp"
#include "curvekit/roulette.hpp"
#include "oracles.hpp"

using namespace curvekit;

namespace {

struct Base {
  const char* name;
  ParamCurve curve;
};

std::vector<Base> bases() {
  return {
      {"line", ParamCurve::line({0, 20})},
      {"circle", ParamCurve::circle(3, {0, kTwoPi})},
      {"ellipse", ParamCurve::ellipse(3, 2, {0, kTwoPi})},
      {"limacon", ParamCurve::limacon(2, {0, kTwoPi})},
  };
}

// Parameters in (lo, hi) where a circle of radius r started at lo has rolled
// through a non-zero multiple of 2pi. Arc length is increasing, so plain
// bisection finds each one.
std::vector<double> contact_parameters(const ParamCurve& c, double r, double lo, double hi) {
  std::vector<double> out;
  double total = arc_length(c, lo, hi);
  for (int k = 1; 2 * kPi * r * k < total; ++k) {
    double target = 2 * kPi * r * k;
    double a = lo, b = hi;
    for (int it = 0; it < 60; ++it) {
      double m = 0.5 * (a + b);
      (arc_length(c, lo, m) < target ? a : b) = m;
    }
    out.push_back(0.5 * (a + b));
  }
  return out;
}

}  // namespace

TEST_CASE("arc length") {
  CHECK(std::abs(arc_length(ParamCurve::line({0, 10}), 0, 5) - 5) < 1e-12);
  CHECK(std::abs(arc_length(ParamCurve::line({0, 10}), 5, 0) + 5) < 1e-12);
  CHECK(std::abs(arc_length(ParamCurve::circle(2, {0, kTwoPi}), 0, kPi) - kTwoPi) < 1e-10);
  double perimeter = arc_length(ParamCurve::ellipse(3, 2, {0, kTwoPi}), 0, kTwoPi);
  CHECK(std::abs(perimeter - oracle::ellipse_perimeter(3, 2)) < 1e-9);
  CHECK(std::abs(perimeter - 15.86543959) < 1e-8);
}

TEST_CASE("regularity") {
  CHECK_THROWS_AS(ParamCurve(parse("t^2"), parse("t^3"), {}, {-1, 1}), DegenerateError);
  CHECK_THROWS_AS(ParamCurve(parse("abs(t)"), parse("t"), {}, {-1, 1}), NotDifferentiable);
  CHECK_NOTHROW(ParamCurve(parse("t^2"), parse("t^3"), {}, {0.5, 1}));
  CHECK_THROWS_AS(ParamCurve::circle(0, {0, 1}), DegenerateError);
  ParamCurve custom(parse("R*cos(t)"), parse("R*sin(t)"), {{"R", 2}}, {0, kTwoPi});
  CHECK(std::abs(custom.position(kPi / 2) - Point(0, 2)) < 1e-15);
  CHECK(std::abs(custom.velocity(0) - Point(0, 2)) < 1e-15);
}

TEST_CASE("roll_state examples") {
  ParamCurve line = ParamCurve::line({0, 20});
  RollConfig cfg;
  CHECK(std::abs(roll_state(line, cfg, 0).contact) < 1e-15);
  CHECK(std::abs(roll_state(line, cfg, kPi).contact - Point(kPi, 2)) < 1e-10);

  ParamCurve circle = ParamCurve::circle(2, {0, kTwoPi});
  RollConfig anti;
  anti.side = RollSide::Antinormal;
  CHECK(std::abs(roll_state(circle, anti, kPi / 2).contact - Point(0, 4)) < 1e-10);
  for (double t : {0.3, 1.2, 2.5, 4.0}) {
    Point p = roll_state(circle, cfg, t).contact;
    CHECK(std::abs(p - Point(2 * std::cos(t), 0)) < 1e-10);
  }

  CHECK_THROWS_AS(roll_state(line, cfg, 21), InvalidArgument);
  RollConfig bad;
  bad.radius = 0;
  CHECK_THROWS_AS(roll_state(line, bad, 1), InvalidArgument);
}

TEST_CASE("closed forms") {
  CHECK(std::abs(cycloid_point(1, 0)) == 0);
  CHECK(std::abs(cycloid_point(1, kPi) - Point(kPi, 2)) < 1e-15);
  CHECK(std::abs(cycloid_point(2, 4 * kPi) - Point(4 * kPi, 0)) < 1e-14);
  CHECK(std::abs(epicycloid_point(3, 1, 0) - Point(3, 0)) < 1e-15);
  CHECK(std::abs(epicycloid_point(2, 1, kPi / 2) - Point(0, 4)) < 1e-14);
  CHECK(std::abs(hypocycloid_point(2, 1, kPi / 2)) < 1e-15);
  CHECK_THROWS_AS(epicycloid_point(1, 1, 0), InvalidArgument);
  CHECK_THROWS_AS(hypocycloid_point(1, 2, 0), InvalidArgument);
  for (double t : {0.0, 0.7, 2.0, 5.5}) {
    CHECK(std::abs(cycloid_point(0.5, t) - oracle::cycloid(0.5, t)) < 1e-14);
    CHECK(std::abs(epicycloid_point(5, 2, t) - oracle::epicycloid(5, 2, t)) < 1e-14);
    CHECK(std::abs(hypocycloid_point(5, 2, t) - oracle::hypocycloid(5, 2, t)) < 1e-14);
  }
}

TEST_CASE("numeric rolling agrees with the closed forms") {
  for (double r : {0.5, 1.0, 2.0}) {
    ParamCurve line = ParamCurve::line({0, 4 * kPi * r});
    RollConfig cfg;
    cfg.radius = r;
    double worst = 0;
    for (int j = 0; j < 1000; ++j) {
      double t = 4 * kPi * r * j / 999;
      worst = std::max(worst, std::abs(roll_state(line, cfg, t).contact - oracle::cycloid(r, t)));
    }
    CHECK(worst < 1e-8);
  }
  for (auto [R, r] : {std::pair{2.0, 1.0}, {3.0, 1.0}, {4.0, 1.0}, {5.0, 2.0}}) {
    ParamCurve circle = ParamCurve::circle(R, {0, kTwoPi});
    RollConfig outside;
    outside.radius = r;
    outside.side = RollSide::Antinormal;
    RollConfig inside;
    inside.radius = r;
    double worst = 0;
    for (int j = 0; j < 1000; ++j) {
      double t = kTwoPi * j / 999;
      worst = std::max(worst, std::abs(roll_state(circle, outside, t).contact - oracle::epicycloid(R, r, t)));
      worst = std::max(worst, std::abs(roll_state(circle, inside, t).contact - oracle::hypocycloid(R, r, t)));
    }
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("trace examples") {
  RollConfig cfg;
  auto cyc = trace(ParamCurve::line({0, kTwoPi}), cfg, 0, kTwoPi, 200);
  REQUIRE(cyc.size() == 200);
  CHECK(std::abs(cyc.front().imag()) < 1e-8);
  CHECK(std::abs(cyc.back().imag()) < 1e-8);

  RollConfig anti;
  anti.side = RollSide::Antinormal;
  auto epi = trace(ParamCurve::circle(2, {0, kTwoPi}), anti, 0, kTwoPi, 500);
  CHECK(std::abs(epi.front() - epi.back()) < 1e-8);

  auto astroid = trace(ParamCurve::circle(4, {0, kTwoPi}), cfg, 0, kTwoPi, 500);
  for (Point p : astroid)
    CHECK(std::abs(std::cbrt(p.real() * p.real()) + std::cbrt(p.imag() * p.imag()) - std::cbrt(16.0)) < 1e-6);

  CHECK_THROWS_AS(trace(ParamCurve::line({0, 1}), cfg, 0, 1, 1), InvalidArgument);
  CHECK_THROWS_AS(trace(ParamCurve::line({0, 1}), cfg, 0, 2, 10), InvalidArgument);
}

TEST_CASE("incremental arc length matches one-shot quadrature") {
  ParamCurve ellipse = ParamCurve::ellipse(3, 2, {0, kTwoPi});
  RollConfig cfg;
  cfg.radius = 0.5;
  auto ts = sample_parameters(0, kTwoPi, 300);
  auto pts = trace(ellipse, cfg, 0, kTwoPi, 300);
  for (std::size_t i = 0; i < ts.size(); i += 37) {
    CHECK(std::abs(pts[i] - roll_state(ellipse, cfg, ts[i]).trochoid) < 1e-9);
  }
}

TEST_CASE("rolling invariants") {
  for (const auto& base : bases()) {
    const Interval d = base.curve.domain();
    const auto contacts = contact_parameters(base.curve, 0.5, d.lo, d.hi);
    REQUIRE(contacts.size() >= 2);
    for (RollSide side : {RollSide::Normal, RollSide::Antinormal}) {
      for (bool reverse : {false, true}) {
        for (double k : {-1.0, 0.0, 0.5}) {
          CAPTURE(base.name);
          CAPTURE(static_cast<int>(side));
          CAPTURE(reverse);
          CAPTURE(k);
          RollConfig cfg;
          cfg.radius = 0.5;
          cfg.side = side;
          cfg.reverse = reverse;
          cfg.k = k;
          cfg.t0 = d.lo;
          for (int j = 0; j <= 400; ++j) {
            double t = d.lo + d.length() * j / 400;
            RollState s = roll_state(base.curve, cfg, t);
            CHECK(std::abs(std::abs(s.contact - s.center) - cfg.radius) < 1e-8);
            CHECK(std::abs(std::abs(s.center - base.curve.position(t)) - cfg.radius) < 1e-8);
            CHECK(std::abs((s.trochoid - s.center) - (1 + k) * (s.contact - s.center)) < 1e-12);
          }
          for (double t : contacts) {
            if (t + 1e-4 > d.hi) continue;
            RollState s = roll_state(base.curve, cfg, t);
            CHECK(std::abs(std::remainder(s.theta, 2 * kPi)) < 1e-6);
            CHECK(std::abs(s.contact - base.curve.position(t)) < 1e-5);
            if (!reverse) {
              const double h = 1e-4;
              double speed = std::abs(roll_state(base.curve, cfg, t + h).contact -
                                      roll_state(base.curve, cfg, t - h).contact) /
                             (2 * h);
              CHECK(speed < 1e-2 * std::abs(base.curve.velocity(t)));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("trochoid factor") {
  ParamCurve circle = ParamCurve::circle(3, {0, kTwoPi});
  RollConfig cfg;
  for (double t : {0.0, 1.0, 4.0}) {
    cfg.k = 0;
    RollState s = roll_state(circle, cfg, t);
    CHECK(s.trochoid == s.contact);
    cfg.k = -1;
    s = roll_state(circle, cfg, t);
    CHECK(std::abs(s.trochoid - s.center) < 1e-15);
  }
}

TEST_CASE("rolling depends on arc length, not parameter speed") {
  const double R = 3;
  ParamCurve slow = ParamCurve::circle(R, {0, kTwoPi});
  ParamCurve fast(parse("R*cos(2*t)"), parse("R*sin(2*t)"), {{"R", R}}, {0, kPi});
  for (RollSide side : {RollSide::Normal, RollSide::Antinormal}) {
    for (bool reverse : {false, true}) {
      RollConfig cfg;
      cfg.radius = 0.7;
      cfg.side = side;
      cfg.reverse = reverse;
      cfg.k = 0.5;
      for (int j = 0; j <= 200; ++j) {
        double u = kPi * j / 200;
        CHECK(std::abs(roll_state(fast, cfg, u).trochoid - roll_state(slow, cfg, 2 * u).trochoid) < 1e-7);
      }
    }
  }
}

TEST_CASE("reverse rolling keeps the contact point sliding") {
  // With theta -> -theta the traced point meets the base curve when the roll
  // angle is a multiple of 2pi, but it moves there at twice the base speed.
  ParamCurve line = ParamCurve::line({0, 20});
  RollConfig cfg;
  cfg.reverse = true;
  double t = kTwoPi;
  RollState s = roll_state(line, cfg, t);
  CHECK(std::abs(s.contact - Point(t, 0)) < 1e-10);
  const double h = 1e-4;
  double speed = std::abs(roll_state(line, cfg, t + h).contact - roll_state(line, cfg, t - h).contact) / (2 * h);
  CHECK(std::abs(speed - 2) < 1e-6);
}
