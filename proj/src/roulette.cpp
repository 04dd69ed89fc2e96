#include "curvekit/roulette.hpp"

#include <cmath>
#include <string>

#include "curvekit/error.hpp"
#include "curvekit/numerics.hpp"

namespace curvekit {

namespace {

constexpr int kRegularitySamples = 1024;
constexpr double kArcTol = 1e-12;
constexpr Point kI{0.0, 1.0};

}  // namespace

ParamCurve::ParamCurve(const Expr& x, const Expr& y, const Params& params, Interval domain)
    : x_(bind(x, params)),
      y_(bind(y, params)),
      dx_(differentiate(x_)),
      dy_(differentiate(y_)),
      domain_(domain) {
  check_regular();
}

ParamCurve::ParamCurve(const Expr& x, const Expr& y, const Expr& dx, const Expr& dy,
                       const Params& params, Interval domain)
    : x_(bind(x, params)),
      y_(bind(y, params)),
      dx_(bind(dx, params)),
      dy_(bind(dy, params)),
      domain_(domain) {
  check_regular();
}

void ParamCurve::check_regular() const {
  if (!(domain_.lo < domain_.hi)) throw InvalidArgument("parameterized curve: empty domain");
  for (int j = 0; j <= kRegularitySamples; ++j) {
    double t = domain_.lo + domain_.length() * j / kRegularitySamples;
    if (std::abs(velocity(t)) <= kRegularityTol)
      throw DegenerateError("curve is not regular at t = " + std::to_string(t));
  }
}

ParamCurve ParamCurve::line(Interval domain) {
  return ParamCurve(Expr::variable(), Expr::constant(0), {}, domain);
}

ParamCurve ParamCurve::circle(double radius, Interval domain) {
  return ParamCurve(parse("R*cos(t)"), parse("R*sin(t)"), {{"R", radius}}, domain);
}

ParamCurve ParamCurve::ellipse(double a, double b, Interval domain) {
  return ParamCurve(parse("a*cos(t)"), parse("b*sin(t)"), {{"a", a}, {"b", b}}, domain);
}

ParamCurve ParamCurve::limacon(double lambda, Interval domain) {
  return ParamCurve(parse("(1 + lambda*cos(t))*cos(t)"), parse("(1 + lambda*cos(t))*sin(t)"),
                    {{"lambda", lambda}}, domain);
}

Point ParamCurve::position(double t) const { return {eval(x_, t), eval(y_, t)}; }

Point ParamCurve::velocity(double t) const { return {eval(dx_, t), eval(dy_, t)}; }

double arc_length(const ParamCurve& c, double t0, double t) {
  return integrate([&c](double u) { return std::abs(c.velocity(u)); }, t0, t, kArcTol);
}

namespace {

void check_in_domain(const ParamCurve& c, double t) {
  Interval d = c.domain();
  double slack = 1e-12 * (1.0 + std::abs(d.lo) + std::abs(d.hi));
  if (t < d.lo - slack || t > d.hi + slack)
    throw InvalidArgument("parameter " + std::to_string(t) + " outside the curve domain");
}

RollState state_at(const ParamCurve& c, const RollConfig& cfg, double t, double arc) {
  Point v = c.velocity(t);
  double speed = std::abs(v);
  if (speed <= kRegularityTol) throw DegenerateError("curve is not regular at t = " + std::to_string(t));
  const Point u = v / speed;
  const double r = cfg.radius;
  const double theta = cfg.reverse ? -arc / r : arc / r;
  const Point alpha = c.position(t);

  RollState s;
  s.t = t;
  s.theta = theta;
  if (cfg.side == RollSide::Normal) {
    s.center = alpha + kI * u * r;
    s.contact = s.center - kI * u * r * std::polar(1.0, -theta);
  } else {
    s.center = alpha - kI * u * r;
    s.contact = s.center + kI * u * r * std::polar(1.0, theta);
  }
  s.trochoid = s.contact + cfg.k * (s.contact - s.center);
  return s;
}

void check_config(const RollConfig& cfg) {
  if (!(cfg.radius > 0)) throw InvalidArgument("rolling radius must be positive");
}

}  // namespace

RollState roll_state(const ParamCurve& c, const RollConfig& cfg, double t) {
  check_config(cfg);
  check_in_domain(c, cfg.t0);
  check_in_domain(c, t);
  return state_at(c, cfg, t, arc_length(c, cfg.t0, t));
}

std::vector<double> sample_parameters(double t_from, double t_to, std::size_t samples) {
  if (samples < 2) throw InvalidArgument("need at least 2 samples");
  std::vector<double> ts(samples);
  for (std::size_t i = 0; i < samples; ++i)
    ts[i] = i + 1 == samples ? t_to
                             : t_from + (t_to - t_from) * static_cast<double>(i) /
                                            static_cast<double>(samples - 1);
  return ts;
}

std::vector<Point> trace(const ParamCurve& c, const RollConfig& cfg, double t_from, double t_to,
                         std::size_t samples) {
  check_config(cfg);
  std::vector<double> ts = sample_parameters(t_from, t_to, samples);
  check_in_domain(c, cfg.t0);
  check_in_domain(c, t_from);
  check_in_domain(c, t_to);

  std::vector<Point> out;
  out.reserve(samples);
  double arc = arc_length(c, cfg.t0, t_from);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i > 0) arc += arc_length(c, ts[i - 1], ts[i]);
    out.push_back(state_at(c, cfg, ts[i], arc).trochoid);
  }
  return out;
}

Point cycloid_point(double r, double t) {
  if (!(r > 0)) throw InvalidArgument("cycloid: radius must be positive");
  return t + kI * r - kI * r * std::polar(1.0, -t / r);
}

namespace {

void check_radii(double R, double r) {
  if (!(r > 0 && R > r)) throw InvalidArgument("need R > r > 0");
}

}  // namespace

Point epicycloid_point(double R, double r, double t) {
  check_radii(R, r);
  return (R + r) * std::polar(1.0, t) - r * std::polar(1.0, t * (1.0 + R / r));
}

Point hypocycloid_point(double R, double r, double t) {
  check_radii(R, r);
  return (R - r) * std::polar(1.0, t) + r * std::polar(1.0, t * (1.0 - R / r));
}

}  // namespace curvekit
