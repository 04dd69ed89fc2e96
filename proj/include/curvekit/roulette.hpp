#pragma once

#include <cstddef>
#include <vector>

#include "curvekit/expr.hpp"
#include "curvekit/types.hpp"

namespace curvekit {

// Regular parameterized curve alpha(t) = x(t) + i y(t). The derivative is
// symbolic unless overridden.
class ParamCurve {
 public:
  // Throws DegenerateError if |alpha'(t)| <= 1e-9 at any of 1024 samples of
  // the domain, NotDifferentiable if no symbolic derivative exists.
  ParamCurve(const Expr& x, const Expr& y, const Params& params, Interval domain);
  ParamCurve(const Expr& x, const Expr& y, const Expr& dx, const Expr& dy, const Params& params,
             Interval domain);

  static ParamCurve line(Interval domain);                            // alpha(t) = t
  static ParamCurve circle(double radius, Interval domain);           // R e^{it}
  static ParamCurve ellipse(double a, double b, Interval domain);     // a cos t + i b sin t
  static ParamCurve limacon(double lambda, Interval domain);          // (1 + lambda cos t) e^{it}

  Point position(double t) const;
  Point velocity(double t) const;
  Interval domain() const noexcept { return domain_; }

 private:
  void check_regular() const;

  Expr x_, y_, dx_, dy_;
  Interval domain_;
};

enum class RollSide {
  Normal,      // center on the side of the principal normal i alpha'
  Antinormal,  // center on the opposite side
};

struct RollConfig {
  double radius = 1.0;
  RollSide side = RollSide::Normal;
  bool reverse = false;  // roll angle theta(t) -> -theta(t)
  double k = 0.0;        // Q = P + k (P - c)
  double t0 = 0.0;       // parameter of the initial contact
};

struct RollState {
  double t = 0.0;
  Point center;
  double theta = 0.0;  // roll angle
  Point contact;       // P: the traced initial point of contact
  Point trochoid;      // Q
};

inline constexpr double kRegularityTol = 1e-9;

// Signed arc length from t0 to t.
double arc_length(const ParamCurve& c, double t0, double t);

RollState roll_state(const ParamCurve& c, const RollConfig& cfg, double t);

// Uniformly spaced parameters from t_from to t_to inclusive.
std::vector<double> sample_parameters(double t_from, double t_to, std::size_t samples);

// Q at sample_parameters(t_from, t_to, samples). Arc length accumulates one
// sample gap at a time.
std::vector<Point> trace(const ParamCurve& c, const RollConfig& cfg, double t_from, double t_to,
                         std::size_t samples);

Point cycloid_point(double r, double t);
// Both require R > r > 0 and throw InvalidArgument otherwise.
Point epicycloid_point(double R, double r, double t);
Point hypocycloid_point(double R, double r, double t);

}  // namespace curvekit
