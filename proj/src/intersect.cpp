#include "curvekit/intersect.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "curvekit/error.hpp"
#include "curvekit/numerics.hpp"

namespace curvekit {

std::optional<double> origin_on_curve(const PolarCurve& c) {
  RootOptions opts;
  if (c.differentiable()) opts.derivative = [&c](double t) { return c.derivative(t); };
  const Interval d = c.domain();
  for (const Root& r : find_roots([&c](double t) { return c(t); }, d.lo, d.hi, opts))
    if (r.residual < kZeroRadiusTol) return r.x;
  return std::nullopt;
}

namespace {

constexpr double kIntersectRootTol = 1e-12;

int window_of(const PolarCurve& c, const std::optional<int>& supplied, int max_period) {
  if (auto n = c.period(max_period)) return *n;
  if (supplied && *supplied > 0) return *supplied;
  throw Error("intersect: curve has no polar period up to " + std::to_string(max_period) + "*pi");
}

double angle_key(Point z) {
  double a = std::arg(z);
  if (a < 0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  return a;
}

}  // namespace

IntersectionResult intersections(const PolarCurve& c1, const PolarCurve& c2,
                                 const IntersectOptions& opts) {
  const int n1 = window_of(c1, opts.window1, opts.max_period);
  const int n2 = window_of(c2, opts.window2, opts.max_period);
  const Interval w1{0.0, n1 * kPi};
  const Interval w2{0.0, n2 * kPi};

  if (curve_hausdorff(c1, w1, c2, w2) < kIdenticalCurveTol) throw IdenticalCurves();

  IntersectionResult result;
  auto o1 = origin_on_curve(c1.with_domain(w1));
  auto o2 = origin_on_curve(c2.with_domain(w2));
  if (o1 && o2) {
    result.origin = true;
    result.origin_witnesses = std::make_pair(*o1, *o2);
  }

  const int window = std::lcm(std::lcm(n1, n2), 2);
  const double span = window * kPi;
  const int shifts = (n2 + 1) / 2;
  const bool smooth = c1.differentiable() && c2.differentiable();

  std::vector<IntersectionPoint> found;
  for (int family = 0; family < 2; ++family) {
    // family 0: f(t) = g(t + 2n pi); family 1: f(t) = -g(t + pi + 2n pi)
    const double sign = family == 0 ? 1.0 : -1.0;
    for (int n = 0; n < shifts; ++n) {
      const double offset = 2.0 * n * kPi + (family == 0 ? 0.0 : kPi);
      ScalarFn h = [&](double t) { return c1(t) - sign * c2(t + offset); };
      RootOptions ro;
      ro.tol = kIntersectRootTol;
      ro.include_end = false;
      if (smooth)
        ro.derivative = [&](double t) { return c1.derivative(t) - sign * c2.derivative(t + offset); };
      for (const Root& r : find_roots(h, 0.0, span, ro)) {
        double f = c1(r.x);
        if (std::abs(f) < kZeroRadiusTol) continue;
        Point z = c1.point(r.x);
        double theta2 = r.x + offset;
        double residual = std::abs(z - c2.point(theta2));
        found.push_back({z, r.x, theta2, residual});
      }
    }
  }

  for (const IntersectionPoint& p : found) {
    auto same = std::find_if(result.points.begin(), result.points.end(), [&](const auto& q) {
      return std::abs(q.z - p.z) < kPointDedupeTol;
    });
    if (same == result.points.end())
      result.points.push_back(p);
    else if (p.residual < same->residual)
      *same = p;
  }
  std::sort(result.points.begin(), result.points.end(), [](const auto& a, const auto& b) {
    double ka = angle_key(a.z), kb = angle_key(b.z);
    if (ka != kb) return ka < kb;
    return std::abs(a.z) < std::abs(b.z);
  });
  return result;
}

std::size_t count_nonzero_intersections(const PolarCurve& c1, const PolarCurve& c2,
                                        const IntersectOptions& opts) {
  return intersections(c1, c2, opts).points.size();
}

}  // namespace curvekit
