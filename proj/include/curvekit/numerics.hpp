#pragma once

#include <cstddef>
#include <vector>

#include "curvekit/types.hpp"

namespace curvekit {

struct Root {
  double x = 0.0;
  double residual = 0.0;  // |f(x)|
};

// Strictly increasing; no two roots closer than the dedupe gap.
using RootList = std::vector<Root>;

inline constexpr double kDefaultRootTol = 1e-10;
inline constexpr double kTangentThreshold = 1e-8;
inline constexpr std::size_t kGridPerTwoPi = 2048;

struct RootOptions {
  std::size_t grid_n = 0;  // 0: kGridPerTwoPi per 2*pi of interval length
  double tol = kDefaultRootTol;
  bool include_end = true;  // false: search [a, b)
  double tangent_threshold = kTangentThreshold;
  // Optional derivative of f. When present, zeros that touch the axis are
  // located through a sign change of the derivative instead of by minimizing
  // |f|, which is only accurate to about sqrt(machine epsilon).
  ScalarFn derivative;
};

std::size_t default_grid(double a, double b);

// All roots of f in [a, b] (or [a, b)). Sign changes on the grid are refined
// by bisection; sign changes across which |f| grows (poles) are discarded;
// grid-local minima of |f| below the tangent threshold are reported as
// tangential roots. Points where f throws EvalError or is non-finite break
// the grid. Throws InvalidArgument for grid_n < 2, a >= b, or non-finite
// values at the endpoints.
RootList find_roots(const ScalarFn& f, double a, double b, const RootOptions& opts = {});

RootList find_roots(const ScalarFn& f, double a, double b, std::size_t grid_n, double tol);

inline constexpr double kDefaultQuadTol = 1e-10;

// Adaptive Simpson with Richardson correction, recursion depth capped at 40.
// The subdivision is fixed by (f, a, b, tol), so results are reproducible
// bit-for-bit. b < a integrates with reversed sign. Throws Error on a
// non-finite sample.
double integrate(const ScalarFn& f, double a, double b, double tol = kDefaultQuadTol);

}  // namespace curvekit
