#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "curvekit/error.hpp"
#include "curvekit/polar.hpp"

namespace curvekit {

class IdenticalCurves : public DegenerateError {
 public:
  IdenticalCurves() : DegenerateError("identical curves") {}
};

struct IntersectionPoint {
  Point z;
  double theta1 = 0.0;  // z = f(theta1) e^{i theta1}
  double theta2 = 0.0;  // z = g(theta2) e^{i theta2}
  double residual = 0.0;
};

// Non-zero common points in canonical order (argument in [0, 2pi), then
// modulus) and the origin, which has no polar angle and is tracked apart.
struct IntersectionResult {
  bool origin = false;
  std::optional<std::pair<double, double>> origin_witnesses;
  std::vector<IntersectionPoint> points;
};

inline constexpr double kZeroRadiusTol = 1e-9;
inline constexpr double kPointDedupeTol = 1e-8;
inline constexpr double kIdenticalCurveTol = 1e-6;

std::optional<double> origin_on_curve(const PolarCurve& c);

struct IntersectOptions {
  int max_period = kDefaultMaxPeriod;
  // Finite working windows, used when a curve has no polar period.
  std::optional<int> window1;
  std::optional<int> window2;
};

// Solves f(theta) = g(theta + 2n pi) and f(theta) = -g(theta + pi + 2n pi)
// over theta in [0, lcm(N1, N2, 2) pi) and 0 <= 2n pi < N2 pi. Throws
// IdenticalCurves when the two graphs coincide, and Error when a period is
// unknown.
IntersectionResult intersections(const PolarCurve& c1, const PolarCurve& c2,
                                 const IntersectOptions& opts = {});

std::size_t count_nonzero_intersections(const PolarCurve& c1, const PolarCurve& c2,
                                        const IntersectOptions& opts = {});

}  // namespace curvekit
