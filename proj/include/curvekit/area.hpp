#pragma once

#include <optional>
#include <vector>

#include "curvekit/polar.hpp"

namespace curvekit {

// {(r, theta) : 0 <= r <= f(theta), theta in [a, b]} with f >= 0 on [a, b]
// and b - a <= 2pi.
class SectorRegion {
 public:
  // Throws InvalidArgument if f < -1e-9 at any of 1024 samples, or if the
  // interval is empty or longer than a full turn.
  SectorRegion(PolarCurve boundary, Interval interval);

  const PolarCurve& boundary() const noexcept { return boundary_; }
  Interval interval() const noexcept { return interval_; }

  double radius(double theta) const { return boundary_(theta); }
  // Membership by polar angle and distance from the origin.
  bool contains(Point z) const;

 private:
  PolarCurve boundary_;
  Interval interval_;
};

inline constexpr double kAreaTol = 1e-10;

double loop_area(const SectorRegion& region);

struct OverlapDetail {
  double area = 0.0;
  std::vector<double> crossings;  // angles in [0, 2pi) where the boundaries cross
  std::vector<double> touches;    // angles where they meet without crossing
};

// Area of A intersect B: on each overlapping sector (angles reduced mod 2pi),
// split at the roots of f - g and integrate min(f, g)^2 / 2.
OverlapDetail region_intersection_detail(const SectorRegion& a, const SectorRegion& b);
double region_intersection_area(const SectorRegion& a, const SectorRegion& b);

// Common area of the roses r = sin(N theta) and r = cos(N theta).
double rose_intersection_area(int n);

struct LimaconAnalysis {
  double lambda = 0.0;
  double theta0 = 0.0;  // asin(1/lambda): zero of 1 - lambda sin(theta)
  double phi0 = 0.0;    // acos(-1/lambda): zero of 1 + lambda cos(theta)
  SectorRegion large_loop;  // of r = 1 - lambda sin(theta)
  SectorRegion small_loop;  // of r = 1 + lambda cos(theta), as lambda cos(theta) - 1
  bool containment = false;  // small loop lies inside the large loop
  std::optional<double> theta1;  // crossing angle when not contained
};

// Throws InvalidArgument for lambda <= 1.
LimaconAnalysis limacon_analysis(double lambda);
double limacon_common_area(double lambda);

// Region enclosed by a whole polar graph: at each direction, the farthest
// radius over the graph's non-negative pieces. Pieces are taken over one
// period of f.
double curve_region_area(const PolarCurve& c);
double curve_intersection_area(const PolarCurve& c1, const PolarCurve& c2);

}  // namespace curvekit
