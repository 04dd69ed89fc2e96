#pragma once

#include <atomic>
#include <memory>
#include <optional>
#include <vector>

#include "curvekit/expr.hpp"
#include "curvekit/types.hpp"

namespace curvekit {

// (r, theta) with signed radius. Canonical form: r >= 0, theta in [0, 2pi);
// the origin canonicalizes to (0, 0).
struct PolarPoint {
  double r = 0.0;
  double theta = 0.0;
};

PolarPoint canonicalize(PolarPoint p);
Point to_complex(PolarPoint p);
bool points_equal(PolarPoint p, PolarPoint q, double tol);

inline constexpr int kDefaultMaxPeriod = 64;

// r = f(theta) over a domain. Parameters are bound at construction. The polar
// period is computed on first request and cached; copies share the cache.
class PolarCurve {
 public:
  explicit PolarCurve(const Expr& f, const Params& params = {}, Interval domain = {0.0, kTwoPi});

  double operator()(double theta) const;
  Point point(double theta) const { return to_complex({(*this)(theta), theta}); }

  bool differentiable() const noexcept { return df_.has_value(); }
  // Throws NotDifferentiable if the expression has no derivative.
  double derivative(double theta) const;

  const Expr& expr() const noexcept { return f_; }
  Interval domain() const noexcept { return domain_; }

  // Smallest N <= max_N such that the graph has period N*pi.
  std::optional<int> period(int max_N = kDefaultMaxPeriod) const;

  PolarCurve with_domain(Interval domain) const;
  // theta -> f(theta - shift): the same graph rotated by `shift`.
  PolarCurve rotated(double shift) const;
  // theta -> f(theta + shift) on the same domain.
  PolarCurve shifted(double shift) const;

 private:
  Expr f_;
  std::optional<Expr> df_;
  Interval domain_;
  std::shared_ptr<std::atomic<int>> period_cache_;  // 0 = not computed
};

std::optional<int> polar_period(const PolarCurve& c, int max_N = kDefaultMaxPeriod);

// Interval [0, L] over which f itself repeats: L = N*pi for even N, 2N*pi for
// odd N. Throws Error if no period is found.
Interval function_period_window(const PolarCurve& c, int max_N = kDefaultMaxPeriod);

bool is_rotation_symmetric(const PolarCurve& c, double theta0, int max_n = kDefaultMaxPeriod);
bool is_reflection_symmetric(const PolarCurve& c, double theta0, int max_n = kDefaultMaxPeriod);

// Symmetric Hausdorff distance between the images of a over ia and b over ib.
// `samples` points of each curve are projected onto the other curve by a
// dense scan followed by golden-section refinement.
double curve_hausdorff(const PolarCurve& a, Interval ia, const PolarCurve& b, Interval ib,
                       int samples = 256);

struct PositivePiece {
  PolarCurve curve;  // non-negative on `interval`
  Interval interval;
  bool traced_twice = false;
};

struct PiecewiseDecomposition {
  std::vector<PositivePiece> pieces;
};

// Rewrites f on its domain as non-negative pieces. Where f <= 0 on an
// interval I the piece is phi -> -f(phi - pi) on I + pi. Intervals are moved
// into [0, 2pi) by whole turns, and on a full-period domain the pieces at the
// two ends are joined across the wrap.
PiecewiseDecomposition positive_pieces(const PolarCurve& c);

}  // namespace curvekit
