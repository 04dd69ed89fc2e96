#include "curvekit/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "curvekit/error.hpp"

namespace curvekit {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInvPhi = 0.6180339887498949;

double safe_eval(const ScalarFn& f, double x) {
  try {
    double v = f(x);
    return std::isfinite(v) ? v : kNaN;
  } catch (const EvalError&) {
    return kNaN;
  }
}

int sign(double v) { return (v > 0) - (v < 0); }

// Bisection on a bracket with f(lo), f(hi) of opposite sign. Returns NaN if
// the bracket runs into a point where f is undefined.
double bisect(const ScalarFn& f, double lo, double hi, double flo, double tol) {
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    double fm = safe_eval(f, mid);
    if (std::isnan(fm)) return kNaN;
    if (fm == 0.0) return mid;
    if (sign(fm) == sign(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Minimizer of |f| on [lo, hi] by golden-section search.
double golden_min_abs(const ScalarFn& f, double lo, double hi, double tol) {
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = std::abs(safe_eval(f, x1));
  double f2 = std::abs(safe_eval(f, x2));
  while (hi - lo > tol) {
    if (!(f1 > f2)) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = std::abs(safe_eval(f, x1));
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = std::abs(safe_eval(f, x2));
    }
    if (std::isnan(f1) || std::isnan(f2)) break;
  }
  return 0.5 * (lo + hi);
}

// Locates the extremum of f in [lo, hi] through a sign change of df, if any.
double tangent_point(const ScalarFn& df, double lo, double mid, double hi, double tol) {
  double dl = safe_eval(df, lo);
  double dm = safe_eval(df, mid);
  double dh = safe_eval(df, hi);
  if (dm == 0.0) return mid;
  if (dl == 0.0) return lo;
  if (dh == 0.0) return hi;
  if (sign(dl) * sign(dm) < 0) return bisect(df, lo, mid, dl, tol);
  if (sign(dm) * sign(dh) < 0) return bisect(df, mid, hi, dm, tol);
  return kNaN;
}

}  // namespace

std::size_t default_grid(double a, double b) {
  double n = std::ceil(static_cast<double>(kGridPerTwoPi) * (b - a) / kTwoPi);
  return static_cast<std::size_t>(std::max(16.0, n));
}

RootList find_roots(const ScalarFn& f, double a, double b, const RootOptions& opts) {
  if (!(a < b)) throw InvalidArgument("find_roots: empty interval");
  std::size_t n = opts.grid_n == 0 ? default_grid(a, b) : opts.grid_n;
  if (n < 2) throw InvalidArgument("find_roots: grid_n must be at least 2");
  const double tol = opts.tol;

  std::vector<double> xs(n + 1);
  std::vector<double> fs(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    xs[i] = i == n ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(n);
    fs[i] = safe_eval(f, xs[i]);
  }
  if (std::isnan(fs[0]) || std::isnan(fs[n]))
    throw InvalidArgument("find_roots: non-finite value at an endpoint");

  RootList found;
  auto record = [&](double x) {
    if (std::isnan(x)) return;
    double r = std::abs(safe_eval(f, x));
    if (!std::isnan(r)) found.push_back({x, r});
  };

  for (std::size_t i = 0; i <= n; ++i) {
    if (fs[i] == 0.0) found.push_back({xs[i], 0.0});
  }

  for (std::size_t i = 0; i < n; ++i) {
    double f0 = fs[i];
    double f1 = fs[i + 1];
    if (std::isnan(f0) || std::isnan(f1) || sign(f0) * sign(f1) >= 0) continue;
    double x = bisect(f, xs[i], xs[i + 1], f0, tol);
    if (std::isnan(x)) continue;
    double r = std::abs(safe_eval(f, x));
    // Across a pole |f| explodes instead of vanishing.
    if (std::isnan(r) || r > std::max(std::abs(f0), std::abs(f1))) continue;
    found.push_back({x, r});
  }

  for (std::size_t i = 0; i <= n; ++i) {
    double fi = fs[i];
    if (std::isnan(fi) || fi == 0.0) continue;
    std::size_t lo = i == 0 ? 0 : i - 1;
    std::size_t hi = i == n ? n : i + 1;
    bool is_min = true;
    for (std::size_t j : {lo, hi}) {
      if (j == i) continue;
      if (std::isnan(fs[j]) || sign(fs[j]) != sign(fi) || std::abs(fs[j]) < std::abs(fi))
        is_min = false;
    }
    if (!is_min) continue;
    double x = kNaN;
    if (opts.derivative) x = tangent_point(opts.derivative, xs[lo], xs[i], xs[hi], tol);
    if (std::isnan(x)) x = golden_min_abs(f, xs[lo], xs[hi], tol);
    double r = std::abs(safe_eval(f, x));
    if (!std::isnan(r) && r < opts.tangent_threshold) record(x);
  }

  std::sort(found.begin(), found.end(), [](const Root& p, const Root& q) { return p.x < q.x; });
  RootList roots;
  const double gap = 10.0 * tol;
  for (const Root& r : found) {
    if (!opts.include_end && r.x >= b - gap) continue;
    if (!roots.empty() && r.x - roots.back().x < gap) {
      if (r.residual < roots.back().residual) roots.back() = r;
      continue;
    }
    roots.push_back(r);
  }
  return roots;
}

RootList find_roots(const ScalarFn& f, double a, double b, std::size_t grid_n, double tol) {
  RootOptions opts;
  opts.grid_n = grid_n;
  opts.tol = tol;
  return find_roots(f, a, b, opts);
}

namespace {

constexpr int kMaxDepth = 40;
constexpr int kMinDepth = 4;

double sample(const ScalarFn& f, double x) {
  double v = f(x);
  if (!std::isfinite(v)) throw Error("integrate: non-finite sample");
  return v;
}

double simpson_step(const ScalarFn& f, double a, double b, double fa, double fm, double fb,
                    double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m);
  double rm = 0.5 * (m + b);
  double flm = sample(f, lm);
  double frm = sample(f, rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  bool converged = depth >= kMinDepth && std::abs(delta) <= 15.0 * tol;
  bool exhausted = depth >= kMaxDepth || lm <= a || rm >= b ||
                   tol < 1e-15 * std::abs(left + right);
  if (converged || exhausted) return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace

double integrate(const ScalarFn& f, double a, double b, double tol) {
  if (a == b) return 0.0;
  if (b < a) return -integrate(f, b, a, tol);
  double fa = sample(f, a);
  double fb = sample(f, b);
  double m = 0.5 * (a + b);
  double fm = sample(f, m);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, tol, 0);
}

}  // namespace curvekit
