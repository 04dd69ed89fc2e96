#pragma once

// Reference computations for the tests, written without the library.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using Point = std::complex<double>;
using Fn = std::function<double(double)>;

inline constexpr double kPi = std::numbers::pi;

// ---------------------------------------------------------------------------
// Random expression text

class ExprGen {
 public:
  explicit ExprGen(std::uint64_t seed) : rng_(seed) {}

  // Any text the grammar accepts, including parameters, abs and unary minus.
  std::string any(int depth) {
    if (depth <= 0 || pick(4) == 0) return leaf();
    switch (pick(7)) {
      case 0: return any(depth - 1) + " + " + any(depth - 1);
      case 1: return any(depth - 1) + " - " + any(depth - 1);
      case 2: return any(depth - 1) + "*" + any(depth - 1);
      case 3: return any(depth - 1) + "/" + any(depth - 1);
      case 4: return "-" + any(depth - 1);
      case 5: return "(" + any(depth - 1) + ")^" + exponent();
      default: {
        static const char* fns[] = {"sin", "cos", "tan", "sqrt", "abs"};
        return std::string(fns[pick(5)]) + "(" + any(depth - 1) + ")";
      }
    }
  }

  // Text of a function of t that is smooth and finite everywhere.
  std::string smooth(int depth) {
    if (depth <= 0 || pick(5) == 0) return smooth_leaf();
    switch (pick(8)) {
      case 0: return "(" + smooth(depth - 1) + " + " + smooth(depth - 1) + ")";
      case 1: return "(" + smooth(depth - 1) + " - " + smooth(depth - 1) + ")";
      case 2: return "(" + smooth(depth - 1) + ")*(" + smooth(depth - 1) + ")";
      case 3: return "(" + smooth(depth - 1) + ")/(2 + sin(" + smooth(depth - 1) + "))";
      case 4: return "sqrt(3 + cos(" + smooth(depth - 1) + "))";
      case 5: return "(" + smooth(depth - 1) + ")^" + std::to_string(2 + pick(2));
      case 6: return "sin(" + smooth(depth - 1) + ")";
      default: return "cos(" + smooth(depth - 1) + ")";
    }
  }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

 private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  std::string leaf() {
    switch (pick(6)) {
      case 0: return "t";
      case 1: return "theta";
      case 2: return "pi";
      case 3: return pick(2) ? "lambda" : "R";
      case 4: return std::to_string(pick(10));
      default: {
        static const char* decimals[] = {"0.5", "2.25", "1e-3", "3.125", "1.5e2"};
        return decimals[pick(5)];
      }
    }
  }

  std::string smooth_leaf() {
    switch (pick(4)) {
      case 0:
      case 1: return "t";
      case 2: return std::to_string(1 + pick(4));
      default: return "0.5";
    }
  }

  std::string exponent() {
    switch (pick(3)) {
      case 0: return std::to_string(pick(4));
      case 1: return "0.5";
      default: return "-" + std::to_string(1 + pick(3));
    }
  }

  std::mt19937_64 rng_;
};

inline double central_difference(const Fn& f, double x, double h = 1e-5) {
  return (f(x + h) - f(x - h)) / (2 * h);
}

// ---------------------------------------------------------------------------
// Rasterized intersections: sample both polar graphs as polylines (a fixed
// number of samples per 2pi of angle), collect segment crossings and near
// touches, and cluster them.

struct RasterResult {
  std::size_t clusters = 0;
  bool origin = false;
  std::size_t nonzero = 0;
  std::vector<Point> centers;  // one representative per non-origin cluster
};

namespace detail {

struct Cell {
  long x, y;
  bool operator<(const Cell& o) const { return x != o.x ? x < o.x : y < o.y; }
};

inline double cross(Point a, Point b) { return a.real() * b.imag() - a.imag() * b.real(); }

inline double segment_distance(Point p, Point a, Point b) {
  Point d = b - a;
  double len2 = std::norm(d);
  double s = len2 > 0 ? std::clamp(std::real((p - a) * std::conj(d)) / len2, 0.0, 1.0) : 0.0;
  return std::abs(p - (a + s * d));
}

inline std::vector<Point> polyline(const Fn& f, double span, int samples_per_turn) {
  int samples = static_cast<int>(std::ceil(samples_per_turn * span / (2 * kPi)));
  std::vector<Point> pts;
  pts.reserve(samples + 1);
  for (int j = 0; j <= samples; ++j) {
    double t = span * j / samples;
    pts.push_back(std::polar(1.0, t) * f(t));
  }
  return pts;
}

}  // namespace detail

inline RasterResult raster_intersections(const Fn& f, double span_f, const Fn& g, double span_g,
                                         int samples_per_turn = 20000, double cluster_gap = 1e-3,
                                         double touch_tol = 1e-7) {
  using detail::Cell;
  const auto a = detail::polyline(f, span_f, samples_per_turn);
  const auto b = detail::polyline(g, span_g, samples_per_turn);
  const double cell = 0.01;
  auto cell_of = [cell](Point p) {
    return Cell{static_cast<long>(std::floor(p.real() / cell)), static_cast<long>(std::floor(p.imag() / cell))};
  };

  std::map<Cell, std::vector<int>> grid;
  for (int j = 0; j + 1 < static_cast<int>(b.size()); ++j) {
    Cell c0 = cell_of(b[j]);
    Cell c1 = cell_of(b[j + 1]);
    for (long x = std::min(c0.x, c1.x) - 1; x <= std::max(c0.x, c1.x) + 1; ++x)
      for (long y = std::min(c0.y, c1.y) - 1; y <= std::max(c0.y, c1.y) + 1; ++y) grid[{x, y}].push_back(j);
  }

  std::vector<Point> hits;
  for (int i = 0; i + 1 < static_cast<int>(a.size()); ++i) {
    auto it = grid.find(cell_of(a[i]));
    if (it == grid.end()) continue;
    for (int j : it->second) {
      Point p = a[i], r = a[i + 1] - a[i];
      Point q = b[j], s = b[j + 1] - b[j];
      double den = detail::cross(r, s);
      if (den != 0.0) {
        double u = detail::cross(q - p, s) / den;
        double v = detail::cross(q - p, r) / den;
        if (u >= 0 && u <= 1 && v >= 0 && v <= 1) hits.push_back(p + u * r);
      }
      if (detail::segment_distance(a[i], q, q + s) < touch_tol) hits.push_back(a[i]);
      if (detail::segment_distance(b[j], p, p + r) < touch_tol) hits.push_back(b[j]);
    }
  }

  // Single-link clustering with union-find.
  std::vector<std::size_t> parent(hits.size());
  for (std::size_t i = 0; i < hits.size(); ++i) parent[i] = i;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
    return parent[i] == i ? i : parent[i] = find(parent[i]);
  };
  std::vector<std::size_t> order(hits.size());
  for (std::size_t i = 0; i < hits.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return hits[x].real() < hits[y].real(); });
  for (std::size_t m = 0; m < order.size(); ++m) {
    for (std::size_t n = m + 1; n < order.size(); ++n) {
      Point p = hits[order[m]], q = hits[order[n]];
      if (q.real() - p.real() > cluster_gap) break;
      if (std::abs(p - q) < cluster_gap) parent[find(order[m])] = find(order[n]);
    }
  }

  RasterResult out;
  std::map<std::size_t, std::vector<Point>> groups;
  for (std::size_t i = 0; i < hits.size(); ++i) groups[find(i)].push_back(hits[i]);
  out.clusters = groups.size();
  for (const auto& [root, pts] : groups) {
    bool at_origin = std::any_of(pts.begin(), pts.end(), [&](Point p) { return std::abs(p) < cluster_gap; });
    if (at_origin) {
      out.origin = true;
    } else {
      ++out.nonzero;
      Point sum = 0;
      for (Point p : pts) sum += p;
      out.centers.push_back(sum / static_cast<double>(pts.size()));
    }
  }
  return out;
}

// Distance from p to {r(t) e^{it} : t in [lo, hi]}: dense scan, then golden
// section around the best sample.
inline double distance_to_polar_curve(const Fn& r, double lo, double hi, Point p, int scan = 4000) {
  auto dist = [&](double t) { return std::abs(std::polar(1.0, t) * r(t) - p); };
  double h = (hi - lo) / scan;
  int best = 0;
  double best_d = dist(lo);
  for (int j = 1; j <= scan; ++j) {
    double d = dist(lo + j * h);
    if (d < best_d) best_d = d, best = j;
  }
  double a = lo + std::max(0, best - 1) * h;
  double b = lo + std::min(scan, best + 1) * h;
  const double g = (std::sqrt(5.0) - 1) / 2;
  for (int it = 0; it < 100; ++it) {
    double x1 = b - g * (b - a);
    double x2 = a + g * (b - a);
    if (dist(x1) <= dist(x2))
      b = x2;
    else
      a = x1;
  }
  return std::min(best_d, dist(0.5 * (a + b)));
}

// ---------------------------------------------------------------------------
// Regions and Monte Carlo

// z lies in the region enclosed by the graph of f when its distance from the
// origin is at most the farthest graph point in its direction. f is scanned over
// 2 * half_turns half turns.
inline bool inside_graph(const Fn& f, int half_turns, Point z) {
  double rho = std::abs(z);
  double psi = std::arg(z);
  double best = 0.0;
  for (int n = 0; n < 2 * half_turns; ++n) best = std::max(best, (n % 2 ? -1.0 : 1.0) * f(psi + n * kPi));
  return rho <= best;
}

struct Estimate {
  double value = 0.0;
  double sigma = 0.0;
};

// Area of {z : inside(z)} by rejection sampling in the disk of radius R.
inline Estimate monte_carlo_area(const std::function<bool(Point)>& inside, double R, std::size_t n,
                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-R, R);
  std::size_t accepted = 0;
  std::size_t hits = 0;
  while (accepted < n) {
    Point z(u(rng), u(rng));
    if (std::abs(z) > R) continue;
    ++accepted;
    if (inside(z)) ++hits;
  }
  double p = static_cast<double>(hits) / n;
  double disk = kPi * R * R;
  return {disk * p, disk * std::sqrt(p * (1 - p) / n)};
}

// ---------------------------------------------------------------------------
// Closed forms

inline Point cycloid(double r, double t) {
  return {t - r * std::sin(t / r), r - r * std::cos(t / r)};
}

inline Point epicycloid(double R, double r, double t) {
  return (R + r) * std::polar(1.0, t) - r * std::polar(1.0, t * (1 + R / r));
}

inline Point hypocycloid(double R, double r, double t) {
  return (R - r) * std::polar(1.0, t) + r * std::polar(1.0, t * (1 - R / r));
}

inline double ellipse_perimeter(double a, double b) {
  double e2 = 1.0 - (b * b) / (a * a);
  return 4.0 * a * std::comp_ellint_2(std::sqrt(e2));
}

}  // namespace oracle
