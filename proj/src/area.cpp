#include "curvekit/area.hpp"

#include <algorithm>
#include <cmath>

#include "curvekit/error.hpp"
#include "curvekit/numerics.hpp"

namespace curvekit {

namespace {

constexpr int kRegionSamples = 1024;
constexpr double kNegativeSlack = 1e-9;
constexpr double kProbe = 1e-4;
constexpr double kMinSector = 1e-13;

// Part of a region's angular interval lying in one turn [0, 2pi]; the
// boundary value at angle x is curve(x + shift).
struct Segment {
  double lo;
  double hi;
  double shift;
  const PolarCurve* curve;

  double radius(double x) const { return (*curve)(x + shift); }
  double slope(double x) const { return curve->derivative(x + shift); }
};

std::vector<Segment> split_turns(const PolarCurve& c, Interval iv) {
  std::vector<Segment> out;
  double cur = iv.lo;
  while (iv.hi - cur > kMinSector) {
    double k = std::floor(cur / kTwoPi);
    double turn_end = (k + 1) * kTwoPi;
    if (turn_end - cur <= kMinSector) {
      k += 1;
      turn_end += kTwoPi;
    }
    double shift = k * kTwoPi;
    double hi = std::min(iv.hi, turn_end);
    double lo = std::max(0.0, cur - shift);
    out.push_back({lo, hi == turn_end ? kTwoPi : std::min(kTwoPi, hi - shift), shift, &c});
    cur = hi;
  }
  return out;
}

ScalarFn difference(const Segment& a, const Segment& b) {
  return [a, b](double x) { return a.radius(x) - b.radius(x); };
}

RootList difference_roots(const Segment& a, const Segment& b, double lo, double hi) {
  RootOptions opts;
  if (a.curve->differentiable() && b.curve->differentiable())
    opts.derivative = [a, b](double x) { return a.slope(x) - b.slope(x); };
  return find_roots(difference(a, b), lo, hi, opts);
}

double half_square_integral(const ScalarFn& r, double lo, double hi) {
  return 0.5 * integrate([&r](double x) {
    double v = r(x);
    return v * v;
  }, lo, hi, kAreaTol);
}

}  // namespace

SectorRegion::SectorRegion(PolarCurve boundary, Interval interval)
    : boundary_(std::move(boundary)), interval_(interval) {
  if (!(interval.lo < interval.hi)) throw InvalidArgument("sector region: empty interval");
  if (interval.length() > kTwoPi + 1e-12)
    throw InvalidArgument("sector region: interval longer than a full turn");
  for (int j = 0; j <= kRegionSamples; ++j) {
    double t = interval.lo + interval.length() * j / kRegionSamples;
    if (boundary_(t) < -kNegativeSlack)
      throw InvalidArgument("sector region: boundary is negative at theta = " + std::to_string(t));
  }
}

bool SectorRegion::contains(Point z) const {
  double rho = std::abs(z);
  if (rho == 0.0) return true;
  double psi = std::arg(z);
  double k = std::ceil((interval_.lo - psi) / kTwoPi);
  for (double t = psi + k * kTwoPi; t <= interval_.hi; t += kTwoPi)
    if (rho <= boundary_(t)) return true;
  return false;
}

double loop_area(const SectorRegion& region) {
  Interval iv = region.interval();
  return half_square_integral([&region](double x) { return region.radius(x); }, iv.lo, iv.hi);
}

OverlapDetail region_intersection_detail(const SectorRegion& a, const SectorRegion& b) {
  struct Sector {
    double lo, hi;
    Segment sa, sb;
  };
  auto segs_a = split_turns(a.boundary(), a.interval());
  auto segs_b = split_turns(b.boundary(), b.interval());
  std::vector<Sector> sectors;
  for (const Segment& sa : segs_a) {
    for (const Segment& sb : segs_b) {
      double lo = std::max(sa.lo, sb.lo);
      double hi = std::min(sa.hi, sb.hi);
      if (hi - lo > kMinSector) sectors.push_back({lo, hi, sa, sb});
    }
  }
  std::sort(sectors.begin(), sectors.end(), [](const Sector& x, const Sector& y) { return x.lo < y.lo; });

  OverlapDetail out;
  for (const Sector& s : sectors) {
    ScalarFn h = difference(s.sa, s.sb);
    std::vector<double> cuts{s.lo};
    for (const Root& r : difference_roots(s.sa, s.sb, s.lo, s.hi)) {
      if (r.x <= s.lo + 1e-12 || r.x >= s.hi - 1e-12) continue;
      double left = h(std::max(s.lo, r.x - kProbe));
      double right = h(std::min(s.hi, r.x + kProbe));
      if ((left < 0) != (right < 0))
        out.crossings.push_back(r.x);
      else
        out.touches.push_back(r.x);
      cuts.push_back(r.x);
    }
    cuts.push_back(s.hi);
    ScalarFn lower = [&s](double x) { return std::min(s.sa.radius(x), s.sb.radius(x)); };
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      out.area += half_square_integral(lower, cuts[i], cuts[i + 1]);
  }
  return out;
}

double region_intersection_area(const SectorRegion& a, const SectorRegion& b) {
  return region_intersection_detail(a, b).area;
}

double rose_intersection_area(int n) {
  if (n < 1) throw InvalidArgument("rose_intersection_area: N must be positive");
  const Params p{{"N", static_cast<double>(n)}};
  SectorRegion sin_petal(PolarCurve(parse("sin(N*t)"), p), {0.0, kPi / n});
  SectorRegion cos_petal(PolarCurve(parse("cos(N*t)"), p), {-kPi / (2 * n), kPi / (2 * n)});
  double sector = region_intersection_area(sin_petal, cos_petal);
  return sector * (n % 2 == 1 ? n : 2 * n);
}

// ---------------------------------------------------------------------------

LimaconAnalysis limacon_analysis(double lambda) {
  if (!(lambda > 1.0)) throw InvalidArgument("limacon_analysis: lambda must exceed 1");
  const Params p{{"lambda", lambda}};
  const double theta0 = std::asin(1.0 / lambda);
  const double phi0 = std::acos(-1.0 / lambda);
  LimaconAnalysis out{
      .lambda = lambda,
      .theta0 = theta0,
      .phi0 = phi0,
      .large_loop = SectorRegion(PolarCurve(parse("1 - lambda*sin(t)"), p),
                                 {kPi - theta0, theta0 + kTwoPi}),
      .small_loop = SectorRegion(PolarCurve(parse("lambda*cos(t) - 1"), p),
                                 {theta0 + 1.5 * kPi, 3.0 * kPi - (theta0 + 0.5 * kPi)}),
      .containment = theta0 >= kPi / 4,
      .theta1 = std::nullopt,
  };
  if (!out.containment)
    out.theta1 = std::asin(1.0 / lambda - std::sqrt(0.5 - 1.0 / (lambda * lambda)));
  return out;
}

double limacon_common_area(double lambda) {
  LimaconAnalysis lim = limacon_analysis(lambda);
  if (lim.containment) return loop_area(lim.small_loop);

  const double lo = lim.theta0 + 1.5 * kPi;
  const double hi = lim.theta0 + kTwoPi;
  double split = *lim.theta1 + kTwoPi;
  if (!(split > lo && split < hi)) throw Error("limacon_common_area: crossing outside the sector");
  const auto& small = lim.small_loop;
  const auto& large = lim.large_loop;
  return half_square_integral([&small](double x) { return small.radius(x); }, lo, split) +
         half_square_integral([&large](double x) { return large.radius(x); }, split, hi);
}

// ---------------------------------------------------------------------------

namespace {

struct Envelope {
  std::vector<PositivePiece> pieces;
  std::vector<Segment> segments;
};

// The segments point into `pieces`, so an Envelope is built in place.
void build_envelope(const PolarCurve& c, Envelope& env) {
  PolarCurve full = c.with_domain(function_period_window(c));
  for (auto& piece : positive_pieces(full).pieces)
    if (!piece.traced_twice) env.pieces.push_back(std::move(piece));
  for (const auto& piece : env.pieces) {
    auto segs = split_turns(piece.curve, piece.interval);
    env.segments.insert(env.segments.end(), segs.begin(), segs.end());
  }
}

double envelope_at(const std::vector<Segment>& segs, double mid, double x) {
  double best = 0.0;
  for (const Segment& s : segs)
    if (s.lo <= mid && mid <= s.hi) best = std::max(best, s.radius(x));
  return best;
}

double envelope_area(const Envelope& a, const Envelope* b) {
  std::vector<Segment> all = a.segments;
  if (b) all.insert(all.end(), b->segments.begin(), b->segments.end());

  std::vector<double> cuts{0.0, kTwoPi};
  for (const Segment& s : all) {
    cuts.push_back(s.lo);
    cuts.push_back(s.hi);
  }
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      double lo = std::max(all[i].lo, all[j].lo);
      double hi = std::min(all[i].hi, all[j].hi);
      if (hi - lo <= kMinSector) continue;
      for (const Root& r : difference_roots(all[i], all[j], lo, hi)) cuts.push_back(r.x);
    }
  }
  std::sort(cuts.begin(), cuts.end());

  double area = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double u = cuts[i];
    double v = cuts[i + 1];
    if (v - u <= kMinSector) continue;
    double mid = 0.5 * (u + v);
    ScalarFn r = [&](double x) {
      double ra = envelope_at(a.segments, mid, x);
      return b ? std::min(ra, envelope_at(b->segments, mid, x)) : ra;
    };
    area += half_square_integral(r, u, v);
  }
  return area;
}

}  // namespace

double curve_region_area(const PolarCurve& c) {
  Envelope env;
  build_envelope(c, env);
  return envelope_area(env, nullptr);
}

double curve_intersection_area(const PolarCurve& c1, const PolarCurve& c2) {
  Envelope a;
  Envelope b;
  build_envelope(c1, a);
  build_envelope(c2, b);
  return envelope_area(a, &b);
}

}  // namespace curvekit
