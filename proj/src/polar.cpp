#include "curvekit/polar.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "curvekit/error.hpp"
#include "curvekit/numerics.hpp"

namespace curvekit {

namespace {

constexpr int kSymmetrySamples = 512;
constexpr double kSymmetryTol = 1e-9;
constexpr double kSampleOffset = 0.3713;  // keeps samples off rational multiples of pi
constexpr double kZeroCurveTol = 1e-12;
constexpr double kTracedTwiceTol = 1e-6;
constexpr int kPieceSamples = 1024;
constexpr double kPieceRootTol = 1e-13;
constexpr double kTurnSlack = 1e-9;

double wrap_angle(double a) {
  double w = std::fmod(a, kTwoPi);
  if (w < 0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return w;
}

bool close(double a, double b) { return std::abs(a - b) < kSymmetryTol * (1.0 + std::abs(a)); }

}  // namespace

PolarPoint canonicalize(PolarPoint p) {
  if (p.r == 0.0) return {0.0, 0.0};
  if (p.r < 0) return {-p.r, wrap_angle(p.theta + kPi)};
  return {p.r, wrap_angle(p.theta)};
}

Point to_complex(PolarPoint p) { return std::polar(1.0, p.theta) * p.r; }

bool points_equal(PolarPoint p, PolarPoint q, double tol) {
  return std::abs(to_complex(p) - to_complex(q)) < tol;
}

// ---------------------------------------------------------------------------

PolarCurve::PolarCurve(const Expr& f, const Params& params, Interval domain)
    : f_(bind(f, params)), domain_(domain), period_cache_(std::make_shared<std::atomic<int>>(0)) {
  if (!(domain.lo < domain.hi)) throw InvalidArgument("polar curve: empty domain");
  try {
    df_ = differentiate(f_);
  } catch (const NotDifferentiable&) {
  }
}

double PolarCurve::operator()(double theta) const { return eval(f_, theta); }

double PolarCurve::derivative(double theta) const {
  if (!df_) throw NotDifferentiable("curve has no derivative");
  return eval(*df_, theta);
}

std::optional<int> PolarCurve::period(int max_N) const {
  int cached = period_cache_->load(std::memory_order_relaxed);
  if (cached > 0 && cached <= max_N) return cached;
  auto p = polar_period(*this, max_N);
  if (p) period_cache_->store(*p, std::memory_order_relaxed);
  return p;
}

PolarCurve PolarCurve::with_domain(Interval domain) const {
  PolarCurve c = *this;
  if (!(domain.lo < domain.hi)) throw InvalidArgument("polar curve: empty domain");
  c.domain_ = domain;
  return c;
}

PolarCurve PolarCurve::rotated(double shift) const { return shifted(-shift); }

PolarCurve PolarCurve::shifted(double shift) const {
  if (shift == 0.0) return *this;
  Expr arg = Expr::binary(shift > 0 ? Expr::BinaryOp::Add : Expr::BinaryOp::Sub, Expr::variable(),
                          Expr::constant(std::abs(shift)));
  return PolarCurve(substitute(f_, arg), {}, domain_);
}

// ---------------------------------------------------------------------------

std::optional<int> polar_period(const PolarCurve& c, int max_N) {
  for (int n = 1; n <= max_N; ++n) {
    const double span = n * kPi;
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    bool ok = true;
    for (int j = 0; j < kSymmetrySamples && ok; ++j) {
      double theta = (j + kSampleOffset) * span / kSymmetrySamples;
      ok = close(c(theta), sign * c(theta + span));
    }
    if (ok) return n;
  }
  return std::nullopt;
}

Interval function_period_window(const PolarCurve& c, int max_N) {
  auto n = c.period(max_N);
  if (!n) throw Error("curve has no polar period up to " + std::to_string(max_N) + "*pi");
  return {0.0, (*n % 2 == 0 ? *n : 2 * *n) * kPi};
}

namespace {

// For every sampled theta with f(theta) != 0, some n in [0, 2N] must satisfy
// f(theta) = (-1)^n f(image(theta) + n*pi).
template <typename Image>
bool symmetric_under(const PolarCurve& c, int max_n, Image image) {
  int window = c.period(max_n).value_or(max_n);
  const double span = window * kPi;
  const int samples = kSymmetrySamples;
  for (int j = 0; j < samples; ++j) {
    double theta = (j + kSampleOffset) * span / samples;
    double r = c(theta);
    if (std::abs(r) < kSymmetryTol) continue;
    bool found = false;
    for (int n = 0; n <= 2 * window && !found; ++n) {
      double s = (n % 2 == 0) ? 1.0 : -1.0;
      found = close(r, s * c(image(theta) + n * kPi));
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace

bool is_rotation_symmetric(const PolarCurve& c, double theta0, int max_n) {
  return symmetric_under(c, max_n, [theta0](double t) { return t + theta0; });
}

bool is_reflection_symmetric(const PolarCurve& c, double theta0, int max_n) {
  return symmetric_under(c, max_n, [theta0](double t) { return 2.0 * theta0 - t; });
}

// ---------------------------------------------------------------------------

namespace {

constexpr int kProjectionGrid = 1024;

double distance_to_curve(Point p, const PolarCurve& c, Interval iv) {
  auto dist = [&](double t) { return std::abs(c.point(t) - p); };
  int best = 0;
  double best_d = dist(iv.lo);
  const double h = iv.length() / kProjectionGrid;
  for (int j = 1; j <= kProjectionGrid; ++j) {
    double d = dist(iv.lo + j * h);
    if (d < best_d) {
      best_d = d;
      best = j;
    }
  }
  double lo = iv.lo + std::max(0, best - 1) * h;
  double hi = iv.lo + std::min(kProjectionGrid, best + 1) * h;
  const double inv_phi = 0.6180339887498949;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double d1 = dist(x1);
  double d2 = dist(x2);
  for (int it = 0; it < 80 && hi - lo > 1e-15 * (1.0 + std::abs(lo)); ++it) {
    if (d1 <= d2) {
      hi = x2;
      x2 = x1;
      d2 = d1;
      x1 = hi - inv_phi * (hi - lo);
      d1 = dist(x1);
    } else {
      lo = x1;
      x1 = x2;
      d1 = d2;
      x2 = lo + inv_phi * (hi - lo);
      d2 = dist(x2);
    }
  }
  return std::min({best_d, d1, d2});
}

double directed_hausdorff(const PolarCurve& a, Interval ia, const PolarCurve& b, Interval ib,
                          int samples) {
  double worst = 0.0;
  for (int j = 0; j < samples; ++j) {
    double t = ia.lo + ia.length() * j / (samples - 1);
    worst = std::max(worst, distance_to_curve(a.point(t), b, ib));
  }
  return worst;
}

}  // namespace

double curve_hausdorff(const PolarCurve& a, Interval ia, const PolarCurve& b, Interval ib,
                       int samples) {
  if (samples < 2) throw InvalidArgument("curve_hausdorff: need at least 2 samples");
  return std::max(directed_hausdorff(a, ia, b, ib, samples),
                  directed_hausdorff(b, ib, a, ia, samples));
}

// ---------------------------------------------------------------------------

namespace {

struct SignedRun {
  Interval iv;
  int sign;
};

// Moves [lo, hi] to start in [0, 2pi) by whole turns, adjusting the curve.
PositivePiece reduced_piece(const PolarCurve& g, Interval iv) {
  double turns = std::floor((iv.lo + kTurnSlack) / kTwoPi);
  if (turns == 0.0) return {g.with_domain(iv), iv, false};
  double shift = turns * kTwoPi;
  Interval moved{iv.lo - shift, iv.hi - shift};
  if (std::abs(moved.lo) < kTurnSlack) moved.lo = 0.0;
  return {g.shifted(shift).with_domain(moved), moved, false};
}

bool repeats_over_domain(const PolarCurve& c) {
  Interval d = c.domain();
  for (int j = 0; j < 16; ++j) {
    double t = d.lo + (j + kSampleOffset) * d.length() / 16;
    if (!close(c(t), c(t + d.length()))) return false;
  }
  return true;
}

}  // namespace

PiecewiseDecomposition positive_pieces(const PolarCurve& c) {
  const Interval d = c.domain();
  PiecewiseDecomposition out;

  bool all_zero = true;
  for (int j = 0; j <= kPieceSamples && all_zero; ++j)
    all_zero = std::abs(c(d.lo + d.length() * j / kPieceSamples)) < kZeroCurveTol;
  if (all_zero) {
    out.pieces.push_back({c, d, false});
    return out;
  }

  RootOptions opts;
  opts.tol = kPieceRootTol;
  if (c.differentiable()) opts.derivative = [&c](double t) { return c.derivative(t); };
  RootList roots = find_roots([&c](double t) { return c(t); }, d.lo, d.hi, opts);

  std::vector<double> cuts{d.lo};
  for (const Root& r : roots)
    if (r.x > cuts.back() + 1e-12 && r.x < d.hi - 1e-12) cuts.push_back(r.x);
  cuts.push_back(d.hi);

  std::vector<SignedRun> runs;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double mid = 0.5 * (cuts[i] + cuts[i + 1]);
    int s = c(mid) >= 0 ? 1 : -1;
    if (!runs.empty() && runs.back().sign == s)
      runs.back().iv.hi = cuts[i + 1];
    else
      runs.push_back({{cuts[i], cuts[i + 1]}, s});
  }

  // On a full period the last run continues into the first one.
  if (runs.size() > 1 && runs.front().sign == runs.back().sign && repeats_over_domain(c)) {
    runs.back().iv.hi = runs.front().iv.hi + d.length();
    runs.erase(runs.begin());
  }

  const PolarCurve flipped(Expr::unary(Expr::UnaryOp::Neg, c.shifted(-kPi).expr()), {}, d);
  for (const SignedRun& run : runs) {
    if (run.sign > 0)
      out.pieces.push_back(reduced_piece(c, run.iv));
    else
      out.pieces.push_back(reduced_piece(flipped, {run.iv.lo + kPi, run.iv.hi + kPi}));
  }

  for (std::size_t i = 1; i < out.pieces.size(); ++i) {
    auto& p = out.pieces[i];
    for (std::size_t j = 0; j < i && !p.traced_twice; ++j) {
      const auto& q = out.pieces[j];
      if (q.traced_twice) continue;
      p.traced_twice = curve_hausdorff(p.curve, p.interval, q.curve, q.interval) < kTracedTwiceTol;
    }
  }
  return out;
}

}  // namespace curvekit
