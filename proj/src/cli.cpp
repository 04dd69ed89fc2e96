#include "curvekit/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include "curvekit/area.hpp"
#include "curvekit/error.hpp"
#include "curvekit/intersect.hpp"
#include "curvekit/polar.hpp"
#include "curvekit/roulette.hpp"

namespace curvekit::cli {

using Json = nlohmann::ordered_json;

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  if (std::string_view(buf) == "-0") return "0";
  return buf;
}

namespace {

double rounded(double v) {
  double r = std::strtod(format_number(v).c_str(), nullptr);
  return r == 0.0 ? 0.0 : r;
}

// Everything a command needs, filled in by CLI11.
struct RunConfig {
  std::string c1;
  std::string c2;
  std::vector<std::string> params;
  std::string domain;
  int max_period = kDefaultMaxPeriod;
  std::string output;

  // area
  bool loop = false;
  int rose_n = 0;
  double limacon_lambda = 0.0;

  // symmetry
  std::string axis;
  std::string rotate;
  std::string reflect;

  // roulette
  std::string base = "line";
  std::string x_expr;
  std::string y_expr;
  double big_r = 1.0;
  double a = 3.0;
  double b = 2.0;
  double lambda = 2.0;
  double radius = 1.0;
  std::string side = "normal";
  bool reverse = false;
  double k = 0.0;
  std::string t0 = "0";
  std::string from = "0";
  std::string to = "2*pi";
  std::size_t samples = 1000;
  std::string format = "csv";
};

double number_arg(const std::string& text) {
  Expr e = parse(text);
  if (e.depends_on_variable()) throw InvalidArgument("expected a number, got '" + text + "'");
  return eval(e, 0.0);
}

Params parse_params(const std::vector<std::string>& items) {
  Params p;
  for (const auto& item : items) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw InvalidArgument("parameter binding must look like name=value: '" + item + "'");
    p[item.substr(0, eq)] = number_arg(item.substr(eq + 1));
  }
  return p;
}

std::optional<Interval> parse_domain(const std::string& text) {
  if (text.empty()) return std::nullopt;
  auto colon = text.find(':');
  if (colon == std::string::npos) throw InvalidArgument("domain must look like a:b");
  Interval iv{number_arg(text.substr(0, colon)), number_arg(text.substr(colon + 1))};
  if (!(iv.lo < iv.hi)) throw InvalidArgument("domain must satisfy a < b");
  return iv;
}

PolarCurve polar_curve(const std::string& text, const RunConfig& cfg) {
  if (text.empty()) throw InvalidArgument("missing curve expression");
  PolarCurve c(parse(text), parse_params(cfg.params));
  if (auto d = parse_domain(cfg.domain)) return c.with_domain(*d);
  return c;
}

Json header() {
  Json j;
  j["schema"] = kSchema;
  return j;
}

void emit_json(const Json& j, std::ostream& out) { out << j.dump(2) << '\n'; }

// ---------------------------------------------------------------------------

void cmd_intersect(const RunConfig& cfg, std::ostream& out) {
  PolarCurve c1 = polar_curve(cfg.c1, cfg);
  PolarCurve c2 = polar_curve(cfg.c2, cfg);
  IntersectOptions opts;
  opts.max_period = cfg.max_period;
  IntersectionResult res = intersections(c1, c2, opts);

  Json j = header();
  j["origin"] = res.origin;
  if (res.origin_witnesses)
    j["origin_witnesses"] = {rounded(res.origin_witnesses->first),
                             rounded(res.origin_witnesses->second)};
  Json points = Json::array();
  for (const auto& p : res.points) {
    points.push_back({{"x", rounded(p.z.real())},
                      {"y", rounded(p.z.imag())},
                      {"theta1", rounded(p.theta1)},
                      {"theta2", rounded(p.theta2)},
                      {"residual", rounded(p.residual)}});
  }
  j["points"] = std::move(points);
  emit_json(j, out);
}

void cmd_area(const RunConfig& cfg, std::ostream& out) {
  Json j = header();
  if (cfg.rose_n > 0) {
    j["kind"] = "rose";
    j["N"] = cfg.rose_n;
    j["area"] = rounded(rose_intersection_area(cfg.rose_n));
  } else if (cfg.limacon_lambda != 0.0) {
    LimaconAnalysis lim = limacon_analysis(cfg.limacon_lambda);
    j["kind"] = "limacon";
    j["lambda"] = rounded(lim.lambda);
    j["theta0"] = rounded(lim.theta0);
    j["phi0"] = rounded(lim.phi0);
    j["containment"] = lim.containment;
    if (lim.theta1) j["theta1"] = rounded(*lim.theta1);
    j["area"] = rounded(limacon_common_area(cfg.limacon_lambda));
  } else if (cfg.loop || cfg.c2.empty()) {
    j["kind"] = "region";
    j["area"] = rounded(curve_region_area(polar_curve(cfg.c1, cfg)));
  } else {
    j["kind"] = "intersection";
    j["area"] = rounded(curve_intersection_area(polar_curve(cfg.c1, cfg), polar_curve(cfg.c2, cfg)));
  }
  emit_json(j, out);
}

void cmd_period(const RunConfig& cfg, std::ostream& out) {
  PolarCurve c = polar_curve(cfg.c1, cfg);
  Json j = header();
  auto n = polar_period(c, cfg.max_period);
  j["period_multiple_of_pi"] = n ? Json(*n) : Json(nullptr);
  emit_json(j, out);
}

void cmd_symmetry(const RunConfig& cfg, std::ostream& out) {
  PolarCurve c = polar_curve(cfg.c1, cfg);
  Json j = header();
  bool symmetric = false;
  if (!cfg.rotate.empty()) {
    double theta0 = number_arg(cfg.rotate);
    j["test"] = "rotation";
    j["theta0"] = rounded(theta0);
    symmetric = is_rotation_symmetric(c, theta0, cfg.max_period);
  } else if (!cfg.reflect.empty()) {
    double theta0 = number_arg(cfg.reflect);
    j["test"] = "reflection";
    j["theta0"] = rounded(theta0);
    symmetric = is_reflection_symmetric(c, theta0, cfg.max_period);
  } else {
    const std::string axis = cfg.axis.empty() ? "x" : cfg.axis;
    j["axis"] = axis;
    if (axis == "x")
      symmetric = is_reflection_symmetric(c, 0.0, cfg.max_period);
    else if (axis == "y")
      symmetric = is_reflection_symmetric(c, kPi / 2, cfg.max_period);
    else if (axis == "origin")
      symmetric = is_rotation_symmetric(c, kPi, cfg.max_period);
    else
      throw InvalidArgument("axis must be x, y or origin");
  }
  j["symmetric"] = symmetric;
  emit_json(j, out);
}

void cmd_decompose(const RunConfig& cfg, std::ostream& out) {
  PolarCurve c = polar_curve(cfg.c1, cfg);
  if (cfg.domain.empty()) {
    if (c.period(cfg.max_period)) c = c.with_domain(function_period_window(c, cfg.max_period));
  }
  PiecewiseDecomposition dec = positive_pieces(c);
  Json j = header();
  j["domain"] = {rounded(c.domain().lo), rounded(c.domain().hi)};
  Json pieces = Json::array();
  for (const auto& p : dec.pieces) {
    pieces.push_back({{"expr", to_string(p.curve.expr())},
                      {"theta_from", rounded(p.interval.lo)},
                      {"theta_to", rounded(p.interval.hi)},
                      {"traced_twice", p.traced_twice}});
  }
  j["pieces"] = std::move(pieces);
  emit_json(j, out);
}

// ---------------------------------------------------------------------------

ParamCurve base_curve(const RunConfig& cfg, Interval domain) {
  if (cfg.base == "line") return ParamCurve::line(domain);
  if (cfg.base == "circle") return ParamCurve::circle(cfg.big_r, domain);
  if (cfg.base == "ellipse") return ParamCurve::ellipse(cfg.a, cfg.b, domain);
  if (cfg.base == "limacon") return ParamCurve::limacon(cfg.lambda, domain);
  if (cfg.base == "custom") {
    if (cfg.x_expr.empty() || cfg.y_expr.empty())
      throw InvalidArgument("custom base needs --x and --y");
    return ParamCurve(parse(cfg.x_expr), parse(cfg.y_expr), parse_params(cfg.params), domain);
  }
  throw InvalidArgument("unknown base curve '" + cfg.base + "'");
}

struct Polyline {
  std::vector<Point> points;
  const char* stroke;
};

void write_svg(const std::vector<Polyline>& lines, std::ostream& out) {
  double min_x = std::numeric_limits<double>::infinity();
  double max_x = -min_x;
  double min_y = min_x;
  double max_y = -min_x;
  for (const auto& line : lines) {
    for (Point p : line.points) {
      min_x = std::min(min_x, p.real());
      max_x = std::max(max_x, p.real());
      min_y = std::min(min_y, -p.imag());
      max_y = std::max(max_y, -p.imag());
    }
  }
  double w = max_x - min_x;
  double h = max_y - min_y;
  double fallback = std::max({w, h, 1.0});
  double mx = 0.05 * (w > 0 ? w : fallback);
  double my = 0.05 * (h > 0 ? h : fallback);

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << format_number(min_x - mx) << ' '
      << format_number(min_y - my) << ' ' << format_number(w + 2 * mx) << ' '
      << format_number(h + 2 * my) << "\">\n";
  for (const auto& line : lines) {
    out << "  <polyline fill=\"none\" stroke=\"" << line.stroke
        << "\" stroke-width=\"1\" vector-effect=\"non-scaling-stroke\" points=\"";
    for (std::size_t i = 0; i < line.points.size(); ++i) {
      if (i) out << ' ';
      out << format_number(line.points[i].real()) << ',' << format_number(-line.points[i].imag());
    }
    out << "\"/>\n";
  }
  out << "</svg>\n";
}

void cmd_roulette(const RunConfig& cfg, std::ostream& out) {
  const double t0 = number_arg(cfg.t0);
  const double from = number_arg(cfg.from);
  const double to = number_arg(cfg.to);
  if (from == to) throw InvalidArgument("--from and --to must differ");
  Interval domain{std::min({t0, from, to}), std::max({t0, from, to})};
  ParamCurve base = base_curve(cfg, domain);

  RollConfig roll;
  roll.radius = cfg.radius;
  if (cfg.side == "normal")
    roll.side = RollSide::Normal;
  else if (cfg.side == "antinormal")
    roll.side = RollSide::Antinormal;
  else
    throw InvalidArgument("side must be normal or antinormal");
  roll.reverse = cfg.reverse;
  roll.k = cfg.k;
  roll.t0 = t0;

  std::vector<Point> pts = trace(base, roll, from, to, cfg.samples);
  std::vector<double> ts = sample_parameters(from, to, cfg.samples);

  if (cfg.format == "csv") {
    out << "t,x,y\n";
    for (std::size_t i = 0; i < pts.size(); ++i)
      out << format_number(ts[i]) << ',' << format_number(pts[i].real()) << ','
          << format_number(pts[i].imag()) << '\n';
  } else if (cfg.format == "svg") {
    std::vector<Point> base_pts;
    base_pts.reserve(ts.size());
    for (double t : ts) base_pts.push_back(base.position(t));
    write_svg({{std::move(base_pts), "#888888"}, {std::move(pts), "#cc2222"}}, out);
  } else {
    throw InvalidArgument("format must be csv or svg");
  }
}

// ---------------------------------------------------------------------------

void add_curve_options(CLI::App* sub, RunConfig& cfg, bool two_curves) {
  sub->add_option("--c1", cfg.c1, "first curve r = f(theta)")->required();
  if (two_curves) sub->add_option("--c2", cfg.c2, "second curve r = g(theta)");
  sub->add_option("--param", cfg.params, "parameter binding name=value (repeatable)");
  sub->add_option("--max-period", cfg.max_period, "largest N tried for a period N*pi")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Polar curve intersections, areas and symmetries; roulettes of rolling circles"};
  app.name("curvekit");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("-o,--output", cfg.output, "write results to a file instead of stdout");

  auto* intersect = app.add_subcommand("intersect", "common points of two polar curves");
  add_curve_options(intersect, cfg, true);
  intersect->get_option("--c2")->required();

  auto* area = app.add_subcommand("area", "area of polar regions and their intersections");
  area->add_option("--c1", cfg.c1, "first curve");
  area->add_option("--c2", cfg.c2, "second curve");
  area->add_option("--param", cfg.params, "parameter binding name=value (repeatable)");
  area->add_flag("--loop", cfg.loop, "area enclosed by --c1 alone");
  area->add_option("--rose-N", cfg.rose_n, "common area of r = sin(N theta) and r = cos(N theta)")
      ->check(CLI::PositiveNumber);
  area->add_option("--limacon-lambda", cfg.limacon_lambda,
                   "common area of the large loop of 1 - lambda sin and the small loop of 1 + lambda cos");

  auto* period = app.add_subcommand("period", "polar period as a multiple of pi");
  add_curve_options(period, cfg, false);

  auto* symmetry = app.add_subcommand("symmetry", "rotation and reflection symmetry tests");
  add_curve_options(symmetry, cfg, false);
  symmetry->add_option("--axis", cfg.axis, "x, y or origin");
  symmetry->add_option("--rotate", cfg.rotate, "rotation angle theta0");
  symmetry->add_option("--reflect", cfg.reflect, "reflection line theta = theta0");

  auto* decompose = app.add_subcommand("decompose", "non-negative pieces of a polar curve");
  add_curve_options(decompose, cfg, false);
  decompose->add_option("--domain", cfg.domain, "theta range a:b");

  auto* roulette = app.add_subcommand("roulette", "trace of a circle rolling on a curve");
  roulette->add_option("--base", cfg.base, "line, circle, ellipse, limacon or custom");
  roulette->add_option("--x", cfg.x_expr, "x(t) of a custom base");
  roulette->add_option("--y", cfg.y_expr, "y(t) of a custom base");
  roulette->add_option("--param", cfg.params, "parameter binding for a custom base");
  roulette->add_option("--R", cfg.big_r, "circle radius");
  roulette->add_option("--a", cfg.a, "ellipse semi-axis along x");
  roulette->add_option("--b", cfg.b, "ellipse semi-axis along y");
  roulette->add_option("--lambda", cfg.lambda, "limacon parameter");
  roulette->add_option("--radius", cfg.radius, "rolling circle radius")->check(CLI::PositiveNumber);
  roulette->add_option("--side", cfg.side, "normal or antinormal");
  roulette->add_flag("--reverse", cfg.reverse, "negate the roll angle");
  roulette->add_option("--k", cfg.k, "trochoid factor: Q = P + k (P - c)");
  roulette->add_option("--t0", cfg.t0, "parameter of the initial contact");
  roulette->add_option("--from", cfg.from, "first parameter");
  roulette->add_option("--to", cfg.to, "last parameter");
  roulette->add_option("--samples", cfg.samples, "number of samples")->check(CLI::Range(2, 10000000));
  roulette->add_option("--format", cfg.format, "csv or svg");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream help;
    int code = app.exit(e, help, err);
    out << help.str();
    return code == 0 ? kOk : kUsageError;
  }

  std::ostringstream buffer;
  try {
    if (*intersect)
      cmd_intersect(cfg, buffer);
    else if (*area)
      cmd_area(cfg, buffer);
    else if (*period)
      cmd_period(cfg, buffer);
    else if (*symmetry)
      cmd_symmetry(cfg, buffer);
    else if (*decompose)
      cmd_decompose(cfg, buffer);
    else if (*roulette)
      cmd_roulette(cfg, buffer);
  } catch (const DegenerateError& e) {
    err << "error: " << e.what() << '\n';
    return kDegenerate;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  if (cfg.output.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(cfg.output, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << cfg.output << '\n';
      return kUsageError;
    }
    file << buffer.str();
  }
  return kOk;
}

}  // namespace curvekit::cli
