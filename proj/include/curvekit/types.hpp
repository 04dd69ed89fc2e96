#pragma once

#include <complex>
#include <functional>
#include <map>
#include <numbers>
#include <string>

namespace curvekit {

// A point of the plane, x + iy.
using Point = std::complex<double>;

using Params = std::map<std::string, double, std::less<>>;

using ScalarFn = std::function<double(double)>;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const noexcept { return hi - lo; }
  bool contains(double x) const noexcept { return lo <= x && x <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace curvekit
