#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <string_view>

namespace meanscope {

/// A convex function together with the interval it may be evaluated on.
///
/// `sample_lo`/`sample_hi` bound the points the verification suites draw.
/// `nonnegative_lo` is the left end of the region where f >= 0 inside the
/// sampling range, which the Jensen-gap and two-point bounds require.
struct ConvexFunction {
  std::string name;
  std::function<double(double)> f;
  double domain_lo;  // open lower end of the domain (-inf if none)
  double sample_lo;
  double sample_hi;
  double nonnegative_lo;

  double operator()(double x) const { return f(x); }
  bool in_domain(double x) const { return x > domain_lo && std::isfinite(x); }
};

/// exp, x^2, x^4, x log x, 1/x: the closed set used by every suite.
std::span<const ConvexFunction> convex_catalog();

/// Throws std::invalid_argument for unknown names.
const ConvexFunction& convex_function(std::string_view name);

}  // namespace meanscope
