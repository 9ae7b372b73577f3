#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <utility>

namespace meanscope::numerics {

/// Outcome of an adaptive integral over [0, 1].
///
/// `error_estimate` is the absolute difference between the last two
/// refinement levels. `converged` is false when the depth cap was hit; the
/// value is still the finest estimate available.
template <typename Value>
struct BasicQuadrature {
  Value value{};
  double error_estimate = 0.0;
  long evaluations = 0;
  int levels = 0;
  bool converged = false;
};

using QuadratureResult = BasicQuadrature<double>;

inline constexpr int kGaussNodes = 16;
inline constexpr int kMaxQuadratureDepth = 20;

struct GaussRule {
  std::array<double, kGaussNodes> nodes;    // on [0, 1]
  std::array<double, kGaussNodes> weights;  // sum to 1
};

/// 16-point Gauss-Legendre rule mapped to [0, 1].
const GaussRule& gauss_legendre_16();

/// Fixed-order rule on [0, 1]; no refinement, no error estimate.
template <typename F>
double gauss_fixed(F&& f) {
  const auto& rule = gauss_legendre_16();
  double sum = 0.0;
  for (int i = 0; i < kGaussNodes; ++i) sum += rule.weights[i] * f(rule.nodes[i]);
  return sum;
}

/// Composite Gauss-Legendre on [0, 1] with uniform panel bisection.
///
/// Level k uses 2^k panels. Refinement stops once
/// `norm(Q_k - Q_{k-1}) <= tol * max(1, norm(Q_k))` or the depth cap is hit.
/// `Value` needs `+`, `-`, and multiplication by double; `norm` maps a Value
/// to a nonnegative double. All entries of a vector/matrix value share one
/// node set.
template <typename Value, typename F, typename Norm>
BasicQuadrature<Value> integrate_unit_with(F&& f, Norm&& norm, double tol,
                                           int max_depth = kMaxQuadratureDepth) {
  const auto& rule = gauss_legendre_16();
  BasicQuadrature<Value> out;

  auto level_sum = [&](int level) {
    const long panels = 1L << level;
    const double h = 1.0 / static_cast<double>(panels);
    Value total{};
    bool first = true;
    for (long p = 0; p < panels; ++p) {
      const double left = h * static_cast<double>(p);
      for (int i = 0; i < kGaussNodes; ++i) {
        Value term = f(left + h * rule.nodes[i]) * (h * rule.weights[i]);
        if (first) {
          total = term;
          first = false;
        } else {
          total = total + term;
        }
      }
    }
    out.evaluations += panels * kGaussNodes;
    return total;
  };

  Value previous = level_sum(0);
  for (int level = 1; level <= max_depth; ++level) {
    Value current = level_sum(level);
    const double diff = norm(current - previous);
    out.value = current;
    out.error_estimate = diff;
    out.levels = level;
    const double scale = std::max(1.0, norm(current));
    if (diff <= tol * scale) {
      out.converged = true;
      return out;
    }
    previous = std::move(current);
  }
  return out;
}

/// Scalar integral of f over [0, 1].
QuadratureResult integrate_unit(const std::function<double(double)>& f, double tol);

enum class ExtremumKind { max, min };

struct ExtremumResult {
  double arg = 0.0;
  double value = 0.0;
  ExtremumKind kind = ExtremumKind::max;
  bool boundary_flag = false;
};

inline constexpr int kScanPoints = 4097;
inline constexpr double kDefaultAxisRange = 14.0;

/// Extremum of g on [lo, hi]: dense 4097-point scan, then golden-section
/// refinement inside the best cell. Ties resolve to the smallest argument.
ExtremumResult extremize_interval(const std::function<double(double)>& g, double lo, double hi,
                                  ExtremumKind kind, double tol = 1e-12);

/// Maximum of g on [0, 1].
ExtremumResult maximize_unit(const std::function<double(double)>& g, double tol = 1e-12);

/// Extremum of g over t in [e^-s_range, e^s_range], searched in s = log t.
/// `arg` is reported in t. `boundary_flag` marks extrema sitting on the edge
/// of the searched range, i.e. limits at t -> 0 or t -> infinity.
ExtremumResult extremum_over_positive_axis(const std::function<double(double)>& g,
                                           ExtremumKind kind,
                                           double s_range = kDefaultAxisRange,
                                           double tol = 1e-12);

}  // namespace meanscope::numerics
