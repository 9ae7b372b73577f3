#pragma once

#include <vector>

#include "meanscope/convex.hpp"

namespace meanscope::jensen {

/// Points a_i with nonnegative weights p_i, normalized to sum to one.
class WeightedPoints {
 public:
  /// Throws std::invalid_argument on empty input, length mismatch, negative
  /// or non-finite weights, or a zero weight sum.
  WeightedPoints(std::vector<double> points, std::vector<double> weights);

  const std::vector<double>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return points_.size(); }
  double mean() const;

 private:
  std::vector<double> points_;
  std::vector<double> weights_;
};

/// A_f = sum p_i f(a_i) and G_f = f(sum p_i a_i).
struct JensenTerms {
  double a_f = 0.0;
  double g_f = 0.0;
  double gap() const { return a_f - g_f; }
};

enum class BoundFamily { power, sqrt_refined, symmetric };

const char* to_string(BoundFamily family);

struct GapBounds {
  double lower = 0.0;
  double upper = 0.0;
  BoundFamily family = BoundFamily::power;
  int m = 1;
  // G_f = 0 with m >= 2 leaves the upper bound infinite; the inequality then
  // holds vacuously.
  bool upper_infinite = false;
};

inline constexpr int kMaxPower = 64;

/// sum_{k=0}^{m-1} a^(m-1-k) b^k, i.e. (a^m - b^m) / (a - b) or m a^(m-1).
double power_sum(double a, double b, int m);

/// Throws std::domain_error when a point lies outside f's domain or when
/// G_f exceeds A_f by more than rounding (f not convex on the points).
JensenTerms jensen_terms(const WeightedPoints& wp, const ConvexFunction& f);

// The three families bracket A_f - G_f. They are evaluated in factored form,
// gap * ratio, where the ratio depends only on r = G/A, so A^m - G^m is never
// formed by subtraction. A_f == G_f returns (0, 0).
// All throw std::out_of_range for m outside [1, 64] and std::invalid_argument
// unless a_f >= g_f >= 0.

/// (A^m - G^m) / (m A^(m-1)) <= A - G <= (A^m - G^m) / (m G^(m-1)).
GapBounds bounds_power(const JensenTerms& terms, int m);

/// Lower (A^m - G^m)(A - s) / (A^m - s^m), upper
/// (A^m - G^m)(A - s) / ((A + G - s)^m - G^m), where s = sqrt(A G).
GapBounds bounds_sqrt_refined(const JensenTerms& terms, int m);

/// Lower m (AG)^((m-1)/2) (A - G)^2 / (A^m - G^m), upper
/// (A^m - G^m) / (m (AG)^((m-1)/2)).
GapBounds bounds_symmetric(const JensenTerms& terms, int m);

/// m = 2 power bounds for the two-point instance ({a, b}, {1 - v, v}).
GapBounds two_point_bounds(double a, double b, double v, const ConvexFunction& f);

/// Terms of the two-point instance: A = f(a) nabla_v f(b), G = f(a nabla_v b).
JensenTerms two_point_terms(double a, double b, double v, const ConvexFunction& f);

}  // namespace meanscope::jensen
