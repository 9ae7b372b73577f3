#pragma once

// Scalar weighted means, their representing functions on the ratio t = b/a,
// and the Specht and Kantorovich constants.

namespace meanscope {

/// Weight v in [0, 1]. Values outside that range are only meaningful for
/// natural_ext_geometric, which takes a raw double instead.
class Weight {
 public:
  explicit Weight(double v);
  double value() const { return v_; }

 private:
  double v_;
};

/// Ordered pair of strictly positive, finite reals.
class PositivePair {
 public:
  PositivePair(double a, double b);
  double a() const { return a_; }
  double b() const { return b_; }
  double ratio() const { return b_ / a_; }

 private:
  double a_;
  double b_;
};

/// Strictly positive, finite ratio point t.
class RatioPoint {
 public:
  explicit RatioPoint(double t);
  double value() const { return t_; }

 private:
  double t_;
};

// Representing functions: M(a, b) = a * rep_M(v, b / a).

double rep_arithmetic(Weight v, RatioPoint t);
double rep_geometric(Weight v, RatioPoint t);
double rep_harmonic(Weight v, RatioPoint t);

/// Representing function f_v(t) of the weighted logarithmic mean.
///
/// Closed form away from the singular set. For |t - 1| < 1e-5 the integral
/// representation
///   f_v(t) = (1 - v) * int_0^1 t^(v u) du + v * int_0^1 t^(v + (1 - v) u) du
/// is evaluated with fixed 16-point Gauss-Legendre. v = 0 and v = 1 return
/// the limits 1 and t; the closed form is written with expm1 so it stays
/// accurate for weights arbitrarily close to either end.
double rep_log(Weight v, RatioPoint t);

inline constexpr double kLogMeanNearOne = 1e-5;

double arithmetic(Weight v, PositivePair p);
double geometric(Weight v, PositivePair p);
double harmonic(Weight v, PositivePair p);

/// a^(1-v) b^v for any finite real v. Throws std::overflow_error when the
/// result is not a finite positive number.
double natural_ext_geometric(double v, PositivePair p);

/// Weighted logarithmic mean L_v(a, b) = a * f_v(b / a), with L_v(a, a) = a.
double weighted_log_mean(Weight v, PositivePair p);

/// Classical logarithmic mean (t - 1) / log t, i.e. f_{1/2}(t).
double log_mean_ratio(RatioPoint t);

/// Specht ratio S(t) = t^(1/(t-1)) / (e log t^(1/(t-1))), S(1) = 1.
double specht(RatioPoint t);

/// Kantorovich constant K(t) = (t + 1)^2 / (4t).
double kantorovich(RatioPoint t);

/// t^(v/2) nabla_v t^((1+v)/2) = (1 - v) t^(v/2) + v t^((1+v)/2).
double fn_refined_lower(Weight v, RatioPoint t);

}  // namespace meanscope
