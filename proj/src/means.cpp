#include "meanscope/means.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "meanscope/numerics.hpp"

namespace meanscope {

Weight::Weight(double v) : v_(v) {
  if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
    throw std::invalid_argument("weight must lie in [0, 1], got " + std::to_string(v));
  }
}

PositivePair::PositivePair(double a, double b) : a_(a), b_(b) {
  if (!std::isfinite(a) || !std::isfinite(b) || a <= 0.0 || b <= 0.0) {
    throw std::invalid_argument("pair arguments must be finite and positive");
  }
}

RatioPoint::RatioPoint(double t) : t_(t) {
  if (!std::isfinite(t) || t <= 0.0) {
    throw std::invalid_argument("ratio point must be finite and positive, got " +
                                std::to_string(t));
  }
}

double rep_arithmetic(Weight v, RatioPoint t) {
  return (1.0 - v.value()) + v.value() * t.value();
}

double rep_geometric(Weight v, RatioPoint t) { return std::pow(t.value(), v.value()); }

double rep_harmonic(Weight v, RatioPoint t) {
  return 1.0 / ((1.0 - v.value()) + v.value() / t.value());
}

double rep_log(Weight weight, RatioPoint point) {
  const double v = weight.value();
  const double t = point.value();
  if (v == 0.0) return 1.0;
  if (v == 1.0) return t;
  if (t == 1.0) return 1.0;

  const double s = std::log(t);
  if (std::abs(t - 1.0) < kLogMeanNearOne) {
    const double head = numerics::gauss_fixed([&](double u) { return std::exp(v * u * s); });
    const double tail =
        numerics::gauss_fixed([&](double u) { return std::exp((v + (1.0 - v) * u) * s); });
    return (1.0 - v) * head + v * tail;
  }

  // t^v - 1 and t - t^v = t^v (t^(1-v) - 1) keep their sign, so the two
  // terms never cancel.
  const double tv = std::exp(v * s);
  const double head = (1.0 - v) / v * std::expm1(v * s);
  const double tail = v / (1.0 - v) * tv * std::expm1((1.0 - v) * s);
  return (head + tail) / s;
}

double arithmetic(Weight v, PositivePair p) {
  if (p.a() == p.b()) return p.a();
  return (1.0 - v.value()) * p.a() + v.value() * p.b();
}

double geometric(Weight v, PositivePair p) {
  if (p.a() == p.b()) return p.a();
  return p.a() * rep_geometric(v, RatioPoint(p.ratio()));
}

double harmonic(Weight v, PositivePair p) {
  if (p.a() == p.b()) return p.a();
  if (v.value() == 0.0) return p.a();
  if (v.value() == 1.0) return p.b();
  return p.a() * rep_harmonic(v, RatioPoint(p.ratio()));
}

double natural_ext_geometric(double v, PositivePair p) {
  if (!std::isfinite(v)) throw std::invalid_argument("natural extension exponent must be finite");
  if (p.a() == p.b()) return p.a();
  const double log_result = std::log(p.a()) + v * (std::log(p.b()) - std::log(p.a()));
  const double result = std::exp(log_result);
  if (!std::isfinite(result) || result <= 0.0) {
    throw std::overflow_error("natural extension a^(1-v) b^v leaves double range (log = " +
                              std::to_string(log_result) + ")");
  }
  return result;
}

double weighted_log_mean(Weight v, PositivePair p) {
  if (p.a() == p.b()) return p.a();
  if (v.value() == 0.0) return p.a();
  if (v.value() == 1.0) return p.b();
  return p.a() * rep_log(v, RatioPoint(p.ratio()));
}

double log_mean_ratio(RatioPoint t) { return rep_log(Weight(0.5), t); }

double specht(RatioPoint point) {
  const double t = point.value();
  if (t == 1.0) return 1.0;
  const double d = t - 1.0;
  // u = log(t^(1/(t-1))); S = e^u / (e u) = e^(u-1) / u.
  const double u = (std::abs(d) < 0.5 ? std::log1p(d) : std::log(t)) / d;
  return std::exp(u - 1.0) / u;
}

double kantorovich(RatioPoint point) {
  const double t = point.value();
  return (t + 1.0) * (t + 1.0) / (4.0 * t);
}

double fn_refined_lower(Weight weight, RatioPoint point) {
  const double v = weight.value();
  const double t = point.value();
  return (1.0 - v) * std::pow(t, v / 2.0) + v * std::pow(t, (1.0 + v) / 2.0);
}

}  // namespace meanscope
