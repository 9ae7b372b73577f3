#include "meanscope/jensen.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace meanscope::jensen {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Relative excess of G_f over A_f still attributed to rounding.
constexpr double kJensenRounding = 1e-13;

void check_terms(const JensenTerms& t, int m) {
  if (m < 1 || m > kMaxPower) {
    throw std::out_of_range("power m must lie in [1, " + std::to_string(kMaxPower) + "]");
  }
  if (!std::isfinite(t.a_f) || !std::isfinite(t.g_f) || t.g_f < 0.0 || t.a_f < t.g_f) {
    throw std::invalid_argument("gap bounds need A_f >= G_f >= 0");
  }
}

GapBounds degenerate(BoundFamily family, int m) { return GapBounds{0.0, 0.0, family, m, false}; }

}  // namespace

const char* to_string(BoundFamily family) {
  switch (family) {
    case BoundFamily::power:
      return "power";
    case BoundFamily::sqrt_refined:
      return "sqrt_refined";
    case BoundFamily::symmetric:
      return "symmetric";
  }
  return "unknown";
}

WeightedPoints::WeightedPoints(std::vector<double> points, std::vector<double> weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
  if (points_.empty()) throw std::invalid_argument("weighted points: empty");
  if (points_.size() != weights_.size()) {
    throw std::invalid_argument("weighted points: points and weights differ in length");
  }
  double sum = 0.0;
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0) throw std::invalid_argument("weighted points: bad weight");
    sum += w;
  }
  for (double x : points_) {
    if (!std::isfinite(x)) throw std::invalid_argument("weighted points: non-finite point");
  }
  if (!(sum > 0.0)) throw std::invalid_argument("weighted points: weights sum to zero");
  for (double& w : weights_) w /= sum;
}

double WeightedPoints::mean() const {
  if (points_.size() == 1) return points_.front();
  return std::inner_product(points_.begin(), points_.end(), weights_.begin(), 0.0);
}

double power_sum(double a, double b, int m) {
  if (m < 1) throw std::out_of_range("power_sum: m must be positive");
  // Horner in a: ((a + b) a + b^2) a + ...
  double sum = 0.0;
  double b_pow = 1.0;
  for (int k = 0; k < m; ++k) {
    sum = sum * a + b_pow;
    b_pow *= b;
  }
  return sum;
}

JensenTerms jensen_terms(const WeightedPoints& wp, const ConvexFunction& f) {
  double a_f = 0.0;
  for (std::size_t i = 0; i < wp.size(); ++i) {
    const double x = wp.points()[i];
    if (!f.in_domain(x)) {
      throw std::domain_error("point " + std::to_string(x) + " outside domain of " + f.name);
    }
    a_f += wp.weights()[i] * f(x);
  }
  const double g_f = f(wp.mean());
  JensenTerms terms{a_f, g_f};
  if (terms.g_f > terms.a_f) {
    if (terms.g_f - terms.a_f > kJensenRounding * std::max(1.0, std::abs(terms.a_f))) {
      throw std::domain_error("G_f exceeds A_f: " + f.name + " is not convex on these points");
    }
    terms.g_f = terms.a_f;
  }
  return terms;
}

GapBounds bounds_power(const JensenTerms& t, int m) {
  check_terms(t, m);
  if (t.a_f == t.g_f) return degenerate(BoundFamily::power, m);
  const double gap = t.gap();
  const double r = t.g_f / t.a_f;
  const double sum = power_sum(1.0, r, m);
  GapBounds out{gap * sum / m, 0.0, BoundFamily::power, m, false};
  if (m == 1) {
    out.upper = gap;
  } else if (t.g_f == 0.0) {
    out.upper = kInf;
    out.upper_infinite = true;
  } else {
    out.upper = gap * sum / (m * std::pow(r, m - 1));
  }
  return out;
}

GapBounds bounds_sqrt_refined(const JensenTerms& t, int m) {
  check_terms(t, m);
  if (t.a_f == t.g_f) return degenerate(BoundFamily::sqrt_refined, m);
  const double gap = t.gap();
  const double r = t.g_f / t.a_f;
  const double q = std::sqrt(r);
  const double sum = power_sum(1.0, r, m);
  // Divided through by (A - s) A^(m-1): g(A, G) / g(A, s) and
  // g(A, G) / g(A + G - s, G).
  return GapBounds{gap * sum / power_sum(1.0, q, m), gap * sum / power_sum(1.0 + r - q, r, m),
                   BoundFamily::sqrt_refined, m, false};
}

GapBounds bounds_symmetric(const JensenTerms& t, int m) {
  check_terms(t, m);
  if (t.a_f == t.g_f) return degenerate(BoundFamily::symmetric, m);
  const double gap = t.gap();
  const double r = t.g_f / t.a_f;
  const double sum = power_sum(1.0, r, m);
  const double geo = m == 1 ? 1.0 : std::pow(std::sqrt(r), m - 1);  // (AG)^((m-1)/2) / A^(m-1)
  GapBounds out{gap * m * geo / sum, 0.0, BoundFamily::symmetric, m, false};
  if (geo == 0.0) {
    out.upper = kInf;
    out.upper_infinite = true;
  } else {
    out.upper = gap * sum / (m * geo);
  }
  return out;
}

JensenTerms two_point_terms(double a, double b, double v, const ConvexFunction& f) {
  if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("two-point weight must lie in [0, 1]");
  return jensen_terms(WeightedPoints({a, b}, {1.0 - v, v}), f);
}

GapBounds two_point_bounds(double a, double b, double v, const ConvexFunction& f) {
  return bounds_power(two_point_terms(a, b, v, f), 2);
}

}  // namespace meanscope::jensen
