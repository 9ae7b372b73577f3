#include "meanscope/numerics.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace meanscope::numerics {

namespace {

GaussRule build_gauss_rule() {
  // Roots of P_16 by Newton iteration, then mapped from [-1, 1] to [0, 1].
  constexpr int n = kGaussNodes;
  GaussRule rule{};
  for (int i = 0; i < n / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = 0.5 * (1.0 - x);
    rule.nodes[n - 1 - i] = 0.5 * (1.0 + x);
    rule.weights[i] = 0.5 * w;
    rule.weights[n - 1 - i] = 0.5 * w;
  }
  return rule;
}

// Golden-section search for the maximum of h on [a, b].
std::pair<double, double> golden_max(const std::function<double(double)>& h, double a, double b,
                                     double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double hc = h(c);
  double hd = h(d);
  for (int iter = 0; iter < 200 && (b - a) > tol; ++iter) {
    if (hc >= hd) {
      b = d;
      d = c;
      hd = hc;
      c = b - inv_phi * (b - a);
      hc = h(c);
    } else {
      a = c;
      c = d;
      hc = hd;
      d = a + inv_phi * (b - a);
      hd = h(d);
    }
  }
  return hc >= hd ? std::pair{c, hc} : std::pair{d, hd};
}

}  // namespace

const GaussRule& gauss_legendre_16() {
  static const GaussRule rule = build_gauss_rule();
  return rule;
}

QuadratureResult integrate_unit(const std::function<double(double)>& f, double tol) {
  return integrate_unit_with<double>(f, [](double x) { return std::abs(x); }, tol);
}

ExtremumResult extremize_interval(const std::function<double(double)>& g, double lo, double hi,
                                  ExtremumKind kind, double tol) {
  const double sign = kind == ExtremumKind::max ? 1.0 : -1.0;
  auto h = [&](double x) {
    const double y = g(x);
    return std::isfinite(y) ? sign * y : -std::numeric_limits<double>::infinity();
  };

  ExtremumResult out;
  out.kind = kind;
  if (!(hi > lo)) {
    out.arg = lo;
    out.value = g(lo);
    out.boundary_flag = true;
    return out;
  }

  const double width = hi - lo;
  const auto last = kScanPoints - 1;
  auto grid_point = [&](int i) { return i == last ? hi : lo + width * i / last; };

  int best = 0;
  double best_val = h(lo);
  for (int i = 1; i < kScanPoints; ++i) {
    const double y = h(grid_point(i));
    if (y > best_val) {
      best_val = y;
      best = i;
    }
  }

  double arg = grid_point(best);
  double val = best_val;
  const double left = grid_point(std::max(best - 1, 0));
  const double right = grid_point(std::min(best + 1, static_cast<int>(last)));
  const auto [g_arg, g_val] = golden_max(h, left, right, tol * std::max(1.0, width));
  if (g_val > val) {
    arg = g_arg;
    val = g_val;
  }

  const double edge_tol = 4.0 * tol * std::max(1.0, width);
  out.arg = arg;
  out.value = sign * val;
  out.boundary_flag = (arg - lo) <= edge_tol || (hi - arg) <= edge_tol;
  return out;
}

ExtremumResult maximize_unit(const std::function<double(double)>& g, double tol) {
  return extremize_interval(g, 0.0, 1.0, ExtremumKind::max, tol);
}

ExtremumResult extremum_over_positive_axis(const std::function<double(double)>& g,
                                           ExtremumKind kind, double s_range, double tol) {
  auto in_s = [&](double s) { return g(std::exp(s)); };
  ExtremumResult r = extremize_interval(in_s, -s_range, s_range, kind, tol);
  r.arg = std::exp(r.arg);
  return r;
}

}  // namespace meanscope::numerics
