#include "meanscope/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "meanscope/convex.hpp"
#include "meanscope/jensen.hpp"
#include "meanscope/means.hpp"
#include "meanscope/numerics.hpp"

namespace meanscope::catalog {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kQuadratureTol = 1e-11;
constexpr double kLogSpan = 6.0;
constexpr double kPairLo = 1e-2;
constexpr double kPairHi = 1e2;

struct Integrals {
  std::string note;

  double add(const std::function<double(double)>& f) {
    const auto q = numerics::integrate_unit(f, kQuadratureTol);
    if (!q.converged) {
      if (!note.empty()) note += "; ";
      note += "quadrature hit depth cap (error estimate " + std::to_string(q.error_estimate) + ")";
    }
    return q.value;
  }
};

// Weighted logarithmic mean straight from its two-argument definition,
// independent of the ratio-space evaluation in means-core. The differences
// a - a^(1-v) b^v and a^(1-v) b^v - b go through expm1.
double log_mean_by_definition(double v, double a, double b) {
  if (a == b) return a;
  if (v == 0.0) return a;
  if (v == 1.0) return b;
  const double ell = std::log(a) - std::log(b);
  const double a_minus_g = -a * std::expm1(-v * ell);
  const double g_minus_b = b * std::expm1((1.0 - v) * ell);
  return ((1.0 - v) / v * a_minus_g + v / (1.0 - v) * g_minus_b) / ell;
}

// Representing-function sides shared by several (v, t) entries.
struct RatioMeans {
  double v, t, harm, geo, arith, log;
  explicit RatioMeans(const CheckInputs& in)
      : v(in.v),
        t(in.t),
        harm(rep_harmonic(Weight(in.v), RatioPoint(in.t))),
        geo(rep_geometric(Weight(in.v), RatioPoint(in.t))),
        arith(rep_arithmetic(Weight(in.v), RatioPoint(in.t))),
        log(rep_log(Weight(in.v), RatioPoint(in.t))) {}
};

// min/max of (1-v)/v and v/(1-v); 0 and +inf at the weight endpoints.
std::pair<double, double> ratio_coefficients(double v) {
  const double up = v == 0.0 ? kInf : (1.0 - v) / v;
  const double down = v == 1.0 ? kInf : v / (1.0 - v);
  return {std::min(up, down), std::max(up, down)};
}

double scaled(double coefficient, double value) {
  return std::isinf(coefficient) ? kInf : coefficient * value;
}

std::vector<double> amgm_refined(double x, double y) {
  const double d2 = (x - y) * (x - y);
  const double diff = std::sqrt(x) - std::sqrt(y);
  // (x + y)/2 - sqrt(xy) evaluated as (sqrt x - sqrt y)^2 / 2.
  const double middle = 0.5 * diff * diff;
  return {d2 / (4.0 * (x + y)), middle, d2 / (8.0 * std::sqrt(x * y))};
}

std::vector<double> amgm_classical(double x, double y) {
  const double d2 = (x - y) * (x - y);
  const double diff = std::sqrt(x) - std::sqrt(y);
  return {d2 / (8.0 * y), 0.5 * diff * diff, d2 / (8.0 * x)};
}

jensen::JensenTerms terms_of(const CheckInputs& in) {
  return jensen::jensen_terms(jensen::WeightedPoints(in.points, in.weights),
                              convex_function(in.function));
}

std::vector<double> jensen_chain(const jensen::GapBounds& bounds, const jensen::JensenTerms& t) {
  return {bounds.lower, t.gap(), bounds.upper};
}

std::vector<InequalityEntry> build_catalog() {
  std::vector<InequalityEntry> c;
  using S = Signature;
  using K = EntryKind;

  auto add = [&c](InequalityEntry e) { c.push_back(std::move(e)); };

  add({"S1", "harmonic <= geometric <= arithmetic (representing functions)",
       "Eq. (1.1): \"We easily find the following relation\"", S::weight_ratio, K::inequality,
       false, false, {"harmonic", "geometric", "arithmetic"}, {},
       [](const CheckInputs& in) -> SideValues {
         RatioMeans r(in);
         return std::vector{r.harm, r.geo, r.arith};
       },
       {}, {}});

  add({"S2", "arithmetic <= S(t) * geometric", "Sec. 1: \"we have some reverse inequalities\"",
       S::weight_ratio, K::inequality, false, false, {"arithmetic", "S(t) geometric"}, {},
       [](const CheckInputs& in) -> SideValues {
         RatioMeans r(in);
         return std::vector{r.arith, specht(RatioPoint(in.t)) * r.geo};
       },
       {}, {}});

  add({"S3", "geometric <= S(t) * harmonic", "Sec. 1: \"we have some reverse inequalities\"",
       S::weight_ratio, K::inequality, false, false, {"geometric", "S(t) harmonic"}, {},
       [](const CheckInputs& in) -> SideValues {
         RatioMeans r(in);
         return std::vector{r.geo, specht(RatioPoint(in.t)) * r.harm};
       },
       {}, {}});

  add({"S4", "arithmetic <= K(t) * harmonic", "Sec. 1: \"we have some reverse inequalities\"",
       S::weight_ratio, K::inequality, false, false, {"arithmetic", "K(t) harmonic"}, {},
       [](const CheckInputs& in) -> SideValues {
         RatioMeans r(in);
         return std::vector{r.arith, kantorovich(RatioPoint(in.t)) * r.harm};
       },
       {}, {}});

  add({"S5", "t^v <= f_v(t) <= (t^v + arithmetic)/2 <= arithmetic",
       "Eq. (2.1): \"the following relations were obtained\"", S::weight_ratio, K::inequality,
       false, false, {"geometric", "f_v(t)", "half sum", "arithmetic"}, {},
       [](const CheckInputs& in) -> SideValues {
         RatioMeans r(in);
         return std::vector{r.geo, r.log, 0.5 * (r.geo + r.arith), r.arith};
       },
       {}, {}});

  add({"S6", "a !_v b <= a #_v b <= L_v(a,b) <= a nabla_v b",
       "Sec. 1: \"the relation for four weighted means\"", S::pair_weight, K::inequality, false,
       false, {"harmonic", "geometric", "L_v(a,b)", "arithmetic"}, {},
       [](const CheckInputs& in) -> SideValues {
         const Weight v(in.v);
         const PositivePair p(in.a, in.b);
         return std::vector{harmonic(v, p), geometric(v, p), weighted_log_mean(v, p),
                            arithmetic(v, p)};
       },
       {}, {}});

  add({"S7", "t^v <= (1-v) t^(v/2) + v t^((1+v)/2) <= L_v(1,t)",
       "Sec. 1: \"further tight lower bound of\"", S::weight_ratio, K::inequality, false, false,
       {"geometric", "refined lower", "L_v(1,t)"}, {},
       [](const CheckInputs& in) -> SideValues {
         const Weight v(in.v);
         const RatioPoint t(in.t);
         return std::vector{rep_geometric(v, t), fn_refined_lower(v, t),
                            weighted_log_mean(v, PositivePair(1.0, in.t))};
       },
       [](const CheckInputs& in) -> SideValues {
         const Weight v(in.v);
         const RatioPoint t(in.t);
         return std::vector{rep_geometric(v, t), fn_refined_lower(v, t),
                            weighted_log_mean(v, PositivePair(in.t, 1.0))};
       },
       "L_v(t,1)"});

  add({"S8", "f_v(t) <= max{1, 1/t} L_{1/2}(t,1) t^v",
       "Theorem 2.1(i): \"ratio type reverse inequalities\"", S::weight_ratio, K::inequality,
       false, false, {"f_v(t)", "bound"}, {},
       [](const CheckInputs& in) -> SideValues {
         RatioMeans r(in);
         const double k = std::max(1.0, 1.0 / in.t) * log_mean_ratio(RatioPoint(in.t));
         return std::vector{r.log, k * r.geo};
       },
       {}, {}});

  add({"S9", "(t^v + arithmetic)/2 <= ((S(t) + 1)/2) f_v(t)",
       "Theorem 2.1(ii): \"ratio type reverse inequalities\"", S::weight_ratio, K::inequality,
       false, false, {"half sum", "bound"}, {},
       [](const CheckInputs& in) -> SideValues {
         RatioMeans r(in);
         return std::vector{0.5 * (r.geo + r.arith),
                            0.5 * (specht(RatioPoint(in.t)) + 1.0) * r.log};
       },
       {}, {}});

  add({"S10", "min{(1-v)/v, v/(1-v)} L_{1/2} <= f_v(t) <= max{(1-v)/v, v/(1-v)} L_{1/2}",
       "Theorem 2.2: \"interesting relations on the weighted logarithmic mean\"",
       S::weight_ratio, K::inequality, false, false, {"lower", "f_v(t)", "upper"}, {},
       [](const CheckInputs& in) -> SideValues {
         RatioMeans r(in);
         const double half = log_mean_ratio(RatioPoint(in.t));
         const auto [lo, hi] = ratio_coefficients(in.v);
         return std::vector{scaled(lo, half), r.log, scaled(hi, half)};
       },
       {}, {}});

  add({"S11", "f_v(t) = L_{1/2}(t^v,1) composed with L_{1/2}(t,1) at exponent v/(1-v)",
       "Eq. (2.1a): \"the representing function of the weighted logarithmic mean\"",
       S::weight_ratio, K::identity, false, false, {"f_v(t)", "composition"}, {},
       [](const CheckInputs& in) -> SideValues {
         RatioMeans r(in);
         if (in.v == 1.0) return std::vector{r.log, in.t};
         // The identity holds for the affine (arithmetic) extension
         // (1 - w) x + w y with w = v/(1-v), which exceeds 1 for v > 1/2.
         const double w = in.v / (1.0 - in.v);
         const double inner = log_mean_ratio(RatioPoint(std::pow(in.t, in.v)));
         const double outer = log_mean_ratio(RatioPoint(in.t));
         return std::vector{r.log, inner + w * (outer - inner)};
       },
       {}, {}});

  add({"S12", "L_v(1,t) = f_v(t) = t L_v(1/t,1)", "Sec. 1: \"So, we easily find\"",
       S::weight_ratio, K::identity, false, false, {"L_v(1,t)", "f_v(t)", "t L_v(1/t,1)"}, {},
       [](const CheckInputs& in) -> SideValues {
         const double direct = log_mean_by_definition(in.v, 1.0, in.t);
         const double f = rep_log(Weight(in.v), RatioPoint(in.t));
         const double flipped = in.t * log_mean_by_definition(in.v, 1.0 / in.t, 1.0);
         return std::vector{direct, f, flipped};
       },
       {}, {}});

  add({"S13", "f_v(t) = (1-v)/v int_0^v t^x dx + v/(1-v) int_v^1 t^x dx",
       "Sec. 2: \"can be expressed by\"", S::weight_ratio, K::identity, false, false,
       {"f_v(t)", "quadrature"}, {},
       [](const CheckInputs& in) -> SideValues {
         const double v = in.v;
         const double s = std::log(in.t);
         Integrals q;
         // x = v u on [0, v] and x = v + (1 - v) u on [v, 1]; the interval
         // lengths cancel the (1-v)/v and v/(1-v) prefactors.
         const double head = q.add([&](double u) { return std::exp(v * u * s); });
         const double tail = q.add([&](double u) { return std::exp((v + (1.0 - v) * u) * s); });
         return {std::vector{rep_log(Weight(v), RatioPoint(in.t)),
                             (1.0 - v) * head + v * tail},
                 q.note};
       },
       {}, {}});

  add({"S14", "f((a+b)/2) <= int_0^1 f(a nabla_v b) dv <= (f(a)+f(b))/2",
       "Eq. (1): \"The well-known Hermite-Hadamard inequality states that\"", S::pair,
       K::inequality, true, false, {"f(midpoint)", "average of f", "endpoint average"}, {},
       [](const CheckInputs& in) -> SideValues {
         const auto& f = convex_function(in.function);
         Integrals q;
         const double avg = q.add([&](double v) { return f((1.0 - v) * in.a + v * in.b); });
         return {std::vector{f(0.5 * (in.a + in.b)), avg, 0.5 * (f(in.a) + f(in.b))}, q.note};
       },
       {}, {}});

  add({"S15", "two-point Jensen gap f(a) nabla_v f(b) - f(a nabla_v b) between m=2 bounds",
       "Corollary 8: \"gives the following statement\"", S::pair_weight, K::inequality, true,
       true, {"lower", "gap", "upper"}, {},
       [](const CheckInputs& in) -> SideValues {
         const auto& f = convex_function(in.function);
         const auto terms = jensen::two_point_terms(in.a, in.b, in.v, f);
         return jensen_chain(jensen::bounds_power(terms, 2), terms);
       },
       {}, {}});

  add({"S16", "three-term integral interpolation of Hermite-Hadamard",
       "Corollary 0: \"a new interpolation of\"", S::pair, K::inequality, true, true,
       {"int f - int f^2/A", "(f(a)+f(b))/2 - int f", "int A^2/f - (f(a)+f(b))/2"}, {},
       [](const CheckInputs& in) -> SideValues {
         const auto& f = convex_function(in.function);
         const double fa = f(in.a);
         const double fb = f(in.b);
         // Each side is one integral of a combined integrand built from the
         // pointwise gap D = A - F, with A = f(a) nabla_v f(b) and
         // F = f(a nabla_v b); differences of large integrals are avoided.
         auto point = [&](double v) {
           const double A = (1.0 - v) * fa + v * fb;
           const double F = f((1.0 - v) * in.a + v * in.b);
           return std::pair{A, F};
         };
         Integrals q;
         const double first = q.add([&](double v) {
           const auto [A, F] = point(v);
           return F * (A - F) / A;
         });
         const double second = q.add([&](double v) {
           const auto [A, F] = point(v);
           return A - F;
         });
         const double third = q.add([&](double v) {
           const auto [A, F] = point(v);
           return A * (A - F) / F;
         });
         return {std::vector{first, second, third}, q.note};
       },
       {}, {}});

  add({"S17", "int f <= 2 int f - int f^2/A <= (f(a)+f(b))/2",
       "Remark: \"From the first inequality in Corollary\"", S::pair, K::inequality, true, true,
       {"int f", "2 int f - int f^2/A", "endpoint average"}, {},
       [](const CheckInputs& in) -> SideValues {
         const auto& f = convex_function(in.function);
         const double fa = f(in.a);
         const double fb = f(in.b);
         Integrals q;
         const double plain = q.add([&](double v) { return f((1.0 - v) * in.a + v * in.b); });
         const double squared = q.add([&](double v) {
           const double F = f((1.0 - v) * in.a + v * in.b);
           return F * F / ((1.0 - v) * fa + v * fb);
         });
         return {std::vector{plain, 2.0 * plain - squared, 0.5 * (fa + fb)}, q.note};
       },
       {}, {}});

  add({"S18", "L_{1/2}(a,b) <= (a nabla b + int (a #_v b)^2 / (a nabla_v b) dv)/2 <= a nabla b",
       "Theorem theorem3.2: \"interpolation between the arithmetic and the logarithmic means\"",
       S::pair, K::inequality, false, false, {"L_{1/2}(a,b)", "interpolant", "arithmetic"}, {},
       [](const CheckInputs& in) -> SideValues {
         const PositivePair p(in.a, in.b);
         Integrals q;
         const double integral = q.add([&](double v) {
           const double g = std::pow(in.a, 1.0 - v) * std::pow(in.b, v);
           return g * g / ((1.0 - v) * in.a + v * in.b);
         });
         const double mid = arithmetic(Weight(0.5), p);
         return {std::vector{weighted_log_mean(Weight(0.5), p), 0.5 * (mid + integral), mid},
                 q.note};
       },
       {}, {}});

  add({"S19", "(x-y)^2/(4(x+y)) <= (x+y)/2 - sqrt(xy) <= (x-y)^2/(8 sqrt(xy))",
       "Corollary cor_ref_amgm: \"refines the well known inequality\"", S::pair,
       K::inequality, false, false, {"lower", "AM - GM", "upper"}, {},
       [](const CheckInputs& in) -> SideValues { return amgm_refined(in.a, in.b); }, {}, {}});

  add({"S20", "(x-y)^2/(8y) <= (x+y)/2 - sqrt(xy) <= (x-y)^2/(8x) for x <= y",
       "Eq. (scalar_intro): \"valid for $x\\leq y$\"", S::ordered_pair, K::inequality, false,
       false, {"lower", "AM - GM", "upper"}, {},
       [](const CheckInputs& in) -> SideValues { return amgm_classical(in.a, in.b); }, {}, {}});

  add({"S21", "refined AM-GM bounds lie inside the classical ones for x <= y",
       "Sec. 3: \"refines the well known inequality\"", S::ordered_pair, K::comparison, false,
       false, {"classical lower", "refined lower", "refined upper", "classical upper"},
       {{0, 1}, {2, 3}},
       [](const CheckInputs& in) -> SideValues {
         const auto refined = amgm_refined(in.a, in.b);
         const auto classical = amgm_classical(in.a, in.b);
         return std::vector{classical[0], refined[0], refined[2], classical[2]};
       },
       {}, {}});

  add({"S22", "power bounds on the Jensen gap A_f - G_f",
       "Theorem prop3.1: \"contains several arithmetic means inequalities\"", S::jensen,
       K::inequality, true, true, {"lower", "A_f - G_f", "upper"}, {},
       [](const CheckInputs& in) -> SideValues {
         const auto t = terms_of(in);
         return jensen_chain(jensen::bounds_power(t, in.m), t);
       },
       {}, {}});

  add({"S23", "sqrt-refined bounds on the Jensen gap",
       "Theorem prop3.2: \"The next theorem refines Theorem\"", S::jensen, K::inequality, true, true,
       {"lower", "A_f - G_f", "upper"}, {},
       [](const CheckInputs& in) -> SideValues {
         const auto t = terms_of(in);
         return jensen_chain(jensen::bounds_sqrt_refined(t, in.m), t);
       },
       {}, {}});

  add({"S24", "symmetric bounds on the Jensen gap",
       "Theorem prop3.3: \"alternative double inequality whose upper bound\"", S::jensen,
       K::inequality, true, true, {"lower", "A_f - G_f", "upper"}, {},
       [](const CheckInputs& in) -> SideValues {
         const auto t = terms_of(in);
         return jensen_chain(jensen::bounds_symmetric(t, in.m), t);
       },
       {}, {}});

  add({"S25", "sqrt-refined and symmetric bounds tighten the power bounds",
       "\"The next theorem refines Theorem\" / \"gives a refinement of that\"", S::jensen,
       K::comparison, true, true,
       {"power lower", "sqrt lower", "sqrt upper", "power upper", "symmetric upper"},
       {{0, 1}, {2, 3}, {4, 3}},
       [](const CheckInputs& in) -> SideValues {
         const auto t = terms_of(in);
         const auto p = jensen::bounds_power(t, in.m);
         const auto r = jensen::bounds_sqrt_refined(t, in.m);
         const auto s = jensen::bounds_symmetric(t, in.m);
         return std::vector{p.lower, r.lower, r.upper, p.upper, s.upper};
       },
       {}, {}});

  return c;
}

const std::vector<InequalityEntry>& entries() {
  static const std::vector<InequalityEntry> all = build_catalog();
  return all;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw SignatureMismatchError(what);
}

void validate(const InequalityEntry& e, const CheckInputs& in) {
  require(in.signature == e.signature, e.id + " expects signature " + to_string(e.signature) +
                                           ", got " + to_string(in.signature));
  auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
  switch (e.signature) {
    case Signature::weight_ratio:
      require(in.v >= 0.0 && in.v <= 1.0, e.id + ": v must lie in [0, 1]");
      require(positive(in.t), e.id + ": t must be finite and positive");
      break;
    case Signature::pair_weight:
      require(in.v >= 0.0 && in.v <= 1.0, e.id + ": v must lie in [0, 1]");
      [[fallthrough]];
    case Signature::pair:
      require(positive(in.a) && positive(in.b), e.id + ": a and b must be finite and positive");
      break;
    case Signature::ordered_pair:
      require(positive(in.a) && positive(in.b), e.id + ": x and y must be finite and positive");
      require(in.a <= in.b, e.id + ": requires x <= y");
      break;
    case Signature::jensen:
      require(!in.points.empty() && in.points.size() == in.weights.size(),
              e.id + ": points and weights must be nonempty and equally long");
      require(in.m >= 1 && in.m <= jensen::kMaxPower, e.id + ": m must lie in [1, 64]");
      break;
  }
  if (e.needs_function) {
    require(!in.function.empty(), e.id + ": a convex function name is required");
    try {
      (void)convex_function(in.function);
    } catch (const std::invalid_argument& err) {
      throw SignatureMismatchError(e.id + ": " + err.what());
    }
  }
}

struct SlackResult {
  double min_slack = kInf;
  double scale = 1.0;
  std::string diagnostic;
  bool finite = true;
};

SlackResult slack_of(const InequalityEntry& e, const std::vector<double>& sides) {
  SlackResult r;
  for (double s : sides) {
    if (std::isnan(s)) {
      r.finite = false;
    } else if (std::isfinite(s)) {
      r.scale = std::max(r.scale, std::abs(s));
    }
  }
  if (!r.finite) {
    r.min_slack = -kInf;
    r.diagnostic = "non-finite side value";
    return r;
  }

  std::vector<std::pair<int, int>> pairs = e.comparisons;
  if (pairs.empty()) {
    for (int i = 0; i + 1 < static_cast<int>(sides.size()); ++i) pairs.emplace_back(i, i + 1);
  }
  for (const auto& [i, j] : pairs) {
    const double lhs = sides[i];
    const double rhs = sides[j];
    double slack = 0.0;
    if (e.kind == EntryKind::identity) {
      slack = lhs == rhs ? 0.0 : -std::abs(rhs - lhs);
    } else if (lhs == rhs) {
      slack = 0.0;
    } else if (rhs == kInf || lhs == -kInf) {
      slack = kInf;
      r.diagnostic = "vacuous infinite bound";
    } else {
      slack = rhs - lhs;
    }
    if (std::isnan(slack)) slack = -kInf;
    r.min_slack = std::min(r.min_slack, slack);
  }
  return r;
}

}  // namespace

const char* to_string(Signature s) {
  switch (s) {
    case Signature::weight_ratio:
      return "(v,t)";
    case Signature::pair:
      return "(a,b)";
    case Signature::pair_weight:
      return "(a,b,v)";
    case Signature::ordered_pair:
      return "(x,y with x<=y)";
    case Signature::jensen:
      return "(points,weights,f,m)";
  }
  return "?";
}

CheckInputs CheckInputs::weight_ratio(double v, double t) {
  CheckInputs in;
  in.signature = Signature::weight_ratio;
  in.v = v;
  in.t = t;
  return in;
}

CheckInputs CheckInputs::pair(double a, double b, std::string function) {
  CheckInputs in;
  in.signature = Signature::pair;
  in.a = a;
  in.b = b;
  in.function = std::move(function);
  return in;
}

CheckInputs CheckInputs::pair_weight(double a, double b, double v, std::string function) {
  CheckInputs in = pair(a, b, std::move(function));
  in.signature = Signature::pair_weight;
  in.v = v;
  return in;
}

CheckInputs CheckInputs::ordered_pair(double x, double y) {
  CheckInputs in = pair(x, y);
  in.signature = Signature::ordered_pair;
  return in;
}

CheckInputs CheckInputs::jensen(std::vector<double> points, std::vector<double> weights,
                                std::string function, int m) {
  CheckInputs in;
  in.signature = Signature::jensen;
  in.points = std::move(points);
  in.weights = std::move(weights);
  in.function = std::move(function);
  in.m = m;
  return in;
}

std::span<const InequalityEntry> list_entries() { return entries(); }

const InequalityEntry& find_entry(std::string_view id) {
  for (const auto& e : entries()) {
    if (e.id == id) return e;
  }
  throw UnknownEntryError(id);
}

CheckOutcome evaluate(std::string_view id, const CheckInputs& inputs, double tol) {
  const InequalityEntry& e = find_entry(id);
  validate(e, inputs);

  CheckOutcome out;
  out.entry_id = e.id;
  out.inputs = inputs;
  out.tol = tol;

  SideValues sides;
  try {
    sides = e.sides(inputs);
  } catch (const std::exception& err) {
    out.min_slack = -kInf;
    out.pass = false;
    out.diagnostic = std::string("evaluation error: ") + err.what();
    return out;
  }
  out.side_values = sides.values;
  const SlackResult r = slack_of(e, sides.values);
  out.min_slack = r.min_slack;
  out.scale = r.scale;
  out.pass = r.finite && out.min_slack >= -tol * out.scale;
  out.diagnostic = r.diagnostic;
  if (!sides.note.empty()) {
    out.diagnostic += out.diagnostic.empty() ? sides.note : "; " + sides.note;
  }

  if (e.alternate) {
    const SideValues alt = e.alternate(inputs);
    const SlackResult ar = slack_of(e, alt.values);
    out.alternate_min_slack = ar.min_slack;
    out.alternate_scale = ar.scale;
  }
  return out;
}

CheckInputs sample_inputs(const InequalityEntry& e, Rng& rng) {
  const auto functions = convex_catalog();
  auto pick_function = [&]() -> const ConvexFunction& {
    return functions[rng.uniform_int(0, static_cast<int>(functions.size()) - 1)];
  };
  auto lower_end = [&](const ConvexFunction& f) {
    return e.needs_nonnegative_function ? std::max(f.sample_lo, f.nonnegative_lo) : f.sample_lo;
  };

  switch (e.signature) {
    case Signature::weight_ratio: {
      const double v = rng.uniform();
      const double t = std::exp(rng.uniform(-kLogSpan, kLogSpan));
      return CheckInputs::weight_ratio(v, t);
    }
    case Signature::pair:
    case Signature::pair_weight: {
      std::string name;
      double lo = kPairLo;
      double hi = kPairHi;
      if (e.needs_function) {
        const auto& f = pick_function();
        name = f.name;
        lo = lower_end(f);
        hi = f.sample_hi;
      }
      const double a = rng.log_uniform(lo, hi);
      const double b = rng.log_uniform(lo, hi);
      if (e.signature == Signature::pair) return CheckInputs::pair(a, b, name);
      return CheckInputs::pair_weight(a, b, rng.uniform(), name);
    }
    case Signature::ordered_pair: {
      double x = rng.log_uniform(kPairLo, kPairHi);
      double y = rng.log_uniform(kPairLo, kPairHi);
      if (x > y) std::swap(x, y);
      return CheckInputs::ordered_pair(x, y);
    }
    case Signature::jensen: {
      const auto& f = pick_function();
      const int n = rng.uniform_int(1, 8);
      std::vector<double> points(n);
      std::vector<double> weights(n);
      for (int i = 0; i < n; ++i) {
        points[i] = rng.log_uniform(lower_end(f), f.sample_hi);
        weights[i] = 1.0 - rng.uniform();  // (0, 1]
      }
      const int m = rng.uniform_int(1, 6);
      return CheckInputs::jensen(std::move(points), std::move(weights), f.name, m);
    }
  }
  return {};
}

CheckOutcome tightness_search(std::string_view id, long budget, std::uint64_t seed, double tol) {
  const InequalityEntry& e = find_entry(id);
  if (budget < 1) throw std::invalid_argument("tightness budget must be positive");

  std::optional<CheckOutcome> worst;
  auto consider = [&](const CheckInputs& in) {
    CheckOutcome o = evaluate(e.id, in, tol);
    if (!worst || o.relative_slack() < worst->relative_slack()) worst = std::move(o);
  };

  // Grid over the two continuous parameters where the signature has exactly
  // two; the rest of the budget (or all of it) is random sampling.
  long grid_budget = 0;
  const bool two_params =
      e.signature == Signature::weight_ratio ||
      ((e.signature == Signature::pair || e.signature == Signature::ordered_pair) &&
       !e.needs_function);
  if (two_params && budget >= 9) {
    long side = static_cast<long>(std::sqrt(static_cast<double>(budget) / 2.0));
    if (side % 2 == 0) --side;  // odd, so the diagonal / t = 1 line is on the grid
    side = std::max(side, 3L);
    grid_budget = side * side;
    for (long i = 0; i < side; ++i) {
      for (long j = 0; j < side; ++j) {
        const double u = static_cast<double>(i) / static_cast<double>(side - 1);
        const double w = static_cast<double>(j) / static_cast<double>(side - 1);
        if (e.signature == Signature::weight_ratio) {
          consider(CheckInputs::weight_ratio(u, std::exp(-kLogSpan + 2.0 * kLogSpan * w)));
        } else {
          const double span = std::log(kPairHi) - std::log(kPairLo);
          double x = kPairLo * std::exp(span * u);
          double y = kPairLo * std::exp(span * w);
          if (e.signature == Signature::ordered_pair) {
            if (x > y) continue;
            consider(CheckInputs::ordered_pair(x, y));
          } else {
            consider(CheckInputs::pair(x, y));
          }
        }
      }
    }
  }

  for (long i = 0; i < budget - grid_budget; ++i) {
    Rng rng(stream_seed(seed, e.id, static_cast<std::uint64_t>(i)));
    consider(sample_inputs(e, rng));
  }
  return *worst;
}

std::string catalog_fingerprint() {
  std::ostringstream text;
  for (const auto& e : entries()) {
    text << e.id << '|' << e.description << '|' << to_string(e.signature) << '|'
         << static_cast<int>(e.kind);
    for (const auto& label : e.side_labels) text << '|' << label;
    for (const auto& [i, j] : e.comparisons) text << '|' << i << '<' << j;
    text << '\n';
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(text.str())));
  return buf;
}

}  // namespace meanscope::catalog
