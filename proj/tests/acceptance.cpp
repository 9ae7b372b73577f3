// Acceptance criteria AC1..AC9. Prints one PASS/FAIL line per criterion
// followed by indented detail lines, and exits nonzero if any criterion
// fails.

#include <algorithm>
#include <cstdarg>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "meanscope/catalog.hpp"
#include "meanscope/harness.hpp"
#include "meanscope/jensen.hpp"
#include "meanscope/means.hpp"
#include "meanscope/numerics.hpp"
#include "meanscope/operator_means.hpp"
#include "meanscope/operator_suite.hpp"
#include "meanscope/rng.hpp"

using namespace meanscope;

namespace {

constexpr std::uint64_t kSeed = 20240611;

struct Criterion {
  std::string name;
  bool pass = true;
  std::vector<std::string> details;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    details.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
};

std::vector<Criterion> results;

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof buf, f, args);
  va_end(args);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Seeded sampling of one catalog entry; the same per-sample streams as the
// CLI.
void check_entry(Criterion& c, const std::string& id, long samples, double tol) {
  const auto& e = catalog::find_entry(id);
  long failures = 0;
  double worst = std::numeric_limits<double>::infinity();
  long worst_index = -1;
  for (long i = 0; i < samples; ++i) {
    Rng rng(stream_seed(kSeed, id, static_cast<std::uint64_t>(i)));
    const auto o = catalog::evaluate(id, catalog::sample_inputs(e, rng), tol);
    if (!o.pass) ++failures;
    if (o.relative_slack() < worst || std::isnan(o.relative_slack())) {
      worst = o.relative_slack();
      worst_index = i;
    }
  }
  c.require(failures == 0, fmt("%-4s %ld samples, %ld failures, min slack/scale %.3e (sample %ld)",
                               id.c_str(), samples, failures, worst, worst_index));
}

void ac1() {
  Criterion c{"AC1 scalar suite, 1e5 samples per entry, tol 1e-10"};
  const auto start = std::chrono::steady_clock::now();
  for (const char* id : {"S1", "S2", "S3", "S4", "S5", "S6", "S7", "S8", "S9", "S10", "S14", "S15",
                         "S16", "S17", "S18", "S19", "S20", "S21"}) {
    check_entry(c, id, 100000, 1e-10);
  }
  const double t = seconds_since(start);
  c.require(t < 60.0, fmt("runtime %.1f s (limit 60 s)", t));
  results.push_back(c);
}

void ac2() {
  Criterion c{"AC2 identities S11-S13, 1e4 samples, tol 1e-10"};
  for (const char* id : {"S11", "S12", "S13"}) check_entry(c, id, 10000, 1e-10);
  results.push_back(c);
}

void ac3() {
  Criterion c{"AC3 Specht and Kantorovich maxima on 41 log-spaced t"};
  double worst_s = 0.0, worst_k = 0.0;
  for (int i = 0; i <= 40; ++i) {
    const double t = std::pow(10.0, -2.0 + 4.0 * i / 40.0);
    worst_s = std::max(worst_s,
                       std::abs(harness::specht_by_maximization(t) - specht(RatioPoint(t))));
    worst_k = std::max(worst_k, std::abs(harness::kantorovich_by_maximization(t) -
                                         kantorovich(RatioPoint(t))));
  }
  c.require(worst_s <= 1e-8, fmt("max |S_max - S| = %.3e (limit 1e-8)", worst_s));
  c.require(worst_k <= 1e-10, fmt("max |K_max - K| = %.3e (limit 1e-10)", worst_k));
  const double k2 = kantorovich(RatioPoint(2.0));
  c.require(k2 == 9.0 / 8.0, fmt("K(2) = %.17g", k2));
  const double k2_max = harness::kantorovich_by_maximization(2.0);
  c.require(std::abs(k2_max - 1.125) <= 1e-15, fmt("K(2) by maximization = %.17g", k2_max));
  results.push_back(c);
}

void ac4() {
  Criterion c{"AC4 sup/inf of f_v(t)/f_{1/2}(t) over [e^-14, e^14], tol 1e-3"};
  for (double v : {0.1, 0.25, 0.75, 0.9}) {
    auto ratio = [v](double t) {
      return rep_log(Weight(v), RatioPoint(t)) / log_mean_ratio(RatioPoint(t));
    };
    const double hi = std::max((1.0 - v) / v, v / (1.0 - v));
    const double lo = std::min((1.0 - v) / v, v / (1.0 - v));
    const auto sup = numerics::extremum_over_positive_axis(ratio, numerics::ExtremumKind::max);
    const auto inf = numerics::extremum_over_positive_axis(ratio, numerics::ExtremumKind::min);
    c.require(std::abs(sup.value - hi) <= 1e-3 && sup.boundary_flag,
              fmt("v=%.2f sup %.6f at t=%.3g (target %.6f, |diff| %.3e, boundary %s)", v,
                  sup.value, sup.arg, hi, std::abs(sup.value - hi),
                  sup.boundary_flag ? "yes" : "no"));
    c.require(std::abs(inf.value - lo) <= 1e-3 && inf.boundary_flag,
              fmt("v=%.2f inf %.6f at t=%.3g (target %.6f, |diff| %.3e, boundary %s)", v,
                  inf.value, inf.arg, lo, std::abs(inf.value - lo),
                  inf.boundary_flag ? "yes" : "no"));
  }
  results.push_back(c);
}

void ac5() {
  Criterion c{"AC5 Jensen suite, 1e4 instances, and the A=2, G=1, m=2 instance"};
  for (const char* id : {"S22", "S23", "S24", "S25"}) check_entry(c, id, 10000, 1e-10);

  const jensen::JensenTerms t{2.0, 1.0};
  auto near = [](double x, double y) { return std::abs(x - y) <= 1e-6; };
  const auto p = jensen::bounds_power(t, 2);
  c.require(near(p.lower, 0.75) && near(p.upper, 1.5),
            fmt("power (%.9f, %.9f) vs (0.75, 1.5)", p.lower, p.upper));
  // Upper value is the closed form (A^m - G^m)(A - s)/((A + G - s)^m - G^m)
  // at s = sqrt 2, i.e. 3(2 - sqrt 2)/((3 - sqrt 2)^2 - 1).
  const double s2 = std::sqrt(2.0);
  const double sqrt_upper = 3.0 * (2.0 - s2) / ((3.0 - s2) * (3.0 - s2) - 1.0);
  const auto q = jensen::bounds_sqrt_refined(t, 2);
  c.require(near(q.lower, 0.878680) && near(q.upper, sqrt_upper),
            fmt("sqrt-refined (%.9f, %.9f) vs (0.878680, %.9f)", q.lower, q.upper, sqrt_upper));
  const auto y = jensen::bounds_symmetric(t, 2);
  c.require(near(y.lower, 0.942809) && near(y.upper, 1.060660),
            fmt("symmetric (%.9f, %.9f) vs (0.942809, 1.060660)", y.lower, y.upper));
  results.push_back(c);
}

// Commuting counterpart of the operator suite's pairs: the same condition
// number and scale distribution, with B diagonal in A's eigenbasis and its
// spectrum in shuffled order.
struct CommutingPair {
  op::Matrix q;
  op::Vector da, db;
  op::SpdMatrix a, b;
};

CommutingPair commuting_pair(std::uint64_t seed, int dim) {
  Rng rng(seed);
  const double cond_a = rng.log_uniform(1.0, op::kMaxPairCondition);
  const double cond_b = rng.log_uniform(1.0, op::kMaxPairCondition);
  const double scale_b = rng.log_uniform(1e-2, 1e2);
  const op::Matrix q = op::random_spd(rng.next_u64(), dim, 2.0).eigenvectors();
  std::vector<int> order(dim);
  for (int i = 0; i < dim; ++i) order[i] = i;
  for (int i = dim - 1; i > 0; --i) std::swap(order[i], order[rng.uniform_int(0, i)]);
  op::Vector da(dim), db(dim);
  for (int i = 0; i < dim; ++i) {
    const double ua = dim == 1 ? 0.0 : static_cast<double>(i) / (dim - 1);
    const double ub = dim == 1 ? 0.0 : static_cast<double>(order[i]) / (dim - 1);
    da(i) = std::pow(cond_a, ua);
    db(i) = scale_b * std::pow(cond_b, ub);
  }
  auto build = [&](const op::Vector& d) {
    const op::Matrix m = q * d.asDiagonal() * q.transpose();
    return op::SpdMatrix(0.5 * (m + m.transpose()));
  };
  return {q, da, db, build(da), build(db)};
}

double rel_fro(const op::Matrix& x, const op::Matrix& y) {
  return (x - y).norm() / y.norm();
}

void ac6() {
  Criterion c{"AC6 operator rows O1-O4, 1000 pairs per dim 2..8, tol 1e-9"};
  const auto start = std::chrono::steady_clock::now();
  const auto suite = op::run_operator_suite(kSeed, {2, 3, 4, 5, 6, 7, 8}, 1000, 1e-9, 1);
  const double t = seconds_since(start);
  for (const auto& r : suite.rows) {
    c.require(r.failures == 0,
              fmt("%-4s %ld evaluations, %ld failures, min slack/scale %.3e (dim %d pair %ld v %.2f)",
                  r.id.c_str(), r.evaluations, r.failures, r.min_relative_slack, r.argmin_dim,
                  r.argmin_pair, r.argmin_v));
  }
  c.require(t < 120.0, fmt("runtime %.1f s (limit 120 s)", t));

  double worst_g = 0.0, worst_h = 0.0, worst_a = 0.0;
  for (int dim = 2; dim <= 8; ++dim) {
    for (int i = 0; i < 20; ++i) {
      const auto p = commuting_pair(stream_seed(kSeed, "ac6-commuting", dim * 100 + i), dim);
      const op::PairFrame frame(p.a, p.b);
      for (double v : op::weight_grid()) {
        op::Vector g(dim), h(dim), a(dim);
        for (int k = 0; k < dim; ++k) {
          const PositivePair pp(p.da(k), p.db(k));
          g(k) = geometric(Weight(v), pp);
          h(k) = harmonic(Weight(v), pp);
          a(k) = arithmetic(Weight(v), pp);
        }
        auto assemble = [&](const op::Vector& d) {
          return op::Matrix(p.q * d.asDiagonal() * p.q.transpose());
        };
        worst_g = std::max(worst_g, rel_fro(frame.geometric(v), assemble(g)));
        worst_h = std::max(worst_h, rel_fro(frame.harmonic(v), assemble(h)));
        worst_a = std::max(worst_a, rel_fro(frame.arithmetic(v), assemble(a)));
      }
    }
  }
  c.require(std::max({worst_g, worst_h, worst_a}) <= 1e-12,
            fmt("commuting reduction, 140 pairs x 21 weights: max relative Frobenius error "
                "geometric %.3e, harmonic %.3e, arithmetic %.3e (limit 1e-12)",
                worst_g, worst_h, worst_a));
  results.push_back(c);
}

void ac7() {
  Criterion c{"AC7 k-constants against grid maximization"};
  auto g1 = [](double t) { return std::max(1.0, 1.0 / t) * log_mean_ratio(RatioPoint(t)); };
  auto g2 = [](double t) { return specht(RatioPoint(t)) + 1.0; };
  auto grid_max = [](auto&& g, double alpha, double beta) {
    constexpr int n = 20001;
    double best = -std::numeric_limits<double>::infinity();
    const double lo = std::log(alpha), hi = std::log(beta);
    for (int i = 0; i < n; ++i) {
      const double s = i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1);
      best = std::max(best, g(i == 0 ? alpha : (i == n - 1 ? beta : std::exp(s))));
    }
    return best;
  };

  for (int branch = 0; branch < 2; ++branch) {
    double worst1 = 0.0, worst2 = 0.0;
    int branch_mismatch = 0;
    for (int i = 0; i < 20; ++i) {
      Rng rng(stream_seed(kSeed, branch == 0 ? "ac7-up" : "ac7-down", i));
      const double x = std::exp(rng.uniform(0.0, 4.0));
      const double y = x * std::exp(rng.uniform(0.0, 4.0));
      const double alpha = branch == 0 ? x : 1.0 / y;
      const double beta = branch == 0 ? y : 1.0 / x;
      const auto k = op::k_constants({alpha, beta});
      const auto expected = branch == 0 ? op::KBranch::alpha_at_least_one
                                        : op::KBranch::beta_at_most_one;
      if (k.branch != expected) ++branch_mismatch;
      worst1 = std::max(worst1, std::abs(k.k1 - grid_max(g1, alpha, beta)));
      worst2 = std::max(worst2, std::abs(k.k2 - grid_max(g2, alpha, beta)));
    }
    const char* name = branch == 0 ? "alpha >= 1" : "beta <= 1";
    c.require(branch_mismatch == 0 && worst1 <= 1e-8 && worst2 <= 1e-8,
              fmt("%s: 20 pairs, max |k1 - grid| %.3e, max |k2 - grid| %.3e", name, worst1,
                  worst2));
  }

  int mixed = 0, failures = 0;
  for (long i = 0; mixed < 20 && i < 10000; ++i) {
    const auto pair = op::generate_pair(kSeed, 2 + static_cast<int>(i % 7), i);
    const op::PairFrame frame(pair.a, pair.b);
    const auto& lambda = frame.ratio_spectrum();
    const auto k = op::k_constants({lambda(0), lambda(lambda.size() - 1)});
    if (k.branch != op::KBranch::mixed) continue;
    ++mixed;
    for (double v : op::weight_grid()) {
      for (const auto& check : op::evaluate_operator_rows(frame, k, v, 1e-9, false)) {
        if ((check.id == "O3a" || check.id == "O3b") && !check.verdict.pass) ++failures;
      }
    }
  }
  c.require(mixed == 20 && failures == 0,
            fmt("mixed branch: %d matrix pairs, %d O3a/O3b failures over the weight grid", mixed,
                failures));
  results.push_back(c);
}

void ac8() {
  Criterion c{"AC8 quadrature oracle"};
  for (double t : {0.1, 0.5, 2.0, 10.0}) {
    const auto q = numerics::integrate_unit([t](double x) { return std::pow(t, x); }, 1e-14);
    const double exact = (t - 1.0) / std::log(t);
    c.require(std::abs(q.value - exact) <= 1e-12,
              fmt("int_0^1 %.1f^x dx: |error| %.3e", t, std::abs(q.value - exact)));
  }
  double worst = 0.0;
  for (int dim = 2; dim <= 8; ++dim) {
    for (int i = 0; i < 10; ++i) {
      const auto p = commuting_pair(stream_seed(kSeed, "ac8-commuting", dim * 100 + i), dim);
      op::Vector l(dim);
      for (int k = 0; k < dim; ++k) {
        l(k) = weighted_log_mean(Weight(0.5), PositivePair(p.da(k), p.db(k)));
      }
      const op::Matrix expected = p.q * l.asDiagonal() * p.q.transpose();
      worst = std::max(worst, rel_fro(op::op_log_mean(Weight(0.5), p.a, p.b).matrix(), expected));
    }
  }
  c.require(worst <= 1e-10,
            fmt("op_log_mean at v=1/2 on 70 commuting pairs: max relative error %.3e", worst));
  results.push_back(c);
}

void ac9() {
  Criterion c{"AC9 verify --suite all is byte-identical across worker counts"};
  harness::SampleSpec spec;
  spec.suite = harness::Suite::all;
  spec.seed = kSeed;
  spec.workers = 1;
  const std::string one = harness::render(harness::run_verify(spec), harness::Format::json);
  spec.workers = 4;
  const std::string four = harness::render(harness::run_verify(spec), harness::Format::json);
  c.require(one == four, fmt("workers 1 vs 4: %zu vs %zu bytes, %s", one.size(), four.size(),
                             one == four ? "identical" : "different"));
  results.push_back(c);
}

}  // namespace

int main() {
  ac1();
  ac2();
  ac3();
  ac4();
  ac5();
  ac6();
  ac7();
  ac8();
  ac9();

  int failed = 0;
  for (const auto& r : results) {
    std::printf("%s %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str());
    for (const auto& d : r.details) std::printf("    %s\n", d.c_str());
    if (!r.pass) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(results.size()) - failed,
              results.size());
  return failed == 0 ? 0 : 1;
}
