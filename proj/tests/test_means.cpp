#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "meanscope/means.hpp"
#include "meanscope/rng.hpp"

using namespace meanscope;

namespace {

double rel(double x, double y) { return std::abs(x - y) / std::max(1.0, std::abs(y)); }

}  // namespace

TEST_CASE("weight and pair validation") {
  CHECK_THROWS_AS(Weight(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(Weight(1.5), std::invalid_argument);
  CHECK_THROWS_AS(Weight(std::nan("")), std::invalid_argument);
  CHECK_NOTHROW(Weight(0.0));
  CHECK_NOTHROW(Weight(1.0));
  CHECK_THROWS_AS(PositivePair(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(PositivePair(1.0, -2.0), std::invalid_argument);
  CHECK_THROWS_AS(PositivePair(1.0, std::numeric_limits<double>::infinity()),
                  std::invalid_argument);
  CHECK_THROWS_AS(RatioPoint(0.0), std::invalid_argument);
}

TEST_CASE("two-argument means at known points") {
  const PositivePair p(2.0, 8.0);
  CHECK(arithmetic(Weight(0.3), p) == doctest::Approx(3.8).epsilon(1e-15));
  CHECK(geometric(Weight(0.3), p) == doctest::Approx(3.0314331330207962).epsilon(1e-14));
  CHECK(harmonic(Weight(0.5), p) == doctest::Approx(3.2).epsilon(1e-15));
  CHECK(weighted_log_mean(Weight(0.25), PositivePair(1.0, 4.0)) ==
        doctest::Approx(1.5181259901839691).epsilon(1e-14));
}

TEST_CASE("endpoints are exact") {
  const PositivePair p(3.0, 7.0);
  for (double (*mean)(Weight, PositivePair) :
       {&arithmetic, &geometric, &harmonic, &weighted_log_mean}) {
    CHECK(mean(Weight(0.0), p) == 3.0);
    CHECK(mean(Weight(1.0), p) == 7.0);
    CHECK(mean(Weight(0.4), PositivePair(5.0, 5.0)) == 5.0);
  }
}

TEST_CASE("representing function of the logarithmic mean") {
  CHECK(rep_log(Weight(0.25), RatioPoint(4.0)) == doctest::Approx(1.5181259901839691).epsilon(1e-14));
  CHECK(rep_log(Weight(0.25), RatioPoint(std::exp(1.0))) ==
        doctest::Approx(1.3301617206536590).epsilon(1e-14));
  CHECK(rep_log(Weight(0.5), RatioPoint(4.0)) == doctest::Approx(3.0 / std::log(4.0)).epsilon(1e-14));
  CHECK(rep_log(Weight(0.7), RatioPoint(1.0)) == 1.0);

  SUBCASE("continuous across the near-one switch") {
    for (double v : {0.1, 0.5, 0.9}) {
      for (double d : {0.99e-5, 1.01e-5}) {
        for (double sign : {-1.0, 1.0}) {
          const double t = 1.0 + sign * d;
          // Second-order expansion 1 + v d + v(2v - 1)/6 d^2 ... checked loosely.
          const double approx = 1.0 + v * (t - 1.0);
          CHECK(rel(rep_log(Weight(v), RatioPoint(t)), approx) < 1e-9);
        }
      }
    }
  }

  SUBCASE("weights near the ends approach 1 and t") {
    CHECK(rel(rep_log(Weight(1e-12), RatioPoint(50.0)), 1.0) < 1e-9);
    CHECK(rel(rep_log(Weight(1.0 - 1e-12), RatioPoint(50.0)), 50.0) < 1e-9);
  }
}

TEST_CASE("symmetry L_v(a, b) = L_{1-v}(b, a)") {
  Rng rng(7);
  for (int i = 0; i < 2000; ++i) {
    const double a = rng.log_uniform(1e-3, 1e3);
    const double b = rng.log_uniform(1e-3, 1e3);
    const double v = rng.uniform();
    CHECK(rel(weighted_log_mean(Weight(v), PositivePair(a, b)),
              weighted_log_mean(Weight(1.0 - v), PositivePair(b, a))) < 1e-12);
  }
}

TEST_CASE("harmonic <= geometric <= log mean <= arithmetic") {
  Rng rng(11);
  for (int i = 0; i < 5000; ++i) {
    const PositivePair p(rng.log_uniform(1e-2, 1e2), rng.log_uniform(1e-2, 1e2));
    const Weight v(rng.uniform());
    const double h = harmonic(v, p), g = geometric(v, p), l = weighted_log_mean(v, p),
                 a = arithmetic(v, p);
    const double tol = 1e-12 * a;
    CHECK(h <= g + tol);
    CHECK(g <= l + tol);
    CHECK(l <= a + tol);
  }
}

TEST_CASE("natural extension of the geometric mean") {
  CHECK(natural_ext_geometric(1.5, PositivePair(1.0, 4.0)) == doctest::Approx(8.0).epsilon(1e-14));
  CHECK(natural_ext_geometric(-0.5, PositivePair(1.0, 4.0)) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK_THROWS_AS(natural_ext_geometric(1e6, PositivePair(1.0, 1e3)), std::overflow_error);
}

TEST_CASE("Specht ratio and Kantorovich constant") {
  CHECK(specht(RatioPoint(1.0)) == 1.0);
  CHECK(specht(RatioPoint(4.0)) == doctest::Approx(1.2637407212158111).epsilon(1e-14));
  CHECK(specht(RatioPoint(0.25)) == doctest::Approx(1.2637407212158111).epsilon(1e-14));
  CHECK(specht(RatioPoint(10.0)) == doctest::Approx(1.8571348933459846).epsilon(1e-14));
  CHECK(specht(RatioPoint(2.0)) == doctest::Approx(1.0614756908460860).epsilon(1e-14));
  CHECK(specht(RatioPoint(1.0 + 1e-9)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(kantorovich(RatioPoint(2.0)) == 9.0 / 8.0);
  CHECK(kantorovich(RatioPoint(1.0)) == 1.0);
  CHECK(kantorovich(RatioPoint(4.0)) == 1.5625);
}

TEST_CASE("refined lower bound at a worked point") {
  CHECK(fn_refined_lower(Weight(0.5), RatioPoint(4.0)) ==
        doctest::Approx(2.1213203435596426).epsilon(1e-14));
}
