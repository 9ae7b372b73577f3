#include <doctest.h>

#include <cmath>

#include "meanscope/means.hpp"
#include "meanscope/operator_means.hpp"
#include "meanscope/operator_suite.hpp"

using namespace meanscope;
using namespace meanscope::op;

namespace {

// Commuting pair: both diagonal in the orthonormal basis q.
struct Commuting {
  Matrix q;
  SpdMatrix a;
  SpdMatrix b;
  Matrix assemble(const Vector& d) const { return q * d.asDiagonal() * q.transpose(); }
};

Commuting commuting(std::uint64_t seed, const Vector& da, const Vector& db) {
  const Matrix q = random_spd(seed, static_cast<int>(da.size()), 3.0).eigenvectors();
  auto build = [&](const Vector& d) {
    const Matrix m = q * d.asDiagonal() * q.transpose();
    return SpdMatrix(0.5 * (m + m.transpose()));
  };
  return {q, build(da), build(db)};
}

double rel_diff(const Matrix& x, const Matrix& y) {
  return (x - y).norm() / std::max(1.0, y.norm());
}

}  // namespace

TEST_CASE("SpdMatrix validation") {
  Matrix asym(2, 2);
  asym << 2, 1, 0, 2;
  CHECK_THROWS_AS(SpdMatrix{asym}, std::invalid_argument);
  Matrix indefinite(2, 2);
  indefinite << 1, 2, 2, 1;
  CHECK_THROWS_AS(SpdMatrix{indefinite}, std::invalid_argument);
  CHECK_THROWS_AS(SpdMatrix(Matrix(2, 3)), std::invalid_argument);
  CHECK_THROWS_AS(PairFrame(random_spd(1, 2, 2.0), random_spd(2, 3, 2.0)), std::invalid_argument);
}

TEST_CASE("random_spd hits its condition number") {
  const SpdMatrix m = random_spd(42, 6, 1e3);
  CHECK(m.condition_number() == doctest::Approx(1e3).epsilon(1e-9));
  CHECK(m.min_eigenvalue() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("means of commuting pairs reduce to scalar means") {
  Vector da(4), db(4);
  da << 0.5, 1.0, 2.0, 7.0;
  db << 3.0, 0.2, 2.0, 11.0;
  const Commuting c = commuting(9, da, db);
  const PairFrame frame(c.a, c.b);
  for (double v : {0.0, 0.25, 0.5, 0.9, 1.0}) {
    Vector g(4), h(4), l(4);
    for (int i = 0; i < 4; ++i) {
      const PositivePair p(da(i), db(i));
      g(i) = geometric(Weight(v), p);
      h(i) = harmonic(Weight(v), p);
      l(i) = weighted_log_mean(Weight(v), p);
    }
    CHECK(rel_diff(frame.geometric(v), c.assemble(g)) < 1e-12);
    CHECK(rel_diff(frame.harmonic(v), c.assemble(h)) < 1e-12);
    CHECK(rel_diff(frame.log_mean(v, kOperatorQuadratureTol).value, c.assemble(l)) < 1e-10);
  }
}

TEST_CASE("operator log mean endpoints and errors") {
  const SpdMatrix a = random_spd(3, 3, 10.0);
  const SpdMatrix b = random_spd(4, 3, 50.0);
  CHECK(op_log_mean(Weight(0.0), a, b).matrix() == a.matrix());
  CHECK(op_log_mean(Weight(1.0), a, b).matrix() == b.matrix());
  CHECK(rel_diff(op_log_mean(Weight(0.3), a, a).matrix(), a.matrix()) < 1e-13);
}

TEST_CASE("natural extension exponents") {
  const SpdMatrix a = random_spd(5, 3, 20.0);
  const SpdMatrix b = random_spd(6, 3, 20.0);
  const PairFrame frame(a, b);
  // A natural_2 B = B A^-1 B.
  const Matrix expected = b.matrix() * frame.a_inverse() * b.matrix();
  CHECK(rel_diff(op_natural_ext(2.0, a, b).matrix(), expected) < 1e-10);
  CHECK(rel_diff(op_natural_ext(-1.0, a, b).matrix(), a.matrix() * frame.b_inverse() * a.matrix()) <
        1e-10);
}

TEST_CASE("Loewner check") {
  const Matrix a = random_spd(7, 4, 5.0).matrix();
  CHECK(loewner_leq(a, 2.0 * a, 1e-9).pass);
  CHECK_FALSE(loewner_leq(2.0 * a, a, 1e-9).pass);
  const auto self = loewner_leq(a, a, 1e-9);
  CHECK(self.pass);
  CHECK(self.min_eig_of_difference == 0.0);
}

TEST_CASE("k-constants branches") {
  const auto up = k_constants({2.0, 5.0});
  CHECK(up.branch == KBranch::alpha_at_least_one);
  CHECK(up.k1 == doctest::Approx(4.0 / std::log(5.0)));
  CHECK(up.k2 == doctest::Approx(specht(RatioPoint(5.0)) + 1.0));
  const auto down = k_constants({0.2, 0.5});
  CHECK(down.branch == KBranch::beta_at_most_one);
  CHECK(down.k1 == doctest::Approx((0.2 - 1.0) / (0.2 * std::log(0.2))));
  CHECK(down.k2 == doctest::Approx(specht(RatioPoint(0.2)) + 1.0));
  const auto mixed = k_constants({0.5, 2.0});
  CHECK(mixed.branch == KBranch::mixed);
  const double k1_left = (0.5 - 1.0) / (0.5 * std::log(0.5));
  const double k1_right = 1.0 / std::log(2.0);
  CHECK(std::abs(mixed.k1 - std::max(k1_left, k1_right)) < 1e-8);
  CHECK(std::abs(mixed.k2 - (specht(RatioPoint(2.0)) + 1.0)) < 1e-8);
  CHECK_THROWS_AS(k_constants({2.0, 1.0}), std::invalid_argument);
}

TEST_CASE("operator rows pass on seeded pairs") {
  for (int dim : {2, 5}) {
    for (long i = 0; i < 10; ++i) {
      const auto pair = generate_pair(123, dim, i);
      const PairFrame frame(pair.a, pair.b);
      const auto& lambda = frame.ratio_spectrum();
      const auto k = k_constants({lambda(0), lambda(lambda.size() - 1)});
      for (double v : weight_grid()) {
        for (const auto& c : evaluate_operator_rows(frame, k, v, 1e-9, v == 0.0)) {
          CHECK_MESSAGE(c.verdict.pass, c.id << " dim " << dim << " pair " << i << " v " << v);
        }
      }
    }
  }
}

TEST_CASE("operator suite is independent of the worker count") {
  const auto one = run_operator_suite(77, {2, 3}, 6, 1e-9, 1);
  const auto three = run_operator_suite(77, {2, 3}, 6, 1e-9, 3);
  REQUIRE(one.rows.size() == three.rows.size());
  for (std::size_t r = 0; r < one.rows.size(); ++r) {
    CHECK(one.rows[r].evaluations == three.rows[r].evaluations);
    CHECK(one.rows[r].min_relative_slack == three.rows[r].min_relative_slack);
    CHECK(one.rows[r].argmin_pair == three.rows[r].argmin_pair);
    CHECK(one.rows[r].argmin_v == three.rows[r].argmin_v);
  }
}
