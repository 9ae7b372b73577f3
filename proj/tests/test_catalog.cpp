#include <doctest.h>

#include <cmath>
#include <set>

#include "meanscope/catalog.hpp"
#include "meanscope/means.hpp"

using namespace meanscope;
using namespace meanscope::catalog;

TEST_CASE("catalog lists S1..S25 in order with unique ids") {
  const auto entries = list_entries();
  REQUIRE(entries.size() == 25);
  std::set<std::string> ids;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    CHECK(entries[i].id == "S" + std::to_string(i + 1));
    CHECK_FALSE(entries[i].reference.empty());
    ids.insert(entries[i].id);
  }
  CHECK(ids.size() == 25);
  CHECK_THROWS_AS(find_entry("S99"), UnknownEntryError);
}

TEST_CASE("signature mismatch is rejected") {
  CHECK_THROWS_AS(evaluate("S1", CheckInputs::pair(1.0, 2.0), 1e-10), SignatureMismatchError);
  CHECK_THROWS_AS(evaluate("S14", CheckInputs::pair(1.0, 2.0), 1e-10), SignatureMismatchError);
}

TEST_CASE("worked values") {
  SUBCASE("S1 at v = 1/2, t = 4") {
    const auto o = evaluate("S1", CheckInputs::weight_ratio(0.5, 4.0), 1e-10);
    REQUIRE(o.side_values.size() == 3);
    CHECK(o.side_values[0] == doctest::Approx(1.6));
    CHECK(o.side_values[1] == doctest::Approx(2.0));
    CHECK(o.side_values[2] == doctest::Approx(2.5));
    CHECK(o.pass);
  }
  SUBCASE("S19 at (1, 4)") {
    const auto o = evaluate("S19", CheckInputs::pair(1.0, 4.0), 1e-10);
    CHECK(o.side_values[0] == doctest::Approx(0.45).epsilon(1e-14));
    CHECK(o.side_values[1] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(o.side_values[2] == doctest::Approx(0.5625).epsilon(1e-14));
  }
  SUBCASE("S7 at v = 1/2, t = 4") {
    const auto o = evaluate("S7", CheckInputs::weight_ratio(0.5, 4.0), 1e-10);
    CHECK(o.side_values[1] == doctest::Approx(2.1213203435596426).epsilon(1e-14));
    CHECK(o.side_values[2] == doctest::Approx(2.1640425613334451).epsilon(1e-14));
    CHECK(o.pass);
  }
  SUBCASE("S10 collapses to equality at v = 1/2") {
    const auto o = evaluate("S10", CheckInputs::weight_ratio(0.5, 9.0), 1e-10);
    CHECK(o.side_values[1] == doctest::Approx(8.0 / std::log(9.0)).epsilon(1e-14));
    CHECK(std::abs(o.min_slack) < 1e-14);
  }
}

TEST_CASE("identities at the singular set") {
  for (const char* id : {"S11", "S12", "S13"}) {
    for (double v : {0.0, 0.3, 1.0}) {
      const auto o = evaluate(id, CheckInputs::weight_ratio(v, 1.0), 1e-10);
      CHECK_MESSAGE(o.pass, id << " v=" << v << ": " << o.diagnostic);
    }
  }
}

TEST_CASE("composition identity uses the affine extension") {
  // With the geometric-mean reading, (L(t^v,1)) #_w (L(t,1)) at t = 4,
  // v = 1/4 gives 1.4566..., which misses f_v(4) = 1.518126.
  const double t = 4.0, v = 0.25, w = v / (1.0 - v);
  const double inner = log_mean_ratio(RatioPoint(std::pow(t, v)));
  const double outer = log_mean_ratio(RatioPoint(t));
  const double sharp = std::pow(inner, 1.0 - w) * std::pow(outer, w);
  CHECK(std::abs(sharp - 1.5181259901839691) > 0.05);
  const auto o = evaluate("S11", CheckInputs::weight_ratio(v, t), 1e-10);
  CHECK(o.pass);
  CHECK(o.side_values[1] == doctest::Approx(1.5181259901839691).epsilon(1e-13));
}

TEST_CASE("S7 ordering: L_v(1,t) holds and L_v(t,1) is reported as alternate") {
  const auto o = evaluate("S7", CheckInputs::weight_ratio(0.8, 50.0), 1e-10);
  CHECK(o.pass);
  REQUIRE(o.alternate_min_slack.has_value());
  CHECK_FALSE(o.alternate_pass());
}

TEST_CASE("infinite coefficient is a vacuous bound") {
  const auto o = evaluate("S10", CheckInputs::weight_ratio(0.0, 3.0), 1e-10);
  CHECK(o.pass);
  CHECK(std::isinf(o.side_values[2]));
  CHECK_FALSE(o.diagnostic.empty());
}

TEST_CASE("ordered pairs require x <= y") {
  CHECK_THROWS_AS(evaluate("S20", CheckInputs::ordered_pair(3.0, 1.0), 1e-10),
                  std::invalid_argument);
}

TEST_CASE("sampled inputs respect each entry's domain") {
  for (const auto& e : list_entries()) {
    for (int i = 0; i < 200; ++i) {
      Rng rng(stream_seed(5, e.id, i));
      const auto in = sample_inputs(e, rng);
      CHECK(in.signature == e.signature);
      const auto o = evaluate(e.id, in, 1e-10);
      CHECK_MESSAGE(o.pass, e.id << " sample " << i << ": " << o.diagnostic);
    }
  }
}

TEST_CASE("tightness search finds equality cases") {
  const auto s19 = tightness_search("S19", 2000, 1, 1e-10);
  CHECK(std::abs(s19.relative_slack()) < 1e-12);
  CHECK(s19.inputs.a == doctest::Approx(s19.inputs.b));
  const auto s5 = tightness_search("S5", 2000, 1, 1e-10);
  CHECK(std::abs(s5.relative_slack()) < 1e-12);
}

TEST_CASE("fingerprint is stable within a build") {
  CHECK(catalog_fingerprint() == catalog_fingerprint());
  CHECK(catalog_fingerprint().size() == 16);
}
