#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "meanscope/rng.hpp"

namespace meanscope::catalog {

/// Shape of the inputs an entry consumes.
enum class Signature {
  weight_ratio,  // (v, t)
  pair,          // (a, b), optionally with a convex function
  pair_weight,   // (a, b, v), optionally with a convex function
  ordered_pair,  // (x, y) with x <= y, stored in a, b
  jensen,        // (points, weights, f, m)
};

const char* to_string(Signature s);

enum class EntryKind {
  inequality,  // chain: side[0] <= side[1] <= ...
  identity,    // all sides equal
  comparison,  // explicit side[i] <= side[j] pairs between two bounds
};

struct CheckInputs {
  Signature signature = Signature::weight_ratio;
  double v = 0.0;
  double t = 1.0;
  double a = 1.0;
  double b = 1.0;
  std::string function;  // convex catalog name, empty when unused
  std::vector<double> points;
  std::vector<double> weights;
  int m = 0;

  static CheckInputs weight_ratio(double v, double t);
  static CheckInputs pair(double a, double b, std::string function = {});
  static CheckInputs pair_weight(double a, double b, double v, std::string function = {});
  static CheckInputs ordered_pair(double x, double y);
  static CheckInputs jensen(std::vector<double> points, std::vector<double> weights,
                            std::string function, int m);
};

/// Side values of one evaluation plus an optional note (e.g. a quadrature
/// that hit its depth cap).
struct SideValues {
  SideValues() = default;
  SideValues(std::vector<double> v) : values(std::move(v)) {}  // NOLINT(google-explicit-constructor)
  SideValues(std::vector<double> v, std::string n) : values(std::move(v)), note(std::move(n)) {}
  std::vector<double> values;
  std::string note;
};

using SideFn = std::function<SideValues(const CheckInputs&)>;

struct InequalityEntry {
  std::string id;
  std::string description;
  std::string reference;  // result label and a short quoted anchor
  Signature signature = Signature::weight_ratio;
  EntryKind kind = EntryKind::inequality;
  bool needs_function = false;
  bool needs_nonnegative_function = false;
  std::vector<std::string> side_labels;
  std::vector<std::pair<int, int>> comparisons;  // side[i] <= side[j]; chain when empty
  SideFn sides;
  // A second reading of the same chain that is evaluated and reported but
  // does not decide pass/fail.
  SideFn alternate;
  std::string alternate_label;
};

struct CheckOutcome {
  std::string entry_id;
  CheckInputs inputs;
  std::vector<double> side_values;
  double min_slack = 0.0;  // minimum of rhs - lhs over the compared pairs
  double scale = 1.0;      // max(1, max |finite side|)
  double tol = 0.0;
  bool pass = false;
  std::string diagnostic;
  std::optional<double> alternate_min_slack;
  std::optional<double> alternate_scale;

  double relative_slack() const { return min_slack / scale; }
  bool alternate_pass() const {
    return alternate_min_slack && *alternate_min_slack >= -tol * alternate_scale.value_or(1.0);
  }
};

class UnknownEntryError : public std::invalid_argument {
 public:
  explicit UnknownEntryError(std::string_view id)
      : std::invalid_argument("unknown inequality id: " + std::string(id)) {}
};

class SignatureMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The full catalog S1..S25 in fixed order.
std::span<const InequalityEntry> list_entries();

const InequalityEntry& find_entry(std::string_view id);

/// Evaluates every side and the minimum slack. Non-finite sides produce a
/// failing outcome with a diagnostic; +infinity on the larger side of a pair
/// is a vacuous bound and counts as satisfied.
CheckOutcome evaluate(std::string_view id, const CheckInputs& inputs, double tol);

/// Draws inputs from the entry's verification domain: v ~ U[0, 1],
/// t = e^s with s ~ U[-6, 6], pairs log-uniform in [1e-2, 1e2], convex
/// functions uniformly from the fixed catalog.
CheckInputs sample_inputs(const InequalityEntry& entry, Rng& rng);

/// Random plus grid search for the smallest relative slack within `budget`
/// evaluations. Returns the worst case found, which need not be global.
CheckOutcome tightness_search(std::string_view id, long budget, std::uint64_t seed, double tol);

/// Catalog fingerprint; changes whenever an id, description or side layout
/// changes.
std::string catalog_fingerprint();

}  // namespace meanscope::catalog
