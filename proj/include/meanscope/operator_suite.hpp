#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "meanscope/operator_means.hpp"

namespace meanscope::op {

// Operator inequality rows evaluated into Loewner verdicts:
//   O1   A!_vB <= A#_vB <= Al_vB <= (A#_vB + A nabla_v B)/2 <= A nabla_v B
//   O2   min{(1-v)/v, v/(1-v)} Al_{1/2}B <= Al_vB <= max{...} Al_{1/2}B
//   O3a  Al_vB <= k1 A#_vB
//   O3b  A#_vB + A nabla_v B <= k2 Al_vB
//   O4   (B - 3A)/4 + (A !_{1/2} (A B^-1 A))/2 <= A nabla_{1/2} B - A #_{1/2} B
//          <= (A natural_{3/2} B - 2 A #_{1/2} B + A natural_{-1/2} B)/8

struct OperatorRow {
  std::string id;
  std::string description;
  std::string reference;
};

const std::vector<OperatorRow>& operator_rows();

inline constexpr double kO2WeightMargin = 1e-3;
inline constexpr int kWeightGridPoints = 21;
inline constexpr double kMaxPairCondition = 1e4;

/// Weight grid 0, 0.05, ..., 1.
std::vector<double> weight_grid();

struct OperatorCheck {
  std::string id;
  LoewnerVerdict verdict;  // the weakest link of the row's chain
};

/// Evaluates every row that applies at weight v. O2 is skipped outside
/// [1e-3, 1 - 1e-3]; O4 does not depend on v and is only evaluated when
/// `include_v_free` is set. `half_log_mean` may carry A l_{1/2} B to avoid
/// recomputation.
std::vector<OperatorCheck> evaluate_operator_rows(const PairFrame& frame, const KConstants& k,
                                                  double v, double tol, bool include_v_free,
                                                  const Matrix* half_log_mean = nullptr);

struct OperatorPair {
  int dim = 0;
  long index = 0;
  double cond_a = 1.0;
  double cond_b = 1.0;
  std::uint64_t seed_a = 0;
  std::uint64_t seed_b = 0;
  SpdMatrix a;
  SpdMatrix b;
};

/// Pair `index` of dimension `dim` for a suite seed: independent streams per
/// (seed, dim, index), condition numbers log-uniform in [1, 1e4].
OperatorPair generate_pair(std::uint64_t seed, int dim, long index);

struct OperatorRowStats {
  std::string id;
  long evaluations = 0;
  long failures = 0;
  long excluded = 0;  // (pair, v) cells outside the row's weight range
  double min_relative_slack = std::numeric_limits<double>::infinity();
  // Location of the worst cell.
  int argmin_dim = 0;
  long argmin_pair = -1;
  double argmin_v = 0.0;
  double argmin_min_eig = 0.0;
  double argmin_scale = 1.0;
};

struct OperatorSuiteResult {
  std::vector<OperatorRowStats> rows;
  long pairs = 0;
};

/// Runs O1..O4 on `pairs` seeded SPD pairs per dimension over the weight
/// grid. Work is split across `workers` threads by pair index; the merge
/// keeps the lowest (dim, pair, v) on ties, so results do not depend on the
/// worker count.
OperatorSuiteResult run_operator_suite(std::uint64_t seed, const std::vector<int>& dims,
                                       long pairs, double tol, int workers);

}  // namespace meanscope::op
