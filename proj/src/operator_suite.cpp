#include "meanscope/operator_suite.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "meanscope/rng.hpp"

namespace meanscope::op {

namespace {

// Weakest link of X0 <= X1 <= ... <= Xk.
LoewnerVerdict chain_verdict(const std::vector<Matrix>& chain, double tol) {
  LoewnerVerdict worst;
  bool first = true;
  bool all_pass = true;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    const LoewnerVerdict v = loewner_leq(chain[i], chain[i + 1], tol);
    all_pass = all_pass && v.pass;
    if (first || v.relative_slack() < worst.relative_slack()) {
      worst = v;
      first = false;
    }
  }
  worst.pass = all_pass;
  return worst;
}

Matrix inverse_spd(const Matrix& m) {
  const Matrix inv = m.ldlt().solve(Matrix::Identity(m.rows(), m.cols()));
  return 0.5 * (inv + inv.transpose());
}

struct CellKey {
  int dim_rank;
  long pair;
  double v;
};

bool earlier(const CellKey& x, const CellKey& y) {
  if (x.dim_rank != y.dim_rank) return x.dim_rank < y.dim_rank;
  if (x.pair != y.pair) return x.pair < y.pair;
  return x.v < y.v;
}

struct RowAccumulator {
  OperatorRowStats stats;
  CellKey key{0, -1, 0.0};

  void record(const OperatorCheck& c, int dim_rank, int dim, long pair, double v) {
    ++stats.evaluations;
    if (!c.verdict.pass) ++stats.failures;
    const double rel = c.verdict.relative_slack();
    const CellKey k{dim_rank, pair, v};
    if (rel < stats.min_relative_slack ||
        (rel == stats.min_relative_slack && earlier(k, key))) {
      stats.min_relative_slack = rel;
      stats.argmin_dim = dim;
      stats.argmin_pair = pair;
      stats.argmin_v = v;
      stats.argmin_min_eig = c.verdict.min_eig_of_difference;
      stats.argmin_scale = c.verdict.scale;
      key = k;
    }
  }

  void merge(const RowAccumulator& o) {
    stats.evaluations += o.stats.evaluations;
    stats.failures += o.stats.failures;
    stats.excluded += o.stats.excluded;
    if (o.stats.argmin_pair < 0) return;
    if (stats.argmin_pair < 0 || o.stats.min_relative_slack < stats.min_relative_slack ||
        (o.stats.min_relative_slack == stats.min_relative_slack && earlier(o.key, key))) {
      const long evals = stats.evaluations;
      const long fails = stats.failures;
      const long excl = stats.excluded;
      stats = o.stats;
      stats.evaluations = evals;
      stats.failures = fails;
      stats.excluded = excl;
      key = o.key;
    }
  }
};

}  // namespace

const std::vector<OperatorRow>& operator_rows() {
  static const std::vector<OperatorRow> rows = {
      {"O1", "A!_vB <= A#_vB <= Al_vB <= (A#_vB + A nabla_v B)/2 <= A nabla_v B",
       "Sec. 2: \"It was shown that\""},
      {"O2", "min{(1-v)/v, v/(1-v)} Al_{1/2}B <= Al_vB <= max{(1-v)/v, v/(1-v)} Al_{1/2}B",
       "Corollary 2.3: \"we have the following inequalities\""},
      {"O3a", "Al_vB <= k1 A#_vB", "Corollary 2.4(i): \"we also have the following results\""},
      {"O3b", "A#_vB + A nabla_v B <= k2 Al_vB",
       "Corollary 2.4(ii): \"we also have the following results\""},
      {"O4", "noncommutative refined AM-GM difference bounds",
       "Noncommutative corollary: \"a noncommutative version of Corollary\""},
  };
  return rows;
}

std::vector<double> weight_grid() {
  std::vector<double> grid(kWeightGridPoints);
  for (int i = 0; i < kWeightGridPoints; ++i) {
    grid[i] = static_cast<double>(i) / (kWeightGridPoints - 1);
  }
  return grid;
}

std::vector<OperatorCheck> evaluate_operator_rows(const PairFrame& frame, const KConstants& k,
                                                  double v, double tol, bool include_v_free,
                                                  const Matrix* half_log_mean) {
  std::vector<OperatorCheck> out;
  const Matrix harm = frame.harmonic(v);
  const Matrix geo = frame.geometric(v);
  const Matrix arith = frame.arithmetic(v);
  const Matrix log = frame.log_mean(v, kOperatorQuadratureTol).value;

  out.push_back({"O1", chain_verdict({harm, geo, log, 0.5 * (geo + arith), arith}, tol)});

  if (v >= kO2WeightMargin && v <= 1.0 - kO2WeightMargin) {
    const Matrix half =
        half_log_mean ? *half_log_mean : frame.log_mean(0.5, kOperatorQuadratureTol).value;
    const double up = (1.0 - v) / v;
    const double down = v / (1.0 - v);
    out.push_back(
        {"O2", chain_verdict({std::min(up, down) * half, log, std::max(up, down) * half}, tol)});
  }

  out.push_back({"O3a", chain_verdict({log, k.k1 * geo}, tol)});
  out.push_back({"O3b", chain_verdict({geo + arith, k.k2 * log}, tol)});

  if (include_v_free) {
    const Matrix& a = frame.a();
    const Matrix& b = frame.b();
    // A !_{1/2} (A B^-1 A) = {(A^-1 + A^-1 B A^-1)/2}^-1
    const Matrix a_inv = frame.a_inverse();
    const Matrix harm_half = inverse_spd(0.5 * (a_inv + a_inv * b * a_inv));
    const Matrix geo_half = frame.geometric(0.5);
    const Matrix lower = 0.25 * (b - 3.0 * a) + 0.5 * harm_half;
    const Matrix middle = frame.arithmetic(0.5) - geo_half;
    const Matrix upper =
        0.125 * (frame.geometric(1.5) - 2.0 * geo_half + frame.geometric(-0.5));
    out.push_back({"O4", chain_verdict({lower, middle, upper}, tol)});
  }
  return out;
}

OperatorPair generate_pair(std::uint64_t seed, int dim, long index) {
  const std::string label = "operator-pair-dim" + std::to_string(dim);
  Rng rng(stream_seed(seed, label, static_cast<std::uint64_t>(index)));
  const double cond_a = rng.log_uniform(1.0, kMaxPairCondition);
  const double cond_b = rng.log_uniform(1.0, kMaxPairCondition);
  const std::uint64_t seed_a = rng.next_u64();
  const std::uint64_t seed_b = rng.next_u64();
  // Overall scale of B, independent of A.
  const double scale_b = rng.log_uniform(1e-2, 1e2);
  SpdMatrix a = random_spd(seed_a, dim, cond_a);
  SpdMatrix b(scale_b * random_spd(seed_b, dim, cond_b).matrix());
  return OperatorPair{dim, index, cond_a, cond_b, seed_a, seed_b, std::move(a), std::move(b)};
}

OperatorSuiteResult run_operator_suite(std::uint64_t seed, const std::vector<int>& dims,
                                       long pairs, double tol, int workers) {
  const auto& rows = operator_rows();
  const auto grid = weight_grid();
  workers = std::max(1, workers);

  auto work = [&](int worker, std::vector<RowAccumulator>& acc) {
    for (std::size_t d = 0; d < dims.size(); ++d) {
      for (long p = worker; p < pairs; p += workers) {
        const OperatorPair pair = generate_pair(seed, dims[d], p);
        const PairFrame frame(pair.a, pair.b);
        const Vector& lambda = frame.ratio_spectrum();
        const KConstants k = k_constants({lambda(0), lambda(lambda.size() - 1)});
        const Matrix half = frame.log_mean(0.5, kOperatorQuadratureTol).value;
        for (std::size_t g = 0; g < grid.size(); ++g) {
          const double v = grid[g];
          const auto checks = evaluate_operator_rows(frame, k, v, tol, g == 0, &half);
          for (const auto& c : checks) {
            for (std::size_t r = 0; r < rows.size(); ++r) {
              if (rows[r].id == c.id) acc[r].record(c, static_cast<int>(d), dims[d], p, v);
            }
          }
          if (v < kO2WeightMargin || v > 1.0 - kO2WeightMargin) ++acc[1].stats.excluded;
        }
      }
    }
  };

  std::vector<std::vector<RowAccumulator>> partial(workers,
                                                   std::vector<RowAccumulator>(rows.size()));
  if (workers == 1) {
    work(0, partial[0]);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) threads.emplace_back(work, w, std::ref(partial[w]));
    for (auto& t : threads) t.join();
  }

  OperatorSuiteResult result;
  result.pairs = pairs * static_cast<long>(dims.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    RowAccumulator total;
    total.stats.id = rows[r].id;
    for (int w = 0; w < workers; ++w) total.merge(partial[w][r]);
    total.stats.id = rows[r].id;
    result.rows.push_back(total.stats);
  }
  return result;
}

}  // namespace meanscope::op
