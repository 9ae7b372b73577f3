#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <json.hpp>

#include "meanscope/means.hpp"
#include "meanscope/numerics.hpp"

namespace meanscope::op {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Dense symmetric positive definite matrix. The spectrum is computed once
/// at construction and kept alongside the entries.
class SpdMatrix {
 public:
  /// Throws std::invalid_argument if `m` is not square, not symmetric to
  /// 1e-12 relative, or not positive definite; std::runtime_error if the
  /// eigensolver fails.
  explicit SpdMatrix(Matrix m);

  const Matrix& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  const Vector& eigenvalues() const { return eigenvalues_; }  // ascending
  const Matrix& eigenvectors() const { return eigenvectors_; }
  double min_eigenvalue() const { return eigenvalues_(0); }
  double max_eigenvalue() const { return eigenvalues_(eigenvalues_.size() - 1); }
  double condition_number() const { return max_eigenvalue() / min_eigenvalue(); }

 private:
  Matrix m_;
  Vector eigenvalues_;
  Matrix eigenvectors_;
};

/// Q f(Lambda) Q^T from the eigendecomposition A = Q Lambda Q^T.
Matrix apply_spectral_function(const SpdMatrix& a, const std::function<double(double)>& f);

enum class MeanKind { arithmetic, geometric, harmonic };

/// Spectral frame of a pair (A, B). lambda is the spectrum of
/// A^(-1/2) B A^(-1/2) and W satisfies W W^T = A, W diag(lambda) W^T = B,
/// so any function h of the congruence maps back as
/// A^(1/2) h(A^(-1/2) B A^(-1/2)) A^(1/2) = W diag(h(lambda)) W^T.
class PairFrame {
 public:
  /// Throws std::invalid_argument on dimension mismatch.
  PairFrame(const SpdMatrix& a, const SpdMatrix& b);

  int dim() const { return static_cast<int>(a_.rows()); }
  const Vector& ratio_spectrum() const { return lambda_; }
  const Matrix& a() const { return a_; }
  const Matrix& b() const { return b_; }
  const Matrix& a_inverse() const { return a_inv_; }
  const Matrix& b_inverse() const { return b_inv_; }

  /// W diag(d) W^T, symmetrized.
  Matrix congruence(const Vector& d) const;
  /// Frobenius norm of W diag(d) W^T without forming it.
  double congruence_norm(const Vector& d) const;

  Matrix arithmetic(double v) const;
  /// A #_v B for v in [0, 1], and the natural extension for any real v.
  Matrix geometric(double v) const;
  /// {(1 - v) A^-1 + v B^-1}^-1, evaluated from its definition.
  Matrix harmonic(double v) const;
  /// A l_v B by quadrature of the integrand A #_x B; v = 0 and v = 1 give A
  /// and B.
  numerics::BasicQuadrature<Matrix> log_mean(double v, double tol) const;

 private:
  Matrix a_;
  Matrix b_;
  Matrix a_inv_;
  Matrix b_inv_;
  Vector lambda_;
  Matrix w_;
  Matrix gram_sq_;  // (W^T W) elementwise squared
};

SpdMatrix op_mean(MeanKind kind, Weight v, const SpdMatrix& a, const SpdMatrix& b);

/// A^(1/2) (A^(-1/2) B A^(-1/2))^v A^(1/2) for any finite real v.
SpdMatrix op_natural_ext(double v, const SpdMatrix& a, const SpdMatrix& b);

inline constexpr double kOperatorQuadratureTol = 1e-12;

/// Weighted operator logarithmic mean. Throws std::runtime_error when the
/// quadrature hits its depth cap.
SpdMatrix op_log_mean(Weight v, const SpdMatrix& a, const SpdMatrix& b,
                      double tol = kOperatorQuadratureTol);

struct LoewnerVerdict {
  double min_eig_of_difference = 0.0;
  double scale = 1.0;  // spectral norm of the larger operand
  double tol = 0.0;
  bool pass = false;
  double relative_slack() const { return min_eig_of_difference / scale; }
};

/// X <= Y in the Loewner order: lambda_min(Y - X) >= -tol * max(||X||, ||Y||).
/// Operands need only be symmetric.
LoewnerVerdict loewner_leq(const Matrix& x, const Matrix& y, double tol);

struct SpectralBoundsPair {
  double alpha = 1.0;
  double beta = 1.0;
};

/// Tightest alpha, beta with alpha A <= B <= beta A.
SpectralBoundsPair spectral_bounds(const SpdMatrix& a, const SpdMatrix& b);

enum class KBranch { alpha_at_least_one, beta_at_most_one, mixed };

struct KConstants {
  double k1 = 1.0;
  double k2 = 2.0;
  KBranch branch = KBranch::alpha_at_least_one;
};

/// k1 = max over [alpha, beta] of max{1, 1/t} f_{1/2}(t) and
/// k2 = max over [alpha, beta] of S(t) + 1. Closed forms when alpha >= 1 or
/// beta <= 1; otherwise a numeric maximization over the interval.
KConstants k_constants(const SpectralBoundsPair& bounds);

/// Q Lambda Q^T with Q from the QR factorization of a seeded Gaussian
/// matrix and Lambda log-spaced from 1 to cond_target.
SpdMatrix random_spd(std::uint64_t seed, int dim, double cond_target);

/// Report fragment: {"dim": n, "entries": [row-major]}.
nlohmann::json matrix_to_json(const Matrix& m);

}  // namespace meanscope::op
