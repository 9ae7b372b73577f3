#include "meanscope/operator_means.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "meanscope/rng.hpp"

namespace meanscope::op {

namespace {

Eigen::SelfAdjointEigenSolver<Matrix> solve(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("symmetric eigensolver did not converge");
  }
  return es;
}

Matrix symmetrized(const Matrix& m) { return 0.5 * (m + m.transpose()); }

void same_dim(const Matrix& x, const Matrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw std::invalid_argument("dimension mismatch: " + std::to_string(x.rows()) + " vs " +
                                std::to_string(y.rows()));
  }
}

Matrix from_spectrum(const Matrix& q, const Vector& d) {
  return symmetrized(q * d.asDiagonal() * q.transpose());
}

}  // namespace

SpdMatrix::SpdMatrix(Matrix m) : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols()) {
    throw std::invalid_argument("SPD matrix must be square and nonempty");
  }
  if (!m_.allFinite()) throw std::invalid_argument("SPD matrix has non-finite entries");
  const double size = m_.cwiseAbs().maxCoeff();
  const double asym = (m_ - m_.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * size) {
    throw std::invalid_argument("matrix is not symmetric (asymmetry " + std::to_string(asym) +
                                ")");
  }
  m_ = symmetrized(m_);
  const auto es = solve(m_);
  eigenvalues_ = es.eigenvalues();
  eigenvectors_ = es.eigenvectors();
  if (!(eigenvalues_(0) > 0.0)) {
    throw std::invalid_argument("matrix is not positive definite (min eigenvalue " +
                                std::to_string(eigenvalues_(0)) + ")");
  }
}

Matrix apply_spectral_function(const SpdMatrix& a, const std::function<double(double)>& f) {
  Vector d = a.eigenvalues().unaryExpr([&](double x) { return f(x); });
  return from_spectrum(a.eigenvectors(), d);
}

PairFrame::PairFrame(const SpdMatrix& a, const SpdMatrix& b) : a_(a.matrix()), b_(b.matrix()) {
  same_dim(a_, b_);
  a_inv_ = from_spectrum(a.eigenvectors(), a.eigenvalues().cwiseInverse());
  b_inv_ = from_spectrum(b.eigenvectors(), b.eigenvalues().cwiseInverse());

  // With A = Ra^T Ra and B = Rb^T Rb, M = Rb Ra^-1 has M^T M = Ra^-T B Ra^-1,
  // so its singular values are sqrt(lambda) and W = Ra^T V.
  const Eigen::LLT<Matrix> la(a_);
  const Eigen::LLT<Matrix> lb(b_);
  if (la.info() != Eigen::Success || lb.info() != Eigen::Success) {
    throw std::runtime_error("Cholesky factorization failed");
  }
  const Matrix ra = la.matrixU();
  const Matrix rb = lb.matrixU();
  const Matrix mt = ra.transpose().triangularView<Eigen::Lower>().solve(rb.transpose());
  const Eigen::JacobiSVD<Matrix> svd(mt.transpose(), Eigen::ComputeFullV);
  const int n = dim();
  const Vector sigma = svd.singularValues();  // descending
  const Matrix& v = svd.matrixV();
  lambda_.resize(n);
  Matrix u(n, n);
  for (int i = 0; i < n; ++i) {
    lambda_(i) = sigma(n - 1 - i) * sigma(n - 1 - i);
    u.col(i) = v.col(n - 1 - i);
  }
  if (!(lambda_(0) > 0.0)) throw std::runtime_error("pair spectrum is not positive");
  w_ = ra.transpose() * u;
  const Matrix gram = w_.transpose() * w_;
  gram_sq_ = gram.cwiseProduct(gram);
}

Matrix PairFrame::congruence(const Vector& d) const { return from_spectrum(w_, d); }

double PairFrame::congruence_norm(const Vector& d) const {
  return std::sqrt(std::max(0.0, d.dot(gram_sq_ * d)));
}

Matrix PairFrame::arithmetic(double v) const { return (1.0 - v) * a_ + v * b_; }

Matrix PairFrame::geometric(double v) const {
  if (v == 0.0) return a_;
  if (v == 1.0) return b_;
  return congruence(lambda_.array().pow(v).matrix());
}

Matrix PairFrame::harmonic(double v) const {
  if (v == 0.0) return a_;
  if (v == 1.0) return b_;
  const Matrix sum = (1.0 - v) * a_inv_ + v * b_inv_;
  return symmetrized(sum.ldlt().solve(Matrix::Identity(dim(), dim())));
}

numerics::BasicQuadrature<Matrix> PairFrame::log_mean(double v, double tol) const {
  if (v == 0.0 || v == 1.0) {
    numerics::BasicQuadrature<Matrix> exact;
    exact.value = v == 0.0 ? a_ : b_;
    exact.converged = true;
    return exact;
  }
  // (1-v)/v int_0^v A#_x B dx + v/(1-v) int_v^1 A#_x B dx, with x = v u and
  // x = v + (1-v) u. Every A#_x B is W diag(lambda^x) W^T, so the integrand
  // is carried in spectral coordinates: all matrix entries share the nodes
  // and the stopping rule uses the Frobenius norm of the assembled matrix.
  const Vector log_lambda = lambda_.array().log().matrix();
  auto integrand = [&](double u) -> Vector {
    return ((1.0 - v) * (v * u * log_lambda).array().exp() +
            v * ((v + (1.0 - v) * u) * log_lambda).array().exp())
        .matrix();
  };
  auto norm = [&](const Vector& d) { return congruence_norm(d); };
  const auto q = numerics::integrate_unit_with<Vector>(integrand, norm, tol);

  numerics::BasicQuadrature<Matrix> out;
  out.value = congruence(q.value);
  out.error_estimate = q.error_estimate;
  out.evaluations = q.evaluations;
  out.levels = q.levels;
  out.converged = q.converged;
  return out;
}

SpdMatrix op_mean(MeanKind kind, Weight v, const SpdMatrix& a, const SpdMatrix& b) {
  same_dim(a.matrix(), b.matrix());
  switch (kind) {
    case MeanKind::arithmetic:
      return SpdMatrix((1.0 - v.value()) * a.matrix() + v.value() * b.matrix());
    case MeanKind::geometric:
      return SpdMatrix(PairFrame(a, b).geometric(v.value()));
    case MeanKind::harmonic:
      return SpdMatrix(PairFrame(a, b).harmonic(v.value()));
  }
  throw std::invalid_argument("unknown mean kind");
}

SpdMatrix op_natural_ext(double v, const SpdMatrix& a, const SpdMatrix& b) {
  if (!std::isfinite(v)) throw std::invalid_argument("natural extension exponent must be finite");
  return SpdMatrix(PairFrame(a, b).geometric(v));
}

SpdMatrix op_log_mean(Weight v, const SpdMatrix& a, const SpdMatrix& b, double tol) {
  const auto q = PairFrame(a, b).log_mean(v.value(), tol);
  if (!q.converged) {
    throw std::runtime_error("operator logarithmic mean: quadrature did not converge (error " +
                             std::to_string(q.error_estimate) + ")");
  }
  return SpdMatrix(q.value);
}

LoewnerVerdict loewner_leq(const Matrix& x, const Matrix& y, double tol) {
  same_dim(x, y);
  Eigen::SelfAdjointEigenSolver<Matrix> diff(symmetrized(y - x), Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Matrix> sx(symmetrized(x), Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Matrix> sy(symmetrized(y), Eigen::EigenvaluesOnly);
  if (diff.info() != Eigen::Success || sx.info() != Eigen::Success ||
      sy.info() != Eigen::Success) {
    throw std::runtime_error("symmetric eigensolver did not converge");
  }
  auto spectral_norm = [](const Vector& ev) {
    return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  };
  LoewnerVerdict out;
  out.min_eig_of_difference = diff.eigenvalues()(0);
  out.scale = std::max({spectral_norm(sx.eigenvalues()), spectral_norm(sy.eigenvalues()),
                        std::numeric_limits<double>::min()});
  out.tol = tol;
  out.pass = out.min_eig_of_difference >= -tol * out.scale;
  return out;
}

SpectralBoundsPair spectral_bounds(const SpdMatrix& a, const SpdMatrix& b) {
  const PairFrame frame(a, b);
  const Vector& lambda = frame.ratio_spectrum();
  return {lambda(0), lambda(lambda.size() - 1)};
}

KConstants k_constants(const SpectralBoundsPair& bounds) {
  const double alpha = bounds.alpha;
  const double beta = bounds.beta;
  if (!(alpha > 0.0) || !(beta >= alpha) || !std::isfinite(beta)) {
    throw std::invalid_argument("spectral bounds need 0 < alpha <= beta");
  }
  KConstants out;
  if (alpha >= 1.0) {
    out.branch = KBranch::alpha_at_least_one;
    out.k1 = log_mean_ratio(RatioPoint(beta));
    out.k2 = specht(RatioPoint(beta)) + 1.0;
    return out;
  }
  if (beta <= 1.0) {
    out.branch = KBranch::beta_at_most_one;
    // (alpha - 1) / (alpha log alpha) = f_{1/2}(alpha) / alpha.
    out.k1 = log_mean_ratio(RatioPoint(alpha)) / alpha;
    out.k2 = specht(RatioPoint(alpha)) + 1.0;
    return out;
  }
  out.branch = KBranch::mixed;
  const double lo = std::log(alpha);
  const double hi = std::log(beta);
  const auto k1 = numerics::extremize_interval(
      [](double s) {
        const double t = std::exp(s);
        return std::max(1.0, 1.0 / t) * log_mean_ratio(RatioPoint(t));
      },
      lo, hi, numerics::ExtremumKind::max);
  const auto k2 = numerics::extremize_interval(
      [](double s) { return specht(RatioPoint(std::exp(s))) + 1.0; }, lo, hi,
      numerics::ExtremumKind::max);
  out.k1 = k1.value;
  out.k2 = k2.value;
  return out;
}

SpdMatrix random_spd(std::uint64_t seed, int dim, double cond_target) {
  if (dim < 1) throw std::invalid_argument("random_spd: dim must be positive");
  if (!(cond_target >= 1.0)) throw std::invalid_argument("random_spd: cond_target must be >= 1");
  Rng rng(seed);
  Matrix g(dim, dim);
  for (int j = 0; j < dim; ++j) {
    for (int i = 0; i < dim; ++i) g(i, j) = rng.normal();
  }
  const Matrix q = Eigen::HouseholderQR<Matrix>(g).householderQ();
  Vector lambda(dim);
  for (int i = 0; i < dim; ++i) {
    lambda(i) = dim == 1 ? 1.0 : std::pow(cond_target, static_cast<double>(i) / (dim - 1));
  }
  return SpdMatrix(from_spectrum(q, lambda));
}

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json entries = nlohmann::json::array();
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) entries.push_back(m(i, j));
  }
  return {{"dim", m.rows()}, {"entries", entries}};
}

}  // namespace meanscope::op
