#include "superoperator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace homlie::linalg {

SuperOperator::SuperOperator(Index dim, bool diag, Vector d, Matrix m)
    : dim_(dim), diagonal_(diag), diag_(std::move(d)), mat_(std::move(m)) {}

SuperOperator SuperOperator::identity(Index dim) {
  if (dim < 1) throw ConfigError("SuperOperator: dim must be >= 1");
  return SuperOperator(dim, true, Vector::Ones(dim * dim), Matrix());
}

SuperOperator SuperOperator::diagonal(Index dim, Vector diag_entries) {
  if (dim < 1) throw ConfigError("SuperOperator: dim must be >= 1");
  if (diag_entries.size() != dim * dim)
    throw ConfigError("SuperOperator: diagonal length must be dim^2");
  return SuperOperator(dim, true, std::move(diag_entries), Matrix());
}

SuperOperator SuperOperator::dense(Index dim, Matrix entries) {
  if (dim < 1) throw ConfigError("SuperOperator: dim must be >= 1");
  if (entries.rows() != dim * dim || entries.cols() != dim * dim)
    throw ConfigError("SuperOperator: dense entries must be dim^2 x dim^2");
  return SuperOperator(dim, false, Vector(), std::move(entries));
}

const Vector& SuperOperator::diagonal_entries() const {
  if (!diagonal_) throw NumericError("SuperOperator: not stored diagonally");
  return diag_;
}

const Matrix& SuperOperator::dense_entries() const {
  if (diagonal_) throw NumericError("SuperOperator: stored diagonally");
  return mat_;
}

Matrix SuperOperator::to_matrix() const {
  if (!diagonal_) return mat_;
  Matrix m = Matrix::Zero(size(), size());
  m.diagonal() = diag_;
  return m;
}

Vector SuperOperator::apply(const Vector& v) const {
  if (v.size() != size()) throw ConfigError("SuperOperator::apply: size mismatch");
  if (diagonal_) return diag_.cwiseProduct(v);
  return mat_ * v;
}

Matrix SuperOperator::apply_to(const Matrix& a) const {
  if (a.rows() != dim_ || a.cols() != dim_)
    throw ConfigError("SuperOperator::apply_to: dimension mismatch");
  return unvec(apply(vec(a)), dim_);
}

SuperOperator SuperOperator::compose(const SuperOperator& rhs) const {
  if (dim_ != rhs.dim_) throw ConfigError("SuperOperator::compose: dimension mismatch");
  if (diagonal_ && rhs.diagonal_)
    return diagonal(dim_, diag_.cwiseProduct(rhs.diag_));
  if (diagonal_) return dense(dim_, diag_.asDiagonal() * rhs.mat_);
  if (rhs.diagonal_) return dense(dim_, mat_ * rhs.diag_.asDiagonal());
  return dense(dim_, mat_ * rhs.mat_);
}

SuperOperator SuperOperator::scaled(Cplx c) const {
  if (diagonal_) return diagonal(dim_, c * diag_);
  return dense(dim_, c * mat_);
}

SuperOperator SuperOperator::subtract(const SuperOperator& rhs) const {
  if (dim_ != rhs.dim_) throw ConfigError("SuperOperator::subtract: dimension mismatch");
  if (diagonal_ && rhs.diagonal_) return diagonal(dim_, diag_ - rhs.diag_);
  return dense(dim_, to_matrix() - rhs.to_matrix());
}

double SuperOperator::norm_estimate() const {
  if (diagonal_) return diag_.size() ? diag_.cwiseAbs().maxCoeff() : 0.0;
  // power iteration for the top singular value
  const Index n = mat_.rows();
  Vector v = Vector::Ones(n) / std::sqrt(static_cast<double>(n));
  double sigma2 = 0.0;
  for (int it = 0; it < 20; ++it) {
    Vector w = mat_.adjoint() * (mat_ * v);
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    v = w / nw;
    if (std::abs(nw - sigma2) <= 1e-8 * std::max(1.0, nw)) {
      sigma2 = nw;
      break;
    }
    sigma2 = nw;
  }
  return std::sqrt(sigma2);
}

SuperOperator expm(const SuperOperator& s, double t) {
  if (!std::isfinite(t)) throw ConfigError("expm: t must be finite");
  if (s.is_diagonal()) {
    const Vector& d = s.diagonal_entries();
    Vector e(d.size());
    for (Index k = 0; k < d.size(); ++k) {
      const Cplx z = t * d[k];
      if (z.real() > 700.0) {
        std::ostringstream msg;
        msg << "expm: exponent overflow, Re(t*mu) = " << z.real();
        throw OverflowError(msg.str());
      }
      e[k] = std::exp(z);
    }
    return SuperOperator::diagonal(s.dim(), std::move(e));
  }
  return SuperOperator::dense(s.dim(), expm_dense(t * s.dense_entries()));
}

namespace {

std::vector<Index> sort_order(const Vector& vals) {
  std::vector<Index> order(static_cast<std::size_t>(vals.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    if (vals[a].imag() != vals[b].imag()) return vals[a].imag() < vals[b].imag();
    return vals[a].real() < vals[b].real();
  });
  return order;
}

}  // namespace

Vector EigenSystem::eigenvector(Index k) const {
  if (diagonal_rep) {
    Vector v = Vector::Zero(dim * dim);
    v[perm[static_cast<std::size_t>(k)]] = 1.0;
    return v;
  }
  return vectors.col(k);
}

Vector EigenSystem::coefficients(const Vector& rhs) const {
  if (rhs.size() != dim * dim) throw ConfigError("EigenSystem: rhs size mismatch");
  if (diagonal_rep) {
    Vector c(rhs.size());
    for (Index k = 0; k < rhs.size(); ++k) c[k] = rhs[perm[static_cast<std::size_t>(k)]];
    return c;
  }
  return lu.solve(rhs);
}

EigenSystem eig(const SuperOperator& s) {
  EigenSystem es;
  es.dim = s.dim();
  if (s.is_diagonal()) {
    const Vector& d = s.diagonal_entries();
    const auto order = sort_order(d);
    es.diagonal_rep = true;
    es.perm = order;
    es.eigenvalues.resize(d.size());
    for (Index k = 0; k < d.size(); ++k) es.eigenvalues[k] = d[order[static_cast<std::size_t>(k)]];
    es.condition_estimate = 1.0;
    es.reconstruction_residual = 0.0;
    return es;
  }

  const Matrix& m = s.dense_entries();
  Eigen::ComplexEigenSolver<Matrix> solver(m, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "eig: complex eigensolver did not converge (info=" << solver.info()
        << ", size=" << m.rows() << ")";
    throw NumericError(msg.str());
  }
  const Vector vals = solver.eigenvalues();
  const Matrix vecs = solver.eigenvectors();
  const auto order = sort_order(vals);

  es.eigenvalues.resize(vals.size());
  es.vectors.resize(vecs.rows(), vecs.cols());
  for (Index k = 0; k < vals.size(); ++k) {
    const Index src = order[static_cast<std::size_t>(k)];
    es.eigenvalues[k] = vals[src];
    es.vectors.col(k) = vecs.col(src);
  }
  es.lu = Eigen::PartialPivLU<Matrix>(es.vectors);

  const Matrix vinv = es.lu.inverse();
  const Matrix recon = es.vectors * es.eigenvalues.asDiagonal() * vinv;
  const double denom = std::max(frob_norm(m), 1e-300);
  es.reconstruction_residual = frob_norm(recon - m) / denom;
  es.condition_estimate = frob_norm(es.vectors) * frob_norm(vinv);
  return es;
}

}  // namespace homlie::linalg
