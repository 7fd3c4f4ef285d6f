#include "twist.hpp"

namespace homlie::algebra {

using linalg::kron;
using linalg::op_norm;
using linalg::unvec;
using linalg::vec;

TwistMap::TwistMap(Kind k, Index dim) : kind_(k), dim_(dim) {}

TwistMap TwistMap::identity(Index dim) {
  if (dim < 1) throw ConfigError("TwistMap: dim must be >= 1");
  return TwistMap(Kind::identity, dim);
}

TwistMap TwistMap::unitary_conjugation(Matrix u) {
  linalg::require_square(u, "TwistMap::unitary_conjugation");
  const Index n = u.rows();
  const double defect = op_norm(u.adjoint() * u - Matrix::Identity(n, n));
  if (defect > 1e-10)
    throw ConfigError("TwistMap: conjugator is not unitary (||U*U - I|| = " +
                      std::to_string(defect) + ")");
  TwistMap t(Kind::unitary_conjugation, n);
  t.u_ = std::move(u);
  return t;
}

TwistMap TwistMap::trace_shift(Index dim) {
  if (dim < 1) throw ConfigError("TwistMap: dim must be >= 1");
  return TwistMap(Kind::trace_shift, dim);
}

TwistMap TwistMap::transpose(Index dim) {
  if (dim < 1) throw ConfigError("TwistMap: dim must be >= 1");
  return TwistMap(Kind::transpose, dim);
}

TwistMap TwistMap::general(SuperOperator s) {
  TwistMap t(Kind::general, s.dim());
  t.op_ = std::move(s);
  return t;
}

const char* TwistMap::kind_name() const {
  switch (kind_) {
    case Kind::identity: return "identity";
    case Kind::unitary_conjugation: return "unitary_conjugation";
    case Kind::trace_shift: return "trace_shift";
    case Kind::transpose: return "transpose";
    case Kind::general: return "general";
  }
  return "?";
}

bool TwistMap::is_morphism_kind() const {
  return kind_ == Kind::identity || kind_ == Kind::unitary_conjugation;
}

bool TwistMap::is_isometric_kind() const {
  return kind_ == Kind::identity || kind_ == Kind::unitary_conjugation;
}

Matrix TwistMap::apply(const Matrix& a) const {
  if (a.rows() != dim_ || a.cols() != dim_)
    throw ConfigError("TwistMap::apply: dimension mismatch");
  switch (kind_) {
    case Kind::identity: return a;
    case Kind::unitary_conjugation: return u_ * a * u_.adjoint();
    case Kind::trace_shift: return a + a.trace() * Matrix::Identity(dim_, dim_);
    case Kind::transpose: return a.transpose();
    case Kind::general: return op_->apply_to(a);
  }
  throw NumericError("TwistMap::apply: unreachable");
}

SuperOperator TwistMap::to_superoperator() const {
  const Index n = dim_;
  switch (kind_) {
    case Kind::identity:
      return SuperOperator::identity(n);
    case Kind::unitary_conjugation: {
      bool diag = true;
      for (Index j = 0; j < n && diag; ++j)
        for (Index i = 0; i < n; ++i)
          if (i != j && u_(i, j) != Cplx(0.0, 0.0)) { diag = false; break; }
      if (diag) {
        Vector d(n * n);
        for (Index k = 0; k < n; ++k)
          for (Index j = 0; j < n; ++j)
            d[j + k * n] = u_(j, j) * std::conj(u_(k, k));
        return SuperOperator::diagonal(n, std::move(d));
      }
      return SuperOperator::dense(n, kron(u_.conjugate(), u_));
    }
    case Kind::trace_shift: {
      Matrix m = Matrix::Identity(n * n, n * n);
      const Vector id_vec = vec(Matrix::Identity(n, n));
      m += id_vec * id_vec.transpose();
      return SuperOperator::dense(n, std::move(m));
    }
    case Kind::transpose: {
      Matrix m = Matrix::Zero(n * n, n * n);
      for (Index j = 0; j < n; ++j)
        for (Index i = 0; i < n; ++i) m(j + i * n, i + j * n) = 1.0;
      return SuperOperator::dense(n, std::move(m));
    }
    case Kind::general:
      return *op_;
  }
  throw NumericError("TwistMap::to_superoperator: unreachable");
}

double TwistMap::norm_bound() const {
  switch (kind_) {
    case Kind::identity:
    case Kind::unitary_conjugation:
    case Kind::transpose:
      return 1.0;
    case Kind::trace_shift:
      return 1.0 + static_cast<double>(dim_);
    case Kind::general:
      return op_->norm_estimate();
  }
  return 1.0;
}

const Matrix& TwistMap::unitary() const {
  if (kind_ != Kind::unitary_conjugation)
    throw ConfigError("TwistMap::unitary: not a unitary conjugation");
  return u_;
}

}  // namespace homlie::algebra
