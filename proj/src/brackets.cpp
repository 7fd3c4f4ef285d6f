#include "brackets.hpp"

namespace homlie::algebra {

using linalg::expm_dense;
using linalg::op_norm;

Matrix commutator(const Matrix& a, const Matrix& b) {
  linalg::require_same_dim(a, b, "commutator");
  return a * b - b * a;
}

Matrix twisted_bracket(const TwistMap& alpha, const Matrix& a, const Matrix& b) {
  linalg::require_same_dim(a, b, "twisted_bracket");
  return alpha.apply(commutator(a, b));
}

Matrix hom_jacobiator(const TwistMap& alpha, const Matrix& x, const Matrix& y, const Matrix& z) {
  const Matrix ax = alpha.apply(x);
  const Matrix ay = alpha.apply(y);
  const Matrix az = alpha.apply(z);
  return twisted_bracket(alpha, ax, twisted_bracket(alpha, y, z)) +
         twisted_bracket(alpha, ay, twisted_bracket(alpha, z, x)) +
         twisted_bracket(alpha, az, twisted_bracket(alpha, x, y));
}

double hom_jacobi_defect(const TwistMap& alpha, const Matrix& x, const Matrix& y, const Matrix& z) {
  return op_norm(hom_jacobiator(alpha, x, y, z));
}

double hom_malcev_defect(const TwistMap& alpha, const Matrix& x, const Matrix& y, const Matrix& z) {
  const Matrix lhs = hom_jacobiator(alpha, alpha.apply(x), alpha.apply(y),
                                    twisted_bracket(alpha, x, z));
  const Matrix rhs = twisted_bracket(alpha, hom_jacobiator(alpha, x, y, z),
                                     alpha.apply(alpha.apply(x)));
  return op_norm(lhs - rhs);
}

Matrix phi_failure(const TwistMap& alpha, const Matrix& x, const Matrix& y) {
  linalg::require_same_dim(x, y, "phi_failure");
  return alpha.apply(commutator(x, y)) - commutator(alpha.apply(x), alpha.apply(y));
}

double cyclic_phi_defect(const TwistMap& alpha, const Matrix& x, const Matrix& y, const Matrix& z) {
  const Matrix sum = phi_failure(alpha, commutator(x, y), z) +
                     phi_failure(alpha, commutator(y, z), x) +
                     phi_failure(alpha, commutator(z, x), y);
  return op_norm(sum);
}

Matrix semigroup_bracket_family(const Matrix& h, const Matrix& x, const Matrix& y, double t) {
  linalg::require_square(h, "semigroup_bracket_family");
  linalg::require_same_dim(h, x, "semigroup_bracket_family");
  linalg::require_same_dim(x, y, "semigroup_bracket_family");
  const double herm = op_norm(h - h.adjoint().eval());
  if (herm > 1e-10)
    throw ConfigError("semigroup_bracket_family: generator is not hermitian");
  const Matrix c = commutator(x, y);
  if (t == 0.0) return c;
  const Matrix u = expm_dense(Cplx(0.0, t) * h);
  return u * c * u.adjoint();
}

}  // namespace homlie::algebra
