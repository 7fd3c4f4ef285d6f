#pragma once
// N^2 x N^2 linear maps acting on column-major vectorised matrices.  Maps
// that are diagonal in the matrix-unit basis (every lattice construction
// with diagonal U and X) keep only their diagonal, which is what makes the
// N=64 runs cheap.

#include <vector>

#include "common.hpp"
#include "linalg.hpp"

namespace homlie::linalg {

class SuperOperator {
 public:
  static SuperOperator identity(Index dim);
  static SuperOperator diagonal(Index dim, Vector diag_entries);
  static SuperOperator dense(Index dim, Matrix entries);

  Index dim() const { return dim_; }  // matrix side N
  Index size() const { return dim_ * dim_; }
  bool is_diagonal() const { return diagonal_; }

  const Vector& diagonal_entries() const;
  const Matrix& dense_entries() const;
  Matrix to_matrix() const;  // materialises; intended for small sizes

  Vector apply(const Vector& v) const;
  Matrix apply_to(const Matrix& a) const;

  SuperOperator compose(const SuperOperator& rhs) const;  // this after rhs
  SuperOperator scaled(Cplx c) const;
  SuperOperator subtract(const SuperOperator& rhs) const;

  // Operator-norm estimate: exact max modulus for diagonal storage, power
  // iteration on S*S otherwise (20 iterations, tolerance 1e-8).
  double norm_estimate() const;

 private:
  SuperOperator(Index dim, bool diag, Vector d, Matrix m);

  Index dim_;
  bool diagonal_;
  Vector diag_;  // size N^2 when diagonal
  Matrix mat_;   // N^2 x N^2 when dense
};

struct EigenSystem {
  Index dim = 0;      // matrix side N
  Vector eigenvalues; // sorted by (Im, Re) ascending
  double condition_estimate = 1.0;
  double reconstruction_residual = 0.0;

  bool diagonal_rep = false;
  std::vector<Index> perm;         // diagonal storage: sorted index -> coordinate
  Matrix vectors;                  // dense storage: eigenvector columns
  Eigen::PartialPivLU<Matrix> lu;  // dense storage: factorisation of vectors

  Vector eigenvector(Index k) const;
  // Coefficients c with (eigenvector matrix) c = rhs.
  Vector coefficients(const Vector& rhs) const;
};

SuperOperator expm(const SuperOperator& s, double t);
EigenSystem eig(const SuperOperator& s);

}  // namespace homlie::linalg
