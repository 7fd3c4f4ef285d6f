#pragma once
// Dense complex linear-algebra substrate: column-major vectorisation,
// spectral norms, matrix exponential, quadrature, seeded randomness.

#include <cstdint>
#include <functional>
#include <random>
#include <utility>
#include <vector>

#include "common.hpp"

namespace homlie::linalg {

// Column stacking: vec(A)[i + j*N] = A(i, j).  unvec inverts it exactly,
// so conjugation A -> U A U* vectorises as conj(U) (x) U.
Vector vec(const Matrix& m);
Matrix unvec(const Vector& v, Index n);

Matrix kron(const Matrix& a, const Matrix& b);

// Largest singular value (the operator norm of the ambient algebra).
double op_norm(const Matrix& m);
double frob_norm(const Matrix& m);

bool all_finite(const Matrix& m);
void require_square(const Matrix& m, const char* what);
void require_same_dim(const Matrix& a, const Matrix& b, const char* what);

Matrix cyclic_shift(Index n);  // S(k, k+1 mod n) = 1
Matrix dft_unitary(Index n);

// e^A by diagonal Pade with scaling and squaring (Higham's degree table).
Matrix expm_dense(const Matrix& a);

// (t_k, w_k) such that sum w_k f(t_k) is the composite-trapezoid value of
// (1/2R) integral_{-R}^{R} f.  steps = number of grid points, both
// endpoints included.
std::vector<std::pair<double, double>> trapezoid_grid(double half_width, int steps);

// Composite trapezoid mean; f is evaluated on the grid in ascending order.
Matrix trapezoid_mean(const std::function<Matrix(double)>& f, double half_width, int steps);

std::uint64_t mix_seed(std::uint64_t master, std::uint64_t salt);

// Deterministic source for every random fixture.  Complex entries are
// CN(0,1): (N(0,1) + i N(0,1))/sqrt(2).
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }
  double normal();
  double uniform();  // [0, 1)
  std::uint64_t next_u64();
  Cplx cnormal();
  Matrix gaussian(Index n);
  Matrix hermitian(Index n);
  Matrix unitary(Index n);  // QR of a Gaussian, R-diagonal phases fixed

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> gauss_{0.0, 1.0};
};

}  // namespace homlie::linalg
