#include <doctest.h>

#include <cmath>
#include <complex>

#include "linalg.hpp"
#include "superoperator.hpp"

using namespace homlie;
using namespace homlie::linalg;

namespace {
const Cplx kI{0.0, 1.0};
}

TEST_CASE("vec stacks columns") {
  Matrix m(2, 2);
  m << 1.0, 2.0, 3.0, 4.0;
  const Vector v = vec(m);
  CHECK(v(0) == Cplx(1.0));
  CHECK(v(1) == Cplx(3.0));
  CHECK(v(2) == Cplx(2.0));
  CHECK(v(3) == Cplx(4.0));
  CHECK(unvec(v, 2) == m);

  CHECK(vec(Matrix::Identity(2, 2)) == (Vector(4) << 1.0, 0.0, 0.0, 1.0).finished());
  CHECK(vec(Matrix::Zero(3, 3)).isZero(0.0));
}

TEST_CASE("vec/unvec round-trips exactly on random matrices") {
  Rng rng(11);
  for (int n : {1, 2, 5, 8}) {
    const Matrix m = rng.gaussian(n);
    CHECK(unvec(vec(m), n) == m);
  }
}

TEST_CASE("op_norm basics") {
  CHECK(op_norm(Matrix::Identity(5, 5)) == doctest::Approx(1.0).epsilon(1e-12));
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = Cplx(0.0, -4.0);
  CHECK(op_norm(d) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("op_norm of a rank-one outer product is the product of vector norms") {
  // oracle: ||u v*|| = ||u||_2 ||v||_2
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 3 + trial % 4;
    Vector u(n), v(n);
    for (int k = 0; k < n; ++k) {
      u(k) = rng.cnormal();
      v(k) = rng.cnormal();
    }
    const Matrix m = u * v.adjoint();
    CHECK(op_norm(m) == doctest::Approx(u.norm() * v.norm()).epsilon(1e-10));
  }
}

TEST_CASE("op_norm is submultiplicative") {
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix a = rng.gaussian(6);
    const Matrix b = rng.gaussian(6);
    CHECK(op_norm(a * b) <= op_norm(a) * op_norm(b) + 1e-10);
  }
}

TEST_CASE("expm on the zero generator and diagonal superoperators") {
  const SuperOperator s = SuperOperator::dense(2, Rng(3).gaussian(4));
  const SuperOperator e0 = expm(s, 0.0);
  CHECK(op_norm(e0.to_matrix() - Matrix::Identity(4, 4)) < 1e-14);

  Vector mu(4);
  mu << Cplx(0.0, 1.0), Cplx(-0.5, 0.25), Cplx(0.1, -2.0), Cplx(0.0, 0.0);
  const SuperOperator d = SuperOperator::diagonal(2, mu);
  const SuperOperator ed = expm(d, 0.7);
  for (int k = 0; k < 4; ++k)
    CHECK(std::abs(ed.diagonal_entries()(k) - std::exp(0.7 * mu(k))) < 1e-14);
}

TEST_CASE("expm is exact on nilpotent blocks") {
  Matrix n2 = Matrix::Zero(2, 2);
  n2(0, 1) = 1.0;
  const Matrix e = expm_dense(n2);
  Matrix want(2, 2);
  want << 1.0, 1.0, 0.0, 1.0;
  CHECK(op_norm(e - want) < 1e-15);
}

TEST_CASE("expm group law on random superoperators") {
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix g = rng.gaussian(16);  // N = 4 superoperator
    g *= 2.0 / op_norm(g);
    const SuperOperator s = SuperOperator::dense(4, g);
    const double t1 = 10.0 * rng.uniform() - 5.0;
    const double t2 = 10.0 * rng.uniform() - 5.0;
    const Matrix lhs = expm(s, t1).to_matrix() * expm(s, t2).to_matrix();
    const Matrix rhs = expm(s, t1 + t2).to_matrix();
    CHECK(op_norm(lhs - rhs) <= 1e-9 * std::max(1.0, op_norm(rhs)));
  }
}

TEST_CASE("expm agrees with the eigendecomposition route") {
  Rng rng(29);
  int used = 0;
  for (int trial = 0; trial < 80 && used < 50; ++trial) {
    Matrix g = rng.gaussian(9);  // N = 3 superoperator
    g *= 1.5 / op_norm(g);
    const SuperOperator s = SuperOperator::dense(3, g);
    const EigenSystem es = eig(s);
    if (es.condition_estimate >= 1e6) continue;
    ++used;
    const double t = 4.0 * rng.uniform() - 2.0;
    Matrix v(9, 9);
    for (Index k = 0; k < 9; ++k) v.col(k) = es.eigenvector(k);
    Vector ex(9);
    for (Index k = 0; k < 9; ++k) ex(k) = std::exp(t * es.eigenvalues(k));
    const Matrix via_eig = v * ex.asDiagonal() * v.partialPivLu().inverse();
    const Matrix via_pade = expm(s, t).to_matrix();
    CHECK(op_norm(via_eig - via_pade) <= 1e-8 * std::max(1.0, op_norm(via_pade)));
  }
  CHECK(used == 50);
}

TEST_CASE("expm reports overflow instead of returning inf") {
  Vector mu(4);
  mu << Cplx(1000.0, 0.0), Cplx(0.0, 0.0), Cplx(0.0, 0.0), Cplx(0.0, 0.0);
  const SuperOperator d = SuperOperator::diagonal(2, mu);
  CHECK_THROWS_AS((void)expm(d, 1.0), OverflowError);

  Matrix huge = Matrix::Zero(4, 4);
  huge(0, 0) = 2000.0;  // e^2000 exceeds the double range during squaring
  CHECK_THROWS_AS((void)expm_dense(huge), OverflowError);
}

TEST_CASE("eig sorts by (Im, Re) and reports diagonal spectra exactly") {
  Vector mu(4);
  mu << Cplx(0.5, 2.0), Cplx(0.0, -1.0), Cplx(-0.5, 2.0), Cplx(0.0, 0.0);
  const EigenSystem es = eig(SuperOperator::diagonal(2, mu));
  CHECK(es.eigenvalues(0) == Cplx(0.0, -1.0));
  CHECK(es.eigenvalues(1) == Cplx(0.0, 0.0));
  CHECK(es.eigenvalues(2) == Cplx(-0.5, 2.0));
  CHECK(es.eigenvalues(3) == Cplx(0.5, 2.0));
  CHECK(es.reconstruction_residual == 0.0);
  CHECK(es.condition_estimate == 1.0);
}

TEST_CASE("eig of a rotation-generator block gives +-i omega") {
  const double w = 0.73;
  Matrix block = Matrix::Zero(4, 4);
  block(0, 1) = -w;
  block(1, 0) = w;
  const EigenSystem es = eig(SuperOperator::dense(2, block));
  CHECK(std::abs(es.eigenvalues(0) - Cplx(0.0, -w)) < 1e-12);
  CHECK(std::abs(es.eigenvalues(1)) < 1e-12);
  CHECK(std::abs(es.eigenvalues(2)) < 1e-12);
  CHECK(std::abs(es.eigenvalues(3) - Cplx(0.0, w)) < 1e-12);
}

TEST_CASE("eig reconstructs a generic dense superoperator") {
  Rng rng(31);
  const Matrix g = rng.gaussian(9);
  const SuperOperator s = SuperOperator::dense(3, g);
  const EigenSystem es = eig(s);
  CHECK(es.reconstruction_residual < 1e-10);
  // eigen relation columnwise
  Matrix v(9, 9);
  for (Index k = 0; k < 9; ++k) v.col(k) = es.eigenvector(k);
  CHECK(op_norm(g * v - v * Vector(es.eigenvalues).asDiagonal().toDenseMatrix()) < 1e-10);
  // coefficients solve V c = rhs
  const Vector rhs = vec(rng.gaussian(3));
  CHECK((v * es.coefficients(rhs) - rhs).norm() < 1e-10);
}

TEST_CASE("trapezoid_mean on constant, oscillatory and odd integrands") {
  Matrix c(2, 2);
  c << 1.0, 2.0, 3.0, Cplx(0.0, 4.0);

  const Matrix constant = trapezoid_mean([&](double) { return c; }, 10.0, 101);
  CHECK(op_norm(constant - c) < 1e-14);

  // e^{i w t} over a whole number of periods averages to O(1/steps^2)
  const double w = 1.0;
  const double big_r = 4.0 * 3.14159265358979323846;  // two periods
  for (int steps : {101, 201, 401}) {
    const Matrix osc = trapezoid_mean(
        [&](double t) { return Matrix(std::exp(Cplx(0.0, w * t)) * c); }, big_r, steps);
    const double bound = 10.0 * op_norm(c) / (static_cast<double>(steps) * steps);
    CHECK(op_norm(osc) <= bound);
  }

  const Matrix odd = trapezoid_mean([&](double t) { return Matrix(t * c); }, 7.0, 99);
  CHECK(op_norm(odd) < 1e-13);
}

TEST_CASE("trapezoid grid covers both endpoints uniformly") {
  const auto grid = trapezoid_grid(5.0, 11);
  REQUIRE(grid.size() == 11);
  CHECK(grid.front().first == doctest::Approx(-5.0));
  CHECK(grid.back().first == doctest::Approx(5.0));
  double total = 0.0;
  for (const auto& [t, w] : grid) total += w;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(trapezoid_grid(5.0, 1), ConfigError);
}

TEST_CASE("superoperator linearity on random samples") {
  Rng rng(41);
  const SuperOperator s = SuperOperator::dense(3, rng.gaussian(9));
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = rng.gaussian(3);
    const Matrix b = rng.gaussian(3);
    const Cplx ca = rng.cnormal(), cb = rng.cnormal();
    const Matrix lhs = s.apply_to(ca * a + cb * b);
    const Matrix rhs = ca * s.apply_to(a) + cb * s.apply_to(b);
    CHECK(op_norm(lhs - rhs) <= 1e-12 * (std::abs(ca) * op_norm(a) + std::abs(cb) * op_norm(b) + 1.0));
  }
}

TEST_CASE("superoperator norm estimate approximates the SVD on dense storage") {
  // power iteration, 20 rounds: an estimate for inequality checks, bounded
  // above by the true norm
  Rng rng(43);
  const Matrix g = rng.gaussian(16);
  const SuperOperator s = SuperOperator::dense(4, g);
  const double est = s.norm_estimate();
  const double exact = op_norm(g);
  CHECK(est <= exact * (1.0 + 1e-12));
  CHECK(est >= exact * (1.0 - 1e-3));
}

TEST_CASE("seeded rng reproduces and mixes") {
  Rng a(99), b(99), c(100);
  const Matrix ma = a.gaussian(4);
  const Matrix mb = b.gaussian(4);
  CHECK(ma == mb);
  CHECK(ma != c.gaussian(4));
  CHECK(mix_seed(1, 2) != mix_seed(1, 3));
  CHECK(mix_seed(1, 2) == mix_seed(1, 2));

  const Matrix u = a.unitary(6);
  CHECK(op_norm(u.adjoint() * u - Matrix::Identity(6, 6)) < 1e-13);
  const Matrix h = a.hermitian(5);
  CHECK(op_norm(h - h.adjoint().eval()) == 0.0);
}
