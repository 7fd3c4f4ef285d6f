#include "linalg.hpp"

#include <cmath>
#include <numbers>

namespace homlie::linalg {

Vector vec(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix unvec(const Vector& v, Index n) {
  if (v.size() != n * n) throw ConfigError("unvec: length does not match dimension");
  return Eigen::Map<const Matrix>(v.data(), n, n);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

double op_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  if (m.isZero(0.0)) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double frob_norm(const Matrix& m) { return m.norm(); }

bool all_finite(const Matrix& m) {
  return m.allFinite();
}

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() < 1)
    throw ConfigError(std::string(what) + ": matrix must be square with dim >= 1");
  if (!all_finite(m))
    throw ConfigError(std::string(what) + ": matrix has non-finite entries");
}

void require_same_dim(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ConfigError(std::string(what) + ": dimension mismatch");
}

Matrix cyclic_shift(Index n) {
  Matrix s = Matrix::Zero(n, n);
  for (Index k = 0; k < n; ++k) s(k, (k + 1) % n) = 1.0;
  return s;
}

Matrix dft_unitary(Index n) {
  Matrix f(n, n);
  const double c = 2.0 * std::numbers::pi / static_cast<double>(n);
  for (Index j = 0; j < n; ++j)
    for (Index k = 0; k < n; ++k)
      f(j, k) = std::polar(1.0 / std::sqrt(static_cast<double>(n)),
                           c * static_cast<double>(j) * static_cast<double>(k));
  return f;
}

namespace {

double norm_1(const Matrix& m) {
  return m.cwiseAbs().colwise().sum().maxCoeff();
}

// Pade numerator/denominator split: p(A) = V + U, q(A) = V - U with U odd.
void pade_uv(const Matrix& a, const Matrix& a2, const std::vector<double>& b,
             Matrix& u, Matrix& v) {
  const Index n = a.rows();
  u = b[1] * Matrix::Identity(n, n);
  v = b[0] * Matrix::Identity(n, n);
  Matrix pow = Matrix::Identity(n, n);
  for (std::size_t k = 2; k < b.size(); k += 2) {
    pow = (pow * a2).eval();
    v += b[k] * pow;
    if (k + 1 < b.size()) u += b[k + 1] * pow;
  }
  u = (a * u).eval();
}

}  // namespace

Matrix expm_dense(const Matrix& a) {
  require_square(a, "expm");
  const Index n = a.rows();

  static const std::vector<double> b3{120, 60, 12, 1};
  static const std::vector<double> b5{30240, 15120, 3360, 420, 30, 1};
  static const std::vector<double> b7{17297280, 8648640, 1995840, 277200, 25200, 1512, 56, 1};
  static const std::vector<double> b9{17643225600., 8821612800., 2075673600., 302702400.,
                                      30270240., 2162160., 110880., 3960., 90., 1.};
  static const std::vector<double> b13{64764752532480000., 32382376266240000., 7771770303897600.,
                                       1187353796428800., 129060195264000., 10559470521600.,
                                       670442572800., 33522128640., 1323241920., 40840800.,
                                       960960., 16380., 182., 1.};
  static const double theta3 = 1.495585217958292e-2;
  static const double theta5 = 2.539398330063230e-1;
  static const double theta7 = 9.504178996162932e-1;
  static const double theta9 = 2.097847961257068e0;
  static const double theta13 = 5.371920351148152e0;

  const double nrm = norm_1(a);
  Matrix u, v;

  auto solve_pade = [&](const Matrix& uu, const Matrix& vv) {
    Matrix num = vv + uu;
    Matrix den = vv - uu;
    Matrix r = den.partialPivLu().solve(num);
    if (!all_finite(r)) throw OverflowError("expm: non-finite Pade result");
    return r;
  };

  if (nrm <= theta9) {
    const Matrix a2 = a * a;
    const std::vector<double>* b = &b9;
    if (nrm <= theta3) b = &b3;
    else if (nrm <= theta5) b = &b5;
    else if (nrm <= theta7) b = &b7;
    pade_uv(a, a2, *b, u, v);
    return solve_pade(u, v);
  }

  int squarings = 0;
  double scaled = nrm / theta13;
  if (scaled > 1.0) squarings = static_cast<int>(std::ceil(std::log2(scaled)));
  if (squarings > 64) throw OverflowError("expm: argument norm too large");

  const double factor = std::ldexp(1.0, -squarings);
  const Matrix as = a * factor;
  const Matrix a2 = as * as;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a2 * a4;
  const Matrix ident = Matrix::Identity(n, n);

  u = as * (a6 * (b13[13] * a6 + b13[11] * a4 + b13[9] * a2) +
            b13[7] * a6 + b13[5] * a4 + b13[3] * a2 + b13[1] * ident);
  v = a6 * (b13[12] * a6 + b13[10] * a4 + b13[8] * a2) +
      b13[6] * a6 + b13[4] * a4 + b13[2] * a2 + b13[0] * ident;

  Matrix r = solve_pade(u, v);
  for (int i = 0; i < squarings; ++i) {
    r = (r * r).eval();
    if (!all_finite(r)) throw OverflowError("expm: overflow while squaring");
  }
  return r;
}

std::vector<std::pair<double, double>> trapezoid_grid(double half_width, int steps) {
  if (steps < 2) throw ConfigError("trapezoid: need at least 2 grid points");
  if (!(half_width > 0.0)) throw ConfigError("trapezoid: half width must be positive");
  const double dt = 2.0 * half_width / static_cast<double>(steps - 1);
  const double w = dt / (2.0 * half_width);
  std::vector<std::pair<double, double>> grid(static_cast<std::size_t>(steps));
  for (int k = 0; k < steps; ++k) {
    const double t = -half_width + dt * static_cast<double>(k);
    const double wk = (k == 0 || k == steps - 1) ? 0.5 * w : w;
    grid[static_cast<std::size_t>(k)] = {t, wk};
  }
  return grid;
}

Matrix trapezoid_mean(const std::function<Matrix(double)>& f, double half_width, int steps) {
  const auto grid = trapezoid_grid(half_width, steps);
  Matrix acc;
  for (const auto& [t, w] : grid) {
    Matrix ft = f(t);
    if (acc.size() == 0) acc = Matrix::Zero(ft.rows(), ft.cols());
    acc += w * ft;
  }
  return acc;
}

std::uint64_t mix_seed(std::uint64_t master, std::uint64_t salt) {
  // splitmix64 on master xor salted golden-ratio increment
  std::uint64_t z = master ^ (salt * 0x9E3779B97F4A7C15ULL + 0xBF58476D1CE4E5B9ULL);
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

double Rng::normal() { return gauss_(engine_); }

double Rng::uniform() {
  return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
}

std::uint64_t Rng::next_u64() { return engine_(); }

Cplx Rng::cnormal() {
  const double re = normal();
  const double im = normal();
  return Cplx(re, im) / std::sqrt(2.0);
}

Matrix Rng::gaussian(Index n) {
  Matrix m(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) m(i, j) = cnormal();
  return m;
}

Matrix Rng::hermitian(Index n) {
  Matrix g = gaussian(n);
  return 0.5 * (g + g.adjoint().eval());
}

Matrix Rng::unitary(Index n) {
  Matrix g = gaussian(n);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index k = 0; k < n; ++k) {
    const Cplx d = r(k, k);
    const double ad = std::abs(d);
    if (ad > 0.0) q.col(k) *= d / ad;
  }
  return q;
}

}  // namespace homlie::linalg
