#include "scenarios.hpp"

#include <algorithm>
#include <cmath>

namespace homlie::scenarios {

using algebra::TwistMap;
using linalg::cyclic_shift;
using linalg::expm_dense;
using linalg::frob_norm;
using linalg::kron;
using linalg::mix_seed;
using linalg::Rng;

namespace {

constexpr Cplx kI{0.0, 1.0};

Cplx pick(std::optional<Cplx> prefactor, Cplx fallback) {
  return prefactor.value_or(fallback);
}

}  // namespace

Scenario scenario_hermitian_lattice(int n, double omega, std::optional<Cplx> prefactor) {
  if (n < 2) throw ConfigError("hermitian lattice: dim must be >= 2");
  if (omega == 0.0) throw ConfigError("hermitian lattice: omega must be nonzero");
  const Cplx pre = pick(prefactor, kI);
  Matrix x = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k) x(k, k) = omega * static_cast<double>(k);
  TwistedDerivation d(TwistMap::identity(n), std::move(x), pre);
  Scenario s{.name = "hermitian",
             .derivation = std::move(d),
             .a0 = cyclic_shift(n),
             .expected_frequencies = {pre * (-omega), pre * (omega * static_cast<double>(n - 1))},
             .provenance = "action on matrix units: delta(E_jk) = prefactor*omega*(j-k)*E_jk; "
                           "the cyclic shift splits into the lower diagonal and the corner unit",
             .notes = "identity twist, X = diag(k*omega)"};
  return s;
}

Cplx sec8_eigenvalue(double omega, int j, int k) {
  const double two_pi = 2.0 * 3.14159265358979323846;
  return std::exp(Cplx(0.0, two_pi * omega * static_cast<double>(j - k))) *
         (std::exp(Cplx(0.0, omega * static_cast<double>(j))) -
          std::exp(Cplx(0.0, omega * static_cast<double>(k))));
}

Scenario scenario_sec8(int n, double omega, std::optional<Cplx> prefactor) {
  if (n < 2) throw ConfigError("sec8: dim must be >= 2");
  const Cplx pre = pick(prefactor, Cplx(1.0, 0.0));
  const double two_pi = 2.0 * 3.14159265358979323846;
  Matrix u = Matrix::Zero(n, n);
  Matrix x = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    u(k, k) = std::exp(Cplx(0.0, two_pi * omega * static_cast<double>(k)));
    x(k, k) = std::exp(Cplx(0.0, omega * static_cast<double>(k)));
  }
  TwistedDerivation d(TwistMap::unitary_conjugation(std::move(u)), std::move(x), pre);
  std::vector<Cplx> expected;
  expected.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) expected.push_back(pre * sec8_eigenvalue(omega, k, (k + 1) % n));
  Scenario s{.name = "sec8",
             .derivation = std::move(d),
             .a0 = cyclic_shift(n),
             .expected_frequencies = std::move(expected),
             .provenance = "closed form on matrix units: mu_jk = "
                           "e^{2 pi i (j-k) omega} (e^{ij omega} - e^{ik omega}); "
                           "the shift a0 carries the (k, k+1 mod N) units",
             .notes = "conjugation twist by diag(e^{2 pi i k omega}), X = diag(e^{i k omega}), "
                      "prefactor 1"};
  return s;
}

namespace {

Matrix tensor_chain(const std::vector<Matrix>& factors) {
  Matrix out = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) out = kron(out, factors[k]);
  return out;
}

// Factor-rotation unitary on (C^2)^(x m): digits (i_0,...,i_{m-1}) map to
// (i_1,...,i_{m-1},i_0), so P (a_0 x a_1 x ... ) P* = a_1 x ... x a_0.
Matrix rotation_unitary(int m) {
  const int dim = 1 << m;
  Matrix p = Matrix::Zero(dim, dim);
  for (int src = 0; src < dim; ++src) {
    int digits[16];
    for (int t = 0; t < m; ++t) digits[t] = (src >> (m - 1 - t)) & 1;
    int dst = 0;
    for (int t = 0; t < m; ++t) {
      const int rotated = digits[(t + 1) % m];
      dst |= rotated << (m - 1 - t);
    }
    p(dst, src) = 1.0;
  }
  return p;
}

}  // namespace

Scenario scenario_uhf(int m, bool shift_invariant, std::optional<Cplx> prefactor) {
  if (m < 2 || m > 6) throw ConfigError("uhf: tensor length must be in [2, 6]");
  const Cplx pre = pick(prefactor, kI);
  Matrix sz(2, 2), sx(2, 2), eye2 = Matrix::Identity(2, 2);
  sz << 1.0, 0.0, 0.0, -1.0;
  sx << 0.0, 1.0, 1.0, 0.0;

  std::vector<Matrix> xf(static_cast<std::size_t>(m), shift_invariant ? sz : eye2);
  if (!shift_invariant) xf[0] = sz;
  std::vector<Matrix> af(static_cast<std::size_t>(m), eye2);
  af[0] = sx;

  TwistedDerivation d(TwistMap::unitary_conjugation(rotation_unitary(m)), tensor_chain(xf), pre);
  Scenario s{.name = "uhf",
             .derivation = std::move(d),
             .a0 = tensor_chain(af),
             .expected_frequencies = {},
             .provenance = "",
             .notes = shift_invariant
                          ? "cyclic factor rotation, X constant tensor (rotation-invariant)"
                          : "cyclic factor rotation, X supported on one factor"};
  return s;
}

Scenario scenario_weighted_shift(int n, double theta, const std::vector<Cplx>& weights,
                                 bool unitary_x, std::optional<Cplx> prefactor) {
  if (n < 2) throw ConfigError("weighted shift: dim must be >= 2");
  if (weights.size() != static_cast<std::size_t>(n))
    throw ConfigError("weighted shift: need one weight per site");
  for (const Cplx& w : weights)
    if (std::abs(std::abs(w) - 1.0) > 1e-12)
      throw ConfigError("weighted shift: weights must be unimodular");

  Matrix w = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k) w((k + 1) % n, k) = weights[static_cast<std::size_t>(k)];
  Matrix x = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k)
    x(k, k) = unitary_x ? std::exp(Cplx(0.0, theta * static_cast<double>(k)))
                        : Cplx(theta * static_cast<double>(k), 0.0);
  const Cplx pre = pick(prefactor, unitary_x ? Cplx(1.0, 0.0) : kI);
  TwistedDerivation d(TwistMap::unitary_conjugation(std::move(w)), std::move(x), pre);
  Scenario s{.name = "weighted",
             .derivation = std::move(d),
             .a0 = cyclic_shift(n),
             .expected_frequencies = {},
             .provenance = "",
             .notes = unitary_x ? "cyclic weighted shift conjugator, unimodular diagonal X"
                                : "cyclic weighted shift conjugator, X = diag(theta*k)"};
  return s;
}

Scenario scenario_weyl(int n_max, double omega1, double omega2, double eps,
                       std::optional<Cplx> prefactor) {
  if (n_max < 4) throw ConfigError("weyl: need at least 4 levels");
  if (!(omega1 > 0.0) || !(omega2 > 0.0)) throw ConfigError("weyl: frequencies must be positive");
  const Cplx pre = pick(prefactor, kI);

  Matrix lower = Matrix::Zero(n_max, n_max);
  for (int k = 1; k < n_max; ++k) lower(k - 1, k) = std::sqrt(static_cast<double>(k));
  const Matrix raise = lower.adjoint();
  const double s2 = std::sqrt(2.0);
  const Matrix q = (lower + raise) / s2;
  const Matrix p = kI * (raise - lower) / s2;
  const Matrix x = omega1 * (p * p) + omega2 * (q * q);
  const Matrix v = expm_dense(kI * (eps / 2.0) * (p * p));

  TwistedDerivation d(TwistMap::unitary_conjugation(v), x, pre);

  // a0: rank-one |v0><v1| in the eigenbasis of the (hermitian) X, so the
  // eps = 0 flow carries the single frequency prefactor*(E_0 - E_1).
  Eigen::SelfAdjointEigenSolver<Matrix> saes(x);
  const Matrix a0 = saes.eigenvectors().col(0) * saes.eigenvectors().col(1).adjoint();

  std::vector<Cplx> expected;
  std::string provenance;
  if (eps == 0.0) {
    expected = {pre * (saes.eigenvalues()(0) - saes.eigenvalues()(1))};
    provenance = "eigen-difference of the truncated oscillator Hamiltonian";
  }
  Scenario s{.name = "weyl",
             .derivation = std::move(d),
             .a0 = a0,
             .expected_frequencies = std::move(expected),
             .provenance = std::move(provenance),
             .notes = "metaplectic shear conjugator V = e^{i eps p^2/2}, X = w1 p^2 + w2 q^2, "
                      "truncated Fock levels"};
  return s;
}

int weyl_interior_mode_count(const TwistedDerivation& d, Index interior_dim, double cluster_tol) {
  const linalg::EigenSystem es = eig(d.superop());
  const Index n = d.dim();
  std::vector<Cplx> interior;
  for (Index k = 0; k < es.eigenvalues.size(); ++k) {
    const Matrix m = linalg::unvec(es.eigenvector(k), n);
    const double total = frob_norm(m);
    const double inner = m.topLeftCorner(interior_dim, interior_dim).norm();
    if (total > 0.0 && inner * inner >= 0.5 * total * total)
      interior.push_back(es.eigenvalues[k]);
  }
  std::stable_sort(interior.begin(), interior.end(), [](Cplx a, Cplx b) {
    if (a.imag() != b.imag()) return a.imag() < b.imag();
    return a.real() < b.real();
  });
  int clusters = 0;
  Cplx anchor{0.0, 0.0};
  bool open = false;
  for (Cplx z : interior) {
    if (!open || std::abs(z - anchor) > cluster_tol) {
      ++clusters;
      anchor = z;
      open = true;
    }
  }
  return clusters;
}

ScalingStudy scaling_study(const std::vector<int>& dims, double omega, double threshold,
                           int top_k, std::uint64_t seed) {
  if (dims.empty()) throw ConfigError("scaling study: need at least one dimension");
  if (!std::is_sorted(dims.begin(), dims.end()))
    throw ConfigError("scaling study: dimensions must be ascending");
  if (top_k < 1) throw ConfigError("scaling study: top_k must be >= 1");

  ScalingStudy study;
  study.omega = omega;
  study.threshold = threshold;
  study.top_k = top_k;
  study.master_seed = seed;

  for (int n : dims) {
    ScalingRow row;
    row.dim = n;
    row.seed = mix_seed(seed, static_cast<std::uint64_t>(n));
    Scenario sc = scenario_hermitian_lattice(n, omega);
    Rng rng(row.seed);
    const Matrix a0 = rng.gaussian(n);
    const bohr::SpectralDecomposition dec = bohr::exact_modes(sc.derivation, a0);

    for (const bohr::BohrMode& m : dec.modes)
      if (m.magnitude > threshold) ++row.mode_count;

    // Top-k truncation error, modal evaluation on a fixed grid.
    const int grid_points = 401;
    const double t_span = 20.0;
    const double a0_norm = std::max(frob_norm(a0), 1e-300);
    row.err_by_k.assign(static_cast<std::size_t>(top_k), 0.0);
    for (int gp = 0; gp < grid_points; ++gp) {
      const double t = -t_span + 2.0 * t_span * static_cast<double>(gp) /
                                     static_cast<double>(grid_points - 1);
      Matrix full = Matrix::Zero(n, n);
      for (const bohr::BohrMode& m : dec.modes) full += std::exp(m.lambda * t) * m.coefficient;
      Matrix partial = Matrix::Zero(n, n);
      for (int k = 0; k < top_k; ++k) {
        if (static_cast<std::size_t>(k) < dec.modes.size()) {
          const bohr::BohrMode& m = dec.modes[static_cast<std::size_t>(k)];
          partial += std::exp(m.lambda * t) * m.coefficient;
        }
        const double err = frob_norm(full - partial) / a0_norm;
        auto& slot = row.err_by_k[static_cast<std::size_t>(k)];
        slot = std::max(slot, err);
      }
    }
    row.max_err = row.err_by_k.back();
    study.rows.push_back(std::move(row));
  }
  return study;
}

}  // namespace homlie::scenarios
