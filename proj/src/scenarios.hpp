#pragma once
// Scenario constructors: the finite-dimensional lattice, shift, tensor and
// oscillator systems used by the spectrum/reproduction commands, plus the
// scaling study over system sizes.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spectral.hpp"

namespace homlie::scenarios {

using dynamics::TwistedDerivation;

struct Scenario {
  std::string name;
  TwistedDerivation derivation;
  Matrix a0;
  std::vector<Cplx> expected_frequencies;  // empty when no closed form applies
  std::string provenance;                  // where the expected values come from
  std::string notes;
};

// alpha = identity, X = diag(k*omega), prefactor i (overridable),
// a0 = cyclic shift: two expected modes, prefactor*(-omega) and
// prefactor*(n-1)*omega over i.
Scenario scenario_hermitian_lattice(int n, double omega, std::optional<Cplx> prefactor = {});

// alpha = conjugation by diag(e^{2 pi i k omega}), X = diag(e^{i k omega}),
// prefactor 1: eigenvalue on E_jk is e^{2 pi i (j-k) omega}(e^{ij omega} - e^{ik omega}).
Scenario scenario_sec8(int n, double omega, std::optional<Cplx> prefactor = {});
Cplx sec8_eigenvalue(double omega, int j, int k);

// m-fold tensor power of M_2 with the cyclic factor-rotation twist;
// X = b (x) ... (x) b (shift-invariant) or b (x) I (x) ... (x) I.
Scenario scenario_uhf(int m, bool shift_invariant, std::optional<Cplx> prefactor = {});

// Cyclic unimodular weighted shift W as conjugator; X = diag(theta*k)
// hermitian by default, diag(e^{i theta k}) behind the flag.
Scenario scenario_weighted_shift(int n, double theta, const std::vector<Cplx>& weights,
                                 bool unitary_x = false, std::optional<Cplx> prefactor = {});

// Truncated oscillator pair with the metaplectic shear conjugator
// V = e^{i eps p^2 / 2}; X = omega1 p^2 + omega2 q^2.
Scenario scenario_weyl(int n_max, double omega1, double omega2, double eps,
                       std::optional<Cplx> prefactor = {});

// Distinct eigenvalue clusters among eigen-matrices carried (>= half of the
// squared Frobenius mass) by the leading (n_max-2) x (n_max-2) block.
int weyl_interior_mode_count(const TwistedDerivation& d, Index interior_dim,
                             double cluster_tol = 1e-6);

struct ScalingRow {
  int dim = 0;
  int mode_count = 0;              // modes with magnitude > threshold
  std::vector<double> err_by_k;    // relative Frobenius error for top-1..top-K
  double max_err = 0.0;            // err_by_k.back()
  std::uint64_t seed = 0;
};

struct ScalingStudy {
  double omega = 0.0;
  double threshold = 0.0;
  int top_k = 0;
  std::uint64_t master_seed = 0;
  std::vector<ScalingRow> rows;
};

// Per dimension: hermitian lattice with a seeded random a0; counts modes
// above the threshold and evaluates the top-K truncation error (relative
// Frobenius, max over a 401-point grid on [-20, 20], modal evaluation).
ScalingStudy scaling_study(const std::vector<int>& dims, double omega, double threshold,
                           int top_k, std::uint64_t seed);

}  // namespace homlie::scenarios
