#pragma once
// Almost-periodic / ergodic subspace machinery: eigenvector spans
// orthonormalised under the trace inner product <a,b> = tr(b* a), the
// principal-angle overlap diagnostic, bracket-stability residuals, and the
// unconditional-convergence (re-summation) check.

#include "identity_suite.hpp"
#include "spectral.hpp"

namespace homlie::bohr {

using algebra::IdentityReport;
using algebra::TwistMap;

struct SubspaceBasis {
  std::string label;  // "ap" or "erg"
  Index mat_dim = 0;  // matrix side N
  Matrix q;           // N^2 x k, orthonormal columns (vectorised matrices)

  Index dim() const { return q.cols(); }
  Matrix basis_matrix(Index k) const;              // unvec of column k
  Matrix project_residual(const Matrix& a) const;  // a - proj_span(a)
};

struct ApErgSplit {
  SubspaceBasis ap;
  SubspaceBasis erg;
  std::vector<std::pair<Cplx, Matrix>> growing;  // flagged, outside both
  Index overlap_dim = 0;  // dim of (ap meet erg) via principal angles
  std::vector<double> principal_cosines;
};

// ap: eigenvectors with |Re lambda| <= tol_re.  erg: eigenvectors with
// purely imaginary nonzero eigenvalue union the decaying ones.  Growing
// eigenvectors are reported separately.
ApErgSplit ap_erg_split(const SuperOperator& s, double tol_re = 1e-8);
ApErgSplit ap_erg_split(const TwistedDerivation& d, double tol_re = 1e-8);

// For random span elements a, b: residuals of [a,b]_alpha, alpha(a) and
// delta(a) against the span, in operator norm, scale-normalised.
IdentityReport bracket_stability_check(const TwistedDerivation& d, const SubspaceBasis& basis,
                                       const TwistMap& alpha, int samples, std::uint64_t seed,
                                       double tol);

// Re-sums the modes in 10 random orders and compares the totals pairwise.
IdentityReport permutation_invariance_check(const SpectralDecomposition& dec, std::uint64_t seed);

}  // namespace homlie::bohr
