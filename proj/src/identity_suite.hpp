#pragma once
// Sampled verification of the algebraic identities.  Every check draws
// seeded Gaussian inputs, records the worst scale-normalised defect and
// compares it against its tolerance; pass <=> max_defect <= tolerance.

#include <cstdint>
#include <string>
#include <vector>

#include "brackets.hpp"

namespace homlie::algebra {

struct IdentityReport {
  std::string identity;
  int samples = 0;
  std::uint64_t seed = 0;
  double max_defect = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  int worst_index = -1;
  std::vector<Matrix> worst_inputs;
};

IdentityReport check_skew_symmetry(const TwistMap& alpha, int samples, std::uint64_t seed);
IdentityReport check_bilinearity(const TwistMap& alpha, int samples, std::uint64_t seed,
                                 double tol = 1e-12);
IdentityReport check_hom_jacobi(const TwistMap& alpha, int samples, std::uint64_t seed, double tol);
IdentityReport check_hom_malcev(const TwistMap& alpha, int samples, std::uint64_t seed, double tol);
IdentityReport check_phi_failure(const TwistMap& alpha, int samples, std::uint64_t seed, double tol);
IdentityReport check_cyclic_phi(const TwistMap& alpha, int samples, std::uint64_t seed, double tol);

// ||[x,y]_a|| <= 2 ||a|| ||x|| ||y||; max_defect is the worst ratio against
// that bound, tolerance 1.
IdentityReport bracket_norm_bound_check(const TwistMap& alpha, int samples, std::uint64_t seed);

// | ||[x,y]_a|| - ||[x,y]|| | for isometric twists; identity or unitary
// conjugation only.
IdentityReport isometry_bracket_check(const TwistMap& alpha, int samples, std::uint64_t seed);

// ||[x,y]_t - [x,y]_s|| <= 2 ||H|| ||[x,y]|| |t - s|; max_defect is the
// worst margin (lhs - rhs)/||[x,y]||.
IdentityReport semigroup_lipschitz_check(const Matrix& h, int samples, std::uint64_t seed,
                                         double t_span = 5.0);

// Defects of phi o alpha = beta o phi and phi([x,y]_a) = [phi x, phi y]_b.
IdentityReport hom_lie_morphism_defect(const linalg::SuperOperator& phi, const TwistMap& alpha,
                                       const TwistMap& beta, int samples, std::uint64_t seed,
                                       double tol = 1e-9);

// The full per-twist suite run by the check-identities command.
std::vector<IdentityReport> identity_suite(const TwistMap& alpha, int samples, std::uint64_t seed,
                                           double tol);

}  // namespace homlie::algebra
