#pragma once
// Twisted brackets and the defect functionals for the algebraic identities:
// Hom-Jacobi, Hom-Malcev, the morphism-failure map Phi and its cyclic
// compatibility sum.  Defect functions return raw operator norms; callers
// normalise by the product of input norms.

#include "twist.hpp"

namespace homlie::algebra {

Matrix commutator(const Matrix& a, const Matrix& b);

// [a,b]_alpha = alpha(ab - ba); skew-symmetric exactly.
Matrix twisted_bracket(const TwistMap& alpha, const Matrix& a, const Matrix& b);

// J_alpha(x,y,z) = [a(x),[y,z]_a]_a + [a(y),[z,x]_a]_a + [a(z),[x,y]_a]_a
Matrix hom_jacobiator(const TwistMap& alpha, const Matrix& x, const Matrix& y, const Matrix& z);
double hom_jacobi_defect(const TwistMap& alpha, const Matrix& x, const Matrix& y, const Matrix& z);

// || J_a(a(x), a(y), [x,z]_a) - [J_a(x,y,z), a^2(x)]_a ||
double hom_malcev_defect(const TwistMap& alpha, const Matrix& x, const Matrix& y, const Matrix& z);

// Phi(x,y) = alpha([x,y]) - [alpha(x), alpha(y)]
Matrix phi_failure(const TwistMap& alpha, const Matrix& x, const Matrix& y);

// || Phi([x,y],z) + Phi([y,z],x) + Phi([z,x],y) ||
double cyclic_phi_defect(const TwistMap& alpha, const Matrix& x, const Matrix& y, const Matrix& z);

// [x,y]_t = alpha_t([x,y]) with alpha_t = conjugation by e^{itH}, H hermitian.
Matrix semigroup_bracket_family(const Matrix& h, const Matrix& x, const Matrix& y, double t);

}  // namespace homlie::algebra
