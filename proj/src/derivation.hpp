#pragma once
// Inner twisted derivations delta(a) = prefactor * alpha(Xa - aX), their
// exponential flow T(t) = e^{t delta}, orbit sampling, and the
// commutation / precompactness diagnostics.

#include <cstdint>
#include <functional>
#include <vector>

#include "twist.hpp"

namespace homlie::dynamics {

using algebra::TwistMap;
using linalg::SuperOperator;

// Flows and orbits abort once the state norm exceeds this multiple of the
// initial norm.
inline constexpr double kOverflowFactor = 1e12;

class TwistedDerivation {
 public:
  TwistedDerivation(TwistMap alpha, Matrix x, Cplx prefactor = Cplx(0.0, 1.0));

  const TwistMap& alpha() const { return alpha_; }
  const Matrix& x() const { return x_; }
  Cplx prefactor() const { return prefactor_; }
  Index dim() const { return x_.rows(); }
  const SuperOperator& superop() const { return superop_; }

  // Defining action, evaluated directly (not through the superoperator).
  Matrix apply(const Matrix& a) const;

 private:
  TwistMap alpha_;
  Matrix x_;
  Cplx prefactor_;
  SuperOperator superop_;
};

Matrix flow(const TwistedDerivation& d, double t, const Matrix& a);

struct OrbitSample {
  std::vector<double> times;
  std::vector<Matrix> states;
  std::vector<double> norms;  // operator norms
};

// Uniform sampling of [-t_max, t_max]; one expm for the initial offset and
// one for the step, advanced by the group law.
OrbitSample orbit(const TwistedDerivation& d, const Matrix& a, double t_max, int steps);

// Operator-norm estimate of alpha_super * delta_super - delta_super * alpha_super,
// normalised by ||delta_super||.
double commutation_defect(const TwistedDerivation& d);

// Size of a greedy first-fit epsilon-net over the sampled states,
// distances in operator norm.
int precompactness_estimate(const OrbitSample& o, double eps);

// Streams states over the uniform grid on [-half_width, half_width] in
// ascending order; shares the group-law stepper with orbit().
void sample_flow(const TwistedDerivation& d, const Matrix& a, double half_width, int steps,
                 const std::function<void(double, const Matrix&)>& visit);

}  // namespace homlie::dynamics
