#include "derivation.hpp"

#include <cmath>
#include <sstream>

namespace homlie::dynamics {

using linalg::frob_norm;
using linalg::op_norm;
using linalg::unvec;
using linalg::vec;

namespace {

// Column of the superoperator for the basis matrix E_jk:
// X E_jk - E_jk X has column k equal to X.col(j) and row j equal to
// -X.row(k), with the (j,k) entry carrying both contributions.
Matrix defining_action(const TwistMap& alpha, const Matrix& x, Cplx pre, Index j, Index k) {
  const Index n = x.rows();
  Matrix e = Matrix::Zero(n, n);
  e.col(k) = x.col(j);
  e.row(j) -= x.row(k);
  return pre * alpha.apply(e);
}

SuperOperator assemble(const TwistMap& alpha, const Matrix& x, Cplx pre) {
  const Index n = x.rows();

  // Optimistic pass: many constructions are diagonal in the matrix-unit
  // basis (exact zeros off the target coordinate).
  Vector diag(n * n);
  bool is_diag = true;
  for (Index k = 0; k < n && is_diag; ++k) {
    for (Index j = 0; j < n && is_diag; ++j) {
      const Matrix d = defining_action(alpha, x, pre, j, k);
      for (Index c = 0; c < n && is_diag; ++c)
        for (Index r = 0; r < n; ++r)
          if ((r != j || c != k) && d(r, c) != Cplx(0.0, 0.0)) {
            is_diag = false;
            break;
          }
      if (is_diag) diag[j + k * n] = d(j, k);
    }
  }
  if (is_diag) return SuperOperator::diagonal(n, std::move(diag));

  Matrix m(n * n, n * n);
  for (Index k = 0; k < n; ++k)
    for (Index j = 0; j < n; ++j)
      m.col(j + k * n) = vec(defining_action(alpha, x, pre, j, k));
  return SuperOperator::dense(n, std::move(m));
}

void check_state(const Matrix& state, double initial_norm, double t) {
  if (!linalg::all_finite(state)) {
    std::ostringstream msg;
    msg << "flow: non-finite state at t = " << t;
    throw OverflowError(msg.str());
  }
  if (frob_norm(state) > kOverflowFactor * std::max(initial_norm, 1e-300)) {
    std::ostringstream msg;
    msg << "flow: state norm exceeded " << kOverflowFactor << " x initial at t = " << t;
    throw OverflowError(msg.str());
  }
}

}  // namespace

TwistedDerivation::TwistedDerivation(TwistMap alpha, Matrix x, Cplx prefactor)
    : alpha_(std::move(alpha)), x_(std::move(x)), prefactor_(prefactor),
      superop_(SuperOperator::identity(1)) {
  linalg::require_square(x_, "TwistedDerivation");
  if (alpha_.dim() != x_.rows())
    throw ConfigError("TwistedDerivation: twist and X dimensions differ");
  superop_ = assemble(alpha_, x_, prefactor_);
}

Matrix TwistedDerivation::apply(const Matrix& a) const {
  linalg::require_same_dim(a, x_, "TwistedDerivation::apply");
  return prefactor_ * alpha_.apply(x_ * a - a * x_);
}

Matrix flow(const TwistedDerivation& d, double t, const Matrix& a) {
  linalg::require_same_dim(a, d.x(), "flow");
  const Matrix out = expm(d.superop(), t).apply_to(a);
  check_state(out, frob_norm(a), t);
  return out;
}

void sample_flow(const TwistedDerivation& d, const Matrix& a, double half_width, int steps,
                 const std::function<void(double, const Matrix&)>& visit) {
  linalg::require_same_dim(a, d.x(), "sample_flow");
  if (steps < 2) throw ConfigError("sample_flow: need at least 2 samples");
  const double dt = 2.0 * half_width / static_cast<double>(steps - 1);
  const SuperOperator step = expm(d.superop(), dt);
  Vector state = expm(d.superop(), -half_width).apply(vec(a));
  const double a0 = frob_norm(a);
  for (int k = 0; k < steps; ++k) {
    const double t = -half_width + dt * static_cast<double>(k);
    const Matrix m = unvec(state, d.dim());
    check_state(m, a0, t);
    visit(t, m);
    if (k + 1 < steps) state = step.apply(state);
  }
}

OrbitSample orbit(const TwistedDerivation& d, const Matrix& a, double t_max, int steps) {
  OrbitSample o;
  o.times.reserve(static_cast<std::size_t>(steps));
  o.states.reserve(static_cast<std::size_t>(steps));
  o.norms.reserve(static_cast<std::size_t>(steps));
  sample_flow(d, a, t_max, steps, [&](double t, const Matrix& m) {
    o.times.push_back(t);
    o.states.push_back(m);
    o.norms.push_back(op_norm(m));
  });
  return o;
}

double commutation_defect(const TwistedDerivation& d) {
  const SuperOperator alpha_super = d.alpha().to_superoperator();
  const SuperOperator& delta_super = d.superop();
  const double num =
      alpha_super.compose(delta_super).subtract(delta_super.compose(alpha_super)).norm_estimate();
  const double den = delta_super.norm_estimate();
  if (den == 0.0) return 0.0;
  return num / den;
}

int precompactness_estimate(const OrbitSample& o, double eps) {
  if (!(eps > 0.0)) throw ConfigError("precompactness_estimate: eps must be positive");
  std::vector<const Matrix*> centers;
  for (const Matrix& s : o.states) {
    bool covered = false;
    for (const Matrix* c : centers) {
      if (op_norm(s - *c) <= eps) {
        covered = true;
        break;
      }
    }
    if (!covered) centers.push_back(&s);
  }
  return static_cast<int>(centers.size());
}

}  // namespace homlie::dynamics
