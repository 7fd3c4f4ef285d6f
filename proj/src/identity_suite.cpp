#include "identity_suite.hpp"

#include <cmath>

namespace homlie::algebra {

using linalg::op_norm;
using linalg::Rng;

namespace {

double normalised(double raw, double scale) {
  if (raw == 0.0) return 0.0;
  return raw / std::max(scale, 1e-300);
}

IdentityReport run_triple_check(
    const char* name, const TwistMap& alpha, int samples, std::uint64_t seed, double tol,
    const std::function<double(const Matrix&, const Matrix&, const Matrix&)>& defect) {
  if (samples < 1) throw ConfigError("identity check: samples must be >= 1");
  IdentityReport rep;
  rep.identity = name;
  rep.samples = samples;
  rep.seed = seed;
  rep.tolerance = tol;
  Rng rng(seed);
  const Index n = alpha.dim();
  for (int i = 0; i < samples; ++i) {
    const Matrix x = rng.gaussian(n);
    const Matrix y = rng.gaussian(n);
    const Matrix z = rng.gaussian(n);
    const double scale = op_norm(x) * op_norm(y) * op_norm(z);
    const double d = normalised(defect(x, y, z), scale);
    if (d > rep.max_defect || rep.worst_index < 0) {
      rep.max_defect = d;
      rep.worst_index = i;
      rep.worst_inputs = {x, y, z};
    }
  }
  rep.pass = rep.max_defect <= rep.tolerance;
  return rep;
}

}  // namespace

IdentityReport check_skew_symmetry(const TwistMap& alpha, int samples, std::uint64_t seed) {
  // Exact: both brackets are computed from the same products, so the sum
  // cancels entrywise in floating point.
  return run_triple_check(
      "skew_symmetry", alpha, samples, seed, 0.0,
      [&](const Matrix& x, const Matrix& y, const Matrix&) {
        return op_norm(twisted_bracket(alpha, x, y) + twisted_bracket(alpha, y, x));
      });
}

IdentityReport check_bilinearity(const TwistMap& alpha, int samples, std::uint64_t seed, double tol) {
  if (samples < 1) throw ConfigError("identity check: samples must be >= 1");
  IdentityReport rep;
  rep.identity = "bilinearity";
  rep.samples = samples;
  rep.seed = seed;
  rep.tolerance = tol;
  Rng rng(seed);
  const Index n = alpha.dim();
  for (int i = 0; i < samples; ++i) {
    const Matrix x = rng.gaussian(n);
    const Matrix y = rng.gaussian(n);
    const Matrix z = rng.gaussian(n);
    const Cplx s = rng.cnormal();
    const Matrix lhs = twisted_bracket(alpha, s * x + y, z);
    const Matrix rhs = s * twisted_bracket(alpha, x, z) + twisted_bracket(alpha, y, z);
    const double scale = (std::abs(s) * op_norm(x) + op_norm(y)) * op_norm(z);
    const double d = normalised(op_norm(lhs - rhs), scale);
    if (d > rep.max_defect || rep.worst_index < 0) {
      rep.max_defect = d;
      rep.worst_index = i;
      rep.worst_inputs = {x, y, z};
    }
  }
  rep.pass = rep.max_defect <= rep.tolerance;
  return rep;
}

IdentityReport check_hom_jacobi(const TwistMap& alpha, int samples, std::uint64_t seed, double tol) {
  return run_triple_check("hom_jacobi", alpha, samples, seed, tol,
                          [&](const Matrix& x, const Matrix& y, const Matrix& z) {
                            return hom_jacobi_defect(alpha, x, y, z);
                          });
}

IdentityReport check_hom_malcev(const TwistMap& alpha, int samples, std::uint64_t seed, double tol) {
  return run_triple_check("hom_malcev", alpha, samples, seed, tol,
                          [&](const Matrix& x, const Matrix& y, const Matrix& z) {
                            return hom_malcev_defect(alpha, x, y, z);
                          });
}

IdentityReport check_phi_failure(const TwistMap& alpha, int samples, std::uint64_t seed, double tol) {
  if (samples < 1) throw ConfigError("identity check: samples must be >= 1");
  IdentityReport rep;
  rep.identity = "phi_failure";
  rep.samples = samples;
  rep.seed = seed;
  rep.tolerance = tol;
  Rng rng(seed);
  const Index n = alpha.dim();
  for (int i = 0; i < samples; ++i) {
    const Matrix x = rng.gaussian(n);
    const Matrix y = rng.gaussian(n);
    const double d = normalised(op_norm(phi_failure(alpha, x, y)), op_norm(x) * op_norm(y));
    if (d > rep.max_defect || rep.worst_index < 0) {
      rep.max_defect = d;
      rep.worst_index = i;
      rep.worst_inputs = {x, y};
    }
  }
  rep.pass = rep.max_defect <= rep.tolerance;
  return rep;
}

IdentityReport check_cyclic_phi(const TwistMap& alpha, int samples, std::uint64_t seed, double tol) {
  return run_triple_check("cyclic_phi", alpha, samples, seed, tol,
                          [&](const Matrix& x, const Matrix& y, const Matrix& z) {
                            return cyclic_phi_defect(alpha, x, y, z);
                          });
}

IdentityReport bracket_norm_bound_check(const TwistMap& alpha, int samples, std::uint64_t seed) {
  if (samples < 1) throw ConfigError("identity check: samples must be >= 1");
  IdentityReport rep;
  rep.identity = "bracket_norm_bound";
  rep.samples = samples;
  rep.seed = seed;
  rep.tolerance = 1.0;
  Rng rng(seed);
  const Index n = alpha.dim();
  const double bound_c = 2.0 * alpha.norm_bound();
  for (int i = 0; i < samples; ++i) {
    const Matrix x = rng.gaussian(n);
    const Matrix y = rng.gaussian(n);
    const double denom = bound_c * op_norm(x) * op_norm(y);
    const double ratio = normalised(op_norm(twisted_bracket(alpha, x, y)), denom);
    if (ratio > rep.max_defect || rep.worst_index < 0) {
      rep.max_defect = ratio;
      rep.worst_index = i;
      rep.worst_inputs = {x, y};
    }
  }
  rep.pass = rep.max_defect <= rep.tolerance;
  return rep;
}

IdentityReport isometry_bracket_check(const TwistMap& alpha, int samples, std::uint64_t seed) {
  if (!alpha.is_isometric_kind())
    throw ConfigError("isometry_bracket_check: twist kind is not isometric");
  if (samples < 1) throw ConfigError("identity check: samples must be >= 1");
  IdentityReport rep;
  rep.identity = "isometry_bracket";
  rep.samples = samples;
  rep.seed = seed;
  rep.tolerance = 1e-10;
  Rng rng(seed);
  const Index n = alpha.dim();
  for (int i = 0; i < samples; ++i) {
    const Matrix x = rng.gaussian(n);
    const Matrix y = rng.gaussian(n);
    const Matrix c = commutator(x, y);
    const double d = normalised(std::abs(op_norm(alpha.apply(c)) - op_norm(c)),
                                op_norm(x) * op_norm(y));
    if (d > rep.max_defect || rep.worst_index < 0) {
      rep.max_defect = d;
      rep.worst_index = i;
      rep.worst_inputs = {x, y};
    }
  }
  rep.pass = rep.max_defect <= rep.tolerance;
  return rep;
}

IdentityReport semigroup_lipschitz_check(const Matrix& h, int samples, std::uint64_t seed,
                                         double t_span) {
  if (samples < 1) throw ConfigError("identity check: samples must be >= 1");
  IdentityReport rep;
  rep.identity = "semigroup_bracket_lipschitz";
  rep.samples = samples;
  rep.seed = seed;
  rep.tolerance = 1e-12;
  Rng rng(seed);
  const Index n = h.rows();
  const double hn = op_norm(h);
  for (int i = 0; i < samples; ++i) {
    const Matrix x = rng.gaussian(n);
    const Matrix y = rng.gaussian(n);
    const double t = (2.0 * rng.uniform() - 1.0) * t_span;
    const double s = (2.0 * rng.uniform() - 1.0) * t_span;
    const Matrix c = commutator(x, y);
    const double lhs = op_norm(semigroup_bracket_family(h, x, y, t) -
                               semigroup_bracket_family(h, x, y, s));
    const double rhs = 2.0 * hn * op_norm(c) * std::abs(t - s);
    const double margin = normalised(std::max(lhs - rhs, 0.0), op_norm(c));
    if (margin > rep.max_defect || rep.worst_index < 0) {
      rep.max_defect = margin;
      rep.worst_index = i;
      rep.worst_inputs = {x, y};
    }
  }
  rep.pass = rep.max_defect <= rep.tolerance;
  return rep;
}

IdentityReport hom_lie_morphism_defect(const linalg::SuperOperator& phi, const TwistMap& alpha,
                                       const TwistMap& beta, int samples, std::uint64_t seed,
                                       double tol) {
  if (phi.dim() != alpha.dim() || phi.dim() != beta.dim())
    throw ConfigError("hom_lie_morphism_defect: dimension mismatch");
  if (samples < 1) throw ConfigError("identity check: samples must be >= 1");
  IdentityReport rep;
  rep.identity = "hom_lie_morphism";
  rep.samples = samples;
  rep.seed = seed;
  rep.tolerance = tol;
  Rng rng(seed);
  const Index n = phi.dim();
  for (int i = 0; i < samples; ++i) {
    const Matrix x = rng.gaussian(n);
    const Matrix y = rng.gaussian(n);
    const double intertwine =
        normalised(op_norm(phi.apply_to(alpha.apply(x)) - beta.apply(phi.apply_to(x))),
                   op_norm(x));
    const double bracket =
        normalised(op_norm(phi.apply_to(twisted_bracket(alpha, x, y)) -
                           twisted_bracket(beta, phi.apply_to(x), phi.apply_to(y))),
                   op_norm(x) * op_norm(y));
    const double d = std::max(intertwine, bracket);
    if (d > rep.max_defect || rep.worst_index < 0) {
      rep.max_defect = d;
      rep.worst_index = i;
      rep.worst_inputs = {x, y};
    }
  }
  rep.pass = rep.max_defect <= rep.tolerance;
  return rep;
}

std::vector<IdentityReport> identity_suite(const TwistMap& alpha, int samples, std::uint64_t seed,
                                           double tol) {
  std::vector<IdentityReport> out;
  out.push_back(check_skew_symmetry(alpha, samples, seed));
  out.push_back(check_bilinearity(alpha, samples, seed));
  out.push_back(check_hom_jacobi(alpha, samples, seed, tol));
  out.push_back(check_hom_malcev(alpha, samples, seed, tol));
  out.push_back(check_phi_failure(alpha, samples, seed, tol));
  out.push_back(check_cyclic_phi(alpha, samples, seed, tol));
  out.push_back(bracket_norm_bound_check(alpha, samples, seed));
  if (alpha.is_isometric_kind()) out.push_back(isometry_bracket_check(alpha, samples, seed));
  return out;
}

}  // namespace homlie::algebra
