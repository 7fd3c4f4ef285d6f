#include "homlie/homlie.h"

#include <algorithm>
#include <cstring>

#include "commands.hpp"

struct homlie_matrix {
  homlie::Matrix m;
};
struct homlie_twist {
  homlie::algebra::TwistMap t;
};
struct homlie_derivation {
  homlie::dynamics::TwistedDerivation d;
};
struct homlie_decomposition {
  homlie::bohr::SpectralDecomposition d;
};

namespace {

thread_local std::string g_last_error;

homlie_status to_status(const std::exception& e) {
  g_last_error = e.what();
  if (dynamic_cast<const homlie::ConfigError*>(&e)) return HOMLIE_BAD_CONFIG;
  if (dynamic_cast<const homlie::OverflowError*>(&e)) return HOMLIE_OVERFLOW;
  return HOMLIE_NUMERIC_ERROR;
}

template <typename F>
homlie_status guarded(F&& body) {
  try {
    g_last_error.clear();
    return std::forward<F>(body)();
  } catch (const std::exception& e) {
    return to_status(e);
  }
}

template <typename F>
auto make_guarded(F&& body) -> decltype(body()) {
  try {
    g_last_error.clear();
    return std::forward<F>(body)();
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return nullptr;
  }
}

homlie_status exit_code_to_status(int code) {
  switch (code) {
    case homlie::cli::kExitOk: return HOMLIE_OK;
    case homlie::cli::kExitIdentityFailure: return HOMLIE_IDENTITY_FAILURE;
    case homlie::cli::kExitConfig: return HOMLIE_BAD_CONFIG;
    default: return HOMLIE_OVERFLOW;
  }
}

homlie::cli::ScenarioConfig scenario_config(const homlie_scenario_opts& o) {
  homlie::cli::ScenarioConfig cfg;
  cfg.scenario = o.scenario ? o.scenario : "";
  cfg.dim = o.dim;
  cfg.omega = o.omega;
  cfg.prefactor_one = o.prefactor_one != 0;
  cfg.prefactor_set = o.prefactor_set != 0;
  cfg.uhf_m = o.uhf_m;
  cfg.uhf_shift_invariant = o.uhf_shift_invariant != 0;
  cfg.theta = o.theta;
  if (o.weight_phases && o.n_weight_phases > 0)
    cfg.weight_phases.assign(o.weight_phases, o.weight_phases + o.n_weight_phases);
  cfg.unitary_x = o.unitary_x != 0;
  cfg.n_max = o.n_max;
  cfg.omega1 = o.omega1;
  cfg.omega2 = o.omega2;
  cfg.eps = o.eps;
  return cfg;
}

}  // namespace

extern "C" {

const char* homlie_version(void) { return homlie::report::kToolVersion; }

const char* homlie_last_error(void) { return g_last_error.c_str(); }

/* ---- matrices ---- */

homlie_matrix* homlie_matrix_create(int dim, const double* interleaved) {
  return make_guarded([&]() -> homlie_matrix* {
    if (dim < 1) throw homlie::ConfigError("matrix dim must be >= 1");
    if (!interleaved) throw homlie::ConfigError("null entry pointer");
    homlie::Matrix m(dim, dim);
    for (int j = 0; j < dim; ++j)
      for (int i = 0; i < dim; ++i) {
        const std::size_t k = 2 * (static_cast<std::size_t>(j) * dim + i);
        m(i, j) = homlie::Cplx(interleaved[k], interleaved[k + 1]);
      }
    homlie::linalg::require_square(m, "homlie_matrix_create");
    return new homlie_matrix{std::move(m)};
  });
}

homlie_matrix* homlie_matrix_zero(int dim) {
  return make_guarded([&]() -> homlie_matrix* {
    if (dim < 1) throw homlie::ConfigError("matrix dim must be >= 1");
    return new homlie_matrix{homlie::Matrix::Zero(dim, dim)};
  });
}

homlie_matrix* homlie_matrix_identity(int dim) {
  return make_guarded([&]() -> homlie_matrix* {
    if (dim < 1) throw homlie::ConfigError("matrix dim must be >= 1");
    return new homlie_matrix{homlie::Matrix::Identity(dim, dim)};
  });
}

homlie_matrix* homlie_matrix_cyclic_shift(int dim) {
  return make_guarded([&]() -> homlie_matrix* {
    if (dim < 1) throw homlie::ConfigError("matrix dim must be >= 1");
    return new homlie_matrix{homlie::linalg::cyclic_shift(dim)};
  });
}

void homlie_matrix_destroy(homlie_matrix* m) { delete m; }

int homlie_matrix_dim(const homlie_matrix* m) {
  return m ? static_cast<int>(m->m.rows()) : 0;
}

homlie_status homlie_matrix_get(const homlie_matrix* m, int row, int col, double* re, double* im) {
  return guarded([&]() -> homlie_status {
    if (!m || !re || !im) throw homlie::ConfigError("null argument");
    if (row < 0 || col < 0 || row >= m->m.rows() || col >= m->m.cols())
      throw homlie::ConfigError("index out of range");
    *re = m->m(row, col).real();
    *im = m->m(row, col).imag();
    return HOMLIE_OK;
  });
}

homlie_status homlie_matrix_set(homlie_matrix* m, int row, int col, double re, double im) {
  return guarded([&]() -> homlie_status {
    if (!m) throw homlie::ConfigError("null argument");
    if (row < 0 || col < 0 || row >= m->m.rows() || col >= m->m.cols())
      throw homlie::ConfigError("index out of range");
    m->m(row, col) = homlie::Cplx(re, im);
    return HOMLIE_OK;
  });
}

homlie_status homlie_matrix_op_norm(const homlie_matrix* m, double* out) {
  return guarded([&]() -> homlie_status {
    if (!m || !out) throw homlie::ConfigError("null argument");
    *out = homlie::linalg::op_norm(m->m);
    return HOMLIE_OK;
  });
}

/* ---- twisting maps ---- */

homlie_twist* homlie_twist_identity(int dim) {
  return make_guarded([&]() -> homlie_twist* {
    return new homlie_twist{homlie::algebra::TwistMap::identity(dim)};
  });
}

homlie_twist* homlie_twist_unitary(const homlie_matrix* u) {
  return make_guarded([&]() -> homlie_twist* {
    if (!u) throw homlie::ConfigError("null conjugator");
    return new homlie_twist{homlie::algebra::TwistMap::unitary_conjugation(u->m)};
  });
}

homlie_twist* homlie_twist_trace_shift(int dim) {
  return make_guarded([&]() -> homlie_twist* {
    return new homlie_twist{homlie::algebra::TwistMap::trace_shift(dim)};
  });
}

homlie_twist* homlie_twist_transpose(int dim) {
  return make_guarded([&]() -> homlie_twist* {
    return new homlie_twist{homlie::algebra::TwistMap::transpose(dim)};
  });
}

void homlie_twist_destroy(homlie_twist* t) { delete t; }

homlie_status homlie_twist_apply(const homlie_twist* t, const homlie_matrix* a,
                                 homlie_matrix** out) {
  return guarded([&]() -> homlie_status {
    if (!t || !a || !out) throw homlie::ConfigError("null argument");
    *out = new homlie_matrix{t->t.apply(a->m)};
    return HOMLIE_OK;
  });
}

/* ---- brackets ---- */

homlie_status homlie_commutator(const homlie_matrix* a, const homlie_matrix* b,
                                homlie_matrix** out) {
  return guarded([&]() -> homlie_status {
    if (!a || !b || !out) throw homlie::ConfigError("null argument");
    *out = new homlie_matrix{homlie::algebra::commutator(a->m, b->m)};
    return HOMLIE_OK;
  });
}

homlie_status homlie_twisted_bracket(const homlie_twist* t, const homlie_matrix* a,
                                     const homlie_matrix* b, homlie_matrix** out) {
  return guarded([&]() -> homlie_status {
    if (!t || !a || !b || !out) throw homlie::ConfigError("null argument");
    *out = new homlie_matrix{homlie::algebra::twisted_bracket(t->t, a->m, b->m)};
    return HOMLIE_OK;
  });
}

homlie_status homlie_hom_jacobi_defect(const homlie_twist* t, const homlie_matrix* x,
                                       const homlie_matrix* y, const homlie_matrix* z,
                                       double* out) {
  return guarded([&]() -> homlie_status {
    if (!t || !x || !y || !z || !out) throw homlie::ConfigError("null argument");
    *out = homlie::algebra::hom_jacobi_defect(t->t, x->m, y->m, z->m);
    return HOMLIE_OK;
  });
}

homlie_status homlie_hom_malcev_defect(const homlie_twist* t, const homlie_matrix* x,
                                       const homlie_matrix* y, const homlie_matrix* z,
                                       double* out) {
  return guarded([&]() -> homlie_status {
    if (!t || !x || !y || !z || !out) throw homlie::ConfigError("null argument");
    *out = homlie::algebra::hom_malcev_defect(t->t, x->m, y->m, z->m);
    return HOMLIE_OK;
  });
}

homlie_status homlie_phi_failure(const homlie_twist* t, const homlie_matrix* x,
                                 const homlie_matrix* y, homlie_matrix** out) {
  return guarded([&]() -> homlie_status {
    if (!t || !x || !y || !out) throw homlie::ConfigError("null argument");
    *out = new homlie_matrix{homlie::algebra::phi_failure(t->t, x->m, y->m)};
    return HOMLIE_OK;
  });
}

homlie_status homlie_cyclic_phi_defect(const homlie_twist* t, const homlie_matrix* x,
                                       const homlie_matrix* y, const homlie_matrix* z,
                                       double* out) {
  return guarded([&]() -> homlie_status {
    if (!t || !x || !y || !z || !out) throw homlie::ConfigError("null argument");
    *out = homlie::algebra::cyclic_phi_defect(t->t, x->m, y->m, z->m);
    return HOMLIE_OK;
  });
}

/* ---- derivations ---- */

homlie_status homlie_derivation_build(const homlie_twist* t, const homlie_matrix* x,
                                      double prefactor_re, double prefactor_im,
                                      homlie_derivation** out) {
  return guarded([&]() -> homlie_status {
    if (!t || !x || !out) throw homlie::ConfigError("null argument");
    *out = new homlie_derivation{homlie::dynamics::TwistedDerivation(
        t->t, x->m, homlie::Cplx(prefactor_re, prefactor_im))};
    return HOMLIE_OK;
  });
}

void homlie_derivation_destroy(homlie_derivation* d) { delete d; }

int homlie_derivation_dim(const homlie_derivation* d) {
  return d ? static_cast<int>(d->d.dim()) : 0;
}

homlie_status homlie_derivation_apply(const homlie_derivation* d, const homlie_matrix* a,
                                      homlie_matrix** out) {
  return guarded([&]() -> homlie_status {
    if (!d || !a || !out) throw homlie::ConfigError("null argument");
    *out = new homlie_matrix{d->d.apply(a->m)};
    return HOMLIE_OK;
  });
}

homlie_status homlie_flow(const homlie_derivation* d, double t, const homlie_matrix* a,
                          homlie_matrix** out) {
  return guarded([&]() -> homlie_status {
    if (!d || !a || !out) throw homlie::ConfigError("null argument");
    *out = new homlie_matrix{homlie::dynamics::flow(d->d, t, a->m)};
    return HOMLIE_OK;
  });
}

homlie_status homlie_commutation_defect(const homlie_derivation* d, double* out) {
  return guarded([&]() -> homlie_status {
    if (!d || !out) throw homlie::ConfigError("null argument");
    *out = homlie::dynamics::commutation_defect(d->d);
    return HOMLIE_OK;
  });
}

/* ---- spectra ---- */

homlie_status homlie_exact_modes(const homlie_derivation* d, const homlie_matrix* a,
                                 double tol_re, double tol_cluster, homlie_decomposition** out) {
  return guarded([&]() -> homlie_status {
    if (!d || !a || !out) throw homlie::ConfigError("null argument");
    *out = new homlie_decomposition{
        homlie::bohr::exact_modes(d->d, a->m, tol_re, tol_cluster)};
    return HOMLIE_OK;
  });
}

homlie_status homlie_bohr_coefficient(const homlie_derivation* d, const homlie_matrix* a,
                                      double lambda_re, double lambda_im, double half_width,
                                      int steps, homlie_matrix** out) {
  return guarded([&]() -> homlie_status {
    if (!d || !a || !out) throw homlie::ConfigError("null argument");
    *out = new homlie_matrix{homlie::bohr::bohr_coefficient(
        d->d, a->m, homlie::Cplx(lambda_re, lambda_im), half_width, steps)};
    return HOMLIE_OK;
  });
}

homlie_status homlie_mean_ergodic_projection(const homlie_derivation* d, const homlie_matrix* a,
                                             double half_width, int steps, homlie_matrix** out) {
  return guarded([&]() -> homlie_status {
    if (!d || !a || !out) throw homlie::ConfigError("null argument");
    *out = new homlie_matrix{
        homlie::bohr::mean_ergodic_projection(d->d, a->m, half_width, steps)};
    return HOMLIE_OK;
  });
}

void homlie_decomposition_destroy(homlie_decomposition* dec) { delete dec; }

int homlie_decomposition_mode_count(const homlie_decomposition* dec) {
  return dec ? static_cast<int>(dec->d.modes.size()) : 0;
}

homlie_status homlie_decomposition_mode(const homlie_decomposition* dec, int index,
                                        double* lambda_re, double* lambda_im, double* magnitude,
                                        char* tag_buf, size_t tag_buf_len) {
  return guarded([&]() -> homlie_status {
    if (!dec) throw homlie::ConfigError("null argument");
    if (index < 0 || static_cast<std::size_t>(index) >= dec->d.modes.size())
      throw homlie::ConfigError("mode index out of range");
    const auto& m = dec->d.modes[static_cast<std::size_t>(index)];
    if (lambda_re) *lambda_re = m.lambda.real();
    if (lambda_im) *lambda_im = m.lambda.imag();
    if (magnitude) *magnitude = m.magnitude;
    if (tag_buf && tag_buf_len > 0) {
      std::strncpy(tag_buf, homlie::bohr::tag_name(m.tag), tag_buf_len - 1);
      tag_buf[tag_buf_len - 1] = '\0';
    }
    return HOMLIE_OK;
  });
}

homlie_status homlie_decomposition_coefficient(const homlie_decomposition* dec, int index,
                                               homlie_matrix** out) {
  return guarded([&]() -> homlie_status {
    if (!dec || !out) throw homlie::ConfigError("null argument");
    if (index < 0 || static_cast<std::size_t>(index) >= dec->d.modes.size())
      throw homlie::ConfigError("mode index out of range");
    *out = new homlie_matrix{dec->d.modes[static_cast<std::size_t>(index)].coefficient};
    return HOMLIE_OK;
  });
}

homlie_status homlie_decomposition_reconstruction_error(const homlie_decomposition* dec,
                                                        double* out) {
  return guarded([&]() -> homlie_status {
    if (!dec || !out) throw homlie::ConfigError("null argument");
    *out = dec->d.reconstruction_error;
    return HOMLIE_OK;
  });
}

homlie_status homlie_decomposition_abs_sum(const homlie_decomposition* dec, double* out) {
  return guarded([&]() -> homlie_status {
    if (!dec || !out) throw homlie::ConfigError("null argument");
    *out = dec->d.abs_sum;
    return HOMLIE_OK;
  });
}

/* ---- command pipelines ---- */

homlie_identities_opts homlie_identities_opts_default(void) {
  homlie_identities_opts o;
  o.twist = "unitary";
  o.dim = 8;
  o.samples = 100;
  o.tol = 1e-9;
  o.seed = 42;
  o.out_path = "identities.json";
  return o;
}

homlie_status homlie_cmd_check_identities(const homlie_identities_opts* opts) {
  return guarded([&]() -> homlie_status {
    if (!opts) throw homlie::ConfigError("null options");
    homlie::cli::IdentitiesConfig cfg;
    cfg.twist = opts->twist ? opts->twist : "";
    cfg.dim = opts->dim;
    cfg.samples = opts->samples;
    cfg.tol = opts->tol;
    cfg.seed = opts->seed;
    cfg.out = opts->out_path ? opts->out_path : "identities.json";
    return exit_code_to_status(homlie::cli::cmd_check_identities(cfg));
  });
}

homlie_scenario_opts homlie_scenario_opts_default(void) {
  homlie_scenario_opts o;
  o.scenario = "hermitian";
  o.dim = 8;
  o.omega = homlie::cli::kDefaultOmega;
  o.prefactor_one = 0;
  o.prefactor_set = 0;
  o.uhf_m = 2;
  o.uhf_shift_invariant = 1;
  o.theta = homlie::cli::kDefaultOmega;
  o.weight_phases = nullptr;
  o.n_weight_phases = 0;
  o.unitary_x = 0;
  o.n_max = 12;
  o.omega1 = 1.0;
  o.omega2 = 1.4142135623730951;
  o.eps = 0.0;
  return o;
}

homlie_spectrum_opts homlie_spectrum_opts_default(void) {
  homlie_spectrum_opts o;
  o.scenario = homlie_scenario_opts_default();
  o.method = "eig";
  o.half_width = 200.0;
  o.steps = 4001;
  o.tol_re = 1e-8;
  o.tol_cluster = 1e-8;
  o.threshold = 1e-3;
  o.seed = 42;
  o.out_path = "spectrum.json";
  o.dump_coefficients = 0;
  return o;
}

homlie_status homlie_cmd_spectrum(const homlie_spectrum_opts* opts) {
  return guarded([&]() -> homlie_status {
    if (!opts) throw homlie::ConfigError("null options");
    homlie::cli::SpectrumConfig cfg;
    cfg.scenario = scenario_config(opts->scenario);
    cfg.method = opts->method ? opts->method : "eig";
    cfg.half_width = opts->half_width;
    cfg.steps = opts->steps;
    cfg.tol_re = opts->tol_re;
    cfg.tol_cluster = opts->tol_cluster;
    cfg.threshold = opts->threshold;
    cfg.seed = opts->seed;
    cfg.out = opts->out_path ? opts->out_path : "spectrum.json";
    cfg.dump_coefficients = opts->dump_coefficients != 0;
    return exit_code_to_status(homlie::cli::cmd_spectrum(cfg));
  });
}

homlie_decompose_opts homlie_decompose_opts_default(void) {
  homlie_decompose_opts o;
  o.scenario = homlie_scenario_opts_default();
  o.grid_min = 0.0;
  o.grid_max = 0.0;
  o.grid_step = 0.0;
  o.half_width = 200.0;
  o.steps = 4001;
  o.threshold = 1e-3;
  o.tol_re = 1e-8;
  o.tol_cluster = 1e-8;
  o.seed = 42;
  o.out_path = "decompose.json";
  return o;
}

homlie_status homlie_cmd_decompose(const homlie_decompose_opts* opts) {
  return guarded([&]() -> homlie_status {
    if (!opts) throw homlie::ConfigError("null options");
    homlie::cli::DecomposeConfig cfg;
    cfg.scenario = scenario_config(opts->scenario);
    cfg.grid_min = opts->grid_min;
    cfg.grid_max = opts->grid_max;
    cfg.grid_step = opts->grid_step;
    cfg.half_width = opts->half_width;
    cfg.steps = opts->steps;
    cfg.threshold = opts->threshold;
    cfg.tol_re = opts->tol_re;
    cfg.tol_cluster = opts->tol_cluster;
    cfg.seed = opts->seed;
    cfg.out = opts->out_path ? opts->out_path : "decompose.json";
    return exit_code_to_status(homlie::cli::cmd_decompose(cfg));
  });
}

homlie_sec8_opts homlie_sec8_opts_default(void) {
  homlie_sec8_opts o;
  o.dims = nullptr;
  o.n_dims = 0;
  o.omega = homlie::cli::kDefaultOmega;
  o.threshold = 1e-3;
  o.top_k = 4;
  o.signal_steps = 401;
  o.seed = 42;
  o.out_dir = "sec8_report";
  return o;
}

homlie_status homlie_cmd_reproduce_sec8(const homlie_sec8_opts* opts) {
  return guarded([&]() -> homlie_status {
    if (!opts) throw homlie::ConfigError("null options");
    homlie::cli::Sec8Config cfg;
    // null dims: keep the built-in default {8, 16, 32, 64}
    if (opts->dims) cfg.dims.assign(opts->dims, opts->dims + std::max(opts->n_dims, 0));
    cfg.omega = opts->omega;
    cfg.threshold = opts->threshold;
    cfg.top_k = opts->top_k;
    cfg.signal_steps = opts->signal_steps;
    cfg.seed = opts->seed;
    cfg.out_dir = opts->out_dir ? opts->out_dir : "sec8_report";
    return exit_code_to_status(homlie::cli::cmd_reproduce_sec8(cfg));
  });
}

homlie_scaling_opts homlie_scaling_opts_default(void) {
  homlie_scaling_opts o;
  o.dims = nullptr;
  o.n_dims = 0;
  o.omega = homlie::cli::kDefaultOmega;
  o.threshold = 1e-3;
  o.top_k = 4;
  o.seed = 42;
  o.out_path = "scaling.csv";
  return o;
}

homlie_status homlie_cmd_scaling(const homlie_scaling_opts* opts) {
  return guarded([&]() -> homlie_status {
    if (!opts) throw homlie::ConfigError("null options");
    homlie::cli::ScalingConfig cfg;
    if (opts->dims) cfg.dims.assign(opts->dims, opts->dims + std::max(opts->n_dims, 0));
    cfg.omega = opts->omega;
    cfg.threshold = opts->threshold;
    cfg.top_k = opts->top_k;
    cfg.seed = opts->seed;
    cfg.out = opts->out_path ? opts->out_path : "scaling.csv";
    return exit_code_to_status(homlie::cli::cmd_scaling(cfg));
  });
}

homlie_weyl_opts homlie_weyl_opts_default(void) {
  homlie_weyl_opts o;
  o.n_max = 12;
  o.omega1 = 1.0;
  o.omega2 = 1.4142135623730951;
  o.eps = nullptr;
  o.n_eps = 0;
  o.cluster_tol = 1e-6;
  o.seed = 42;
  o.out_path = "weyl.json";
  return o;
}

homlie_status homlie_cmd_weyl(const homlie_weyl_opts* opts) {
  return guarded([&]() -> homlie_status {
    if (!opts) throw homlie::ConfigError("null options");
    homlie::cli::WeylConfig cfg;
    cfg.n_max = opts->n_max;
    cfg.omega1 = opts->omega1;
    cfg.omega2 = opts->omega2;
    if (opts->eps) cfg.eps.assign(opts->eps, opts->eps + std::max(opts->n_eps, 0));
    cfg.cluster_tol = opts->cluster_tol;
    cfg.seed = opts->seed;
    cfg.out = opts->out_path ? opts->out_path : "weyl.json";
    return exit_code_to_status(homlie::cli::cmd_weyl(cfg));
  });
}

}  // extern "C"
