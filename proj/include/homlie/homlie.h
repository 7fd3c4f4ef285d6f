/* homlie: twisted brackets, inner twisted derivations and Bohr-Fourier
 * spectral decomposition on dense complex matrix algebras.
 *
 * C interface of the shared library.  All objects are opaque handles owned
 * by the caller (destroy with the matching *_destroy).  Functions return
 * homlie_status; on failure homlie_last_error() carries a message for the
 * current thread.  Matrices are square, entries passed as column-major
 * interleaved (re, im) doubles of length 2*dim*dim.
 */
#ifndef HOMLIE_H
#define HOMLIE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum homlie_status {
  HOMLIE_OK = 0,
  HOMLIE_IDENTITY_FAILURE = 1, /* an identity suite reported a violation */
  HOMLIE_BAD_CONFIG = 2,       /* invalid arguments or configuration */
  HOMLIE_OVERFLOW = 3,         /* state or exponent out of range */
  HOMLIE_NUMERIC_ERROR = 4     /* solver breakdown (non-convergence, defective spectrum) */
} homlie_status;

const char* homlie_version(void);
/* Message for the last failing call on this thread; empty string if none. */
const char* homlie_last_error(void);

typedef struct homlie_matrix homlie_matrix;
typedef struct homlie_twist homlie_twist;
typedef struct homlie_derivation homlie_derivation;
typedef struct homlie_decomposition homlie_decomposition;

/* ---- matrices ---- */

homlie_matrix* homlie_matrix_create(int dim, const double* interleaved);
homlie_matrix* homlie_matrix_zero(int dim);
homlie_matrix* homlie_matrix_identity(int dim);
homlie_matrix* homlie_matrix_cyclic_shift(int dim);
void homlie_matrix_destroy(homlie_matrix* m);
int homlie_matrix_dim(const homlie_matrix* m);
homlie_status homlie_matrix_get(const homlie_matrix* m, int row, int col, double* re, double* im);
homlie_status homlie_matrix_set(homlie_matrix* m, int row, int col, double re, double im);
homlie_status homlie_matrix_op_norm(const homlie_matrix* m, double* out);

/* ---- twisting maps ---- */

homlie_twist* homlie_twist_identity(int dim);
homlie_twist* homlie_twist_unitary(const homlie_matrix* u);
homlie_twist* homlie_twist_trace_shift(int dim);
homlie_twist* homlie_twist_transpose(int dim);
void homlie_twist_destroy(homlie_twist* t);
homlie_status homlie_twist_apply(const homlie_twist* t, const homlie_matrix* a,
                                 homlie_matrix** out);

/* ---- brackets and identity defects ---- */

homlie_status homlie_commutator(const homlie_matrix* a, const homlie_matrix* b,
                                homlie_matrix** out);
homlie_status homlie_twisted_bracket(const homlie_twist* t, const homlie_matrix* a,
                                     const homlie_matrix* b, homlie_matrix** out);
homlie_status homlie_hom_jacobi_defect(const homlie_twist* t, const homlie_matrix* x,
                                       const homlie_matrix* y, const homlie_matrix* z,
                                       double* out);
homlie_status homlie_hom_malcev_defect(const homlie_twist* t, const homlie_matrix* x,
                                       const homlie_matrix* y, const homlie_matrix* z,
                                       double* out);
homlie_status homlie_phi_failure(const homlie_twist* t, const homlie_matrix* x,
                                 const homlie_matrix* y, homlie_matrix** out);
homlie_status homlie_cyclic_phi_defect(const homlie_twist* t, const homlie_matrix* x,
                                       const homlie_matrix* y, const homlie_matrix* z,
                                       double* out);

/* ---- twisted derivations and the exponential flow ---- */

homlie_status homlie_derivation_build(const homlie_twist* t, const homlie_matrix* x,
                                      double prefactor_re, double prefactor_im,
                                      homlie_derivation** out);
void homlie_derivation_destroy(homlie_derivation* d);
int homlie_derivation_dim(const homlie_derivation* d);
homlie_status homlie_derivation_apply(const homlie_derivation* d, const homlie_matrix* a,
                                      homlie_matrix** out);
homlie_status homlie_flow(const homlie_derivation* d, double t, const homlie_matrix* a,
                          homlie_matrix** out);
homlie_status homlie_commutation_defect(const homlie_derivation* d, double* out);

/* ---- spectral decomposition ---- */

homlie_status homlie_exact_modes(const homlie_derivation* d, const homlie_matrix* a,
                                 double tol_re, double tol_cluster, homlie_decomposition** out);
homlie_status homlie_bohr_coefficient(const homlie_derivation* d, const homlie_matrix* a,
                                      double lambda_re, double lambda_im, double half_width,
                                      int steps, homlie_matrix** out);
homlie_status homlie_mean_ergodic_projection(const homlie_derivation* d, const homlie_matrix* a,
                                             double half_width, int steps, homlie_matrix** out);
void homlie_decomposition_destroy(homlie_decomposition* dec);
int homlie_decomposition_mode_count(const homlie_decomposition* dec);
/* tag_buf, if non-null, receives one of: zero imaginary decaying growing */
homlie_status homlie_decomposition_mode(const homlie_decomposition* dec, int index,
                                        double* lambda_re, double* lambda_im, double* magnitude,
                                        char* tag_buf, size_t tag_buf_len);
homlie_status homlie_decomposition_coefficient(const homlie_decomposition* dec, int index,
                                               homlie_matrix** out);
homlie_status homlie_decomposition_reconstruction_error(const homlie_decomposition* dec,
                                                        double* out);
homlie_status homlie_decomposition_abs_sum(const homlie_decomposition* dec, double* out);

/* ---- command pipelines (the CLI surface) ----
 * Each runner writes its report files and maps the pipeline exit code onto
 * homlie_status (0 ok, 1 identity failure, 2 config, 3 numerical).
 */

typedef struct homlie_identities_opts {
  const char* twist; /* identity | unitary | trace-shift | transpose */
  int dim;
  int samples;
  double tol;
  uint64_t seed;
  const char* out_path;
} homlie_identities_opts;
homlie_identities_opts homlie_identities_opts_default(void);
homlie_status homlie_cmd_check_identities(const homlie_identities_opts* opts);

typedef struct homlie_scenario_opts {
  const char* scenario; /* hermitian | sec8 | uhf | weighted | weyl */
  int dim;
  double omega;
  int prefactor_one; /* used only when prefactor_set */
  int prefactor_set;
  int uhf_m;
  int uhf_shift_invariant;
  double theta;
  const double* weight_phases;
  int n_weight_phases;
  int unitary_x;
  int n_max;
  double omega1;
  double omega2;
  double eps;
} homlie_scenario_opts;
homlie_scenario_opts homlie_scenario_opts_default(void);

typedef struct homlie_spectrum_opts {
  homlie_scenario_opts scenario;
  const char* method; /* eig | average */
  double half_width;
  int steps;
  double tol_re;
  double tol_cluster;
  double threshold;
  uint64_t seed;
  const char* out_path;
  int dump_coefficients;
} homlie_spectrum_opts;
homlie_spectrum_opts homlie_spectrum_opts_default(void);
homlie_status homlie_cmd_spectrum(const homlie_spectrum_opts* opts);

typedef struct homlie_decompose_opts {
  homlie_scenario_opts scenario;
  double grid_min;
  double grid_max;
  double grid_step; /* <= 0: derived from the eigen oracle */
  double half_width;
  int steps;
  double threshold;
  double tol_re;
  double tol_cluster;
  uint64_t seed;
  const char* out_path;
} homlie_decompose_opts;
homlie_decompose_opts homlie_decompose_opts_default(void);
homlie_status homlie_cmd_decompose(const homlie_decompose_opts* opts);

typedef struct homlie_sec8_opts {
  const int* dims;
  int n_dims;
  double omega;
  double threshold;
  int top_k;
  int signal_steps;
  uint64_t seed;
  const char* out_dir;
} homlie_sec8_opts;
homlie_sec8_opts homlie_sec8_opts_default(void);
homlie_status homlie_cmd_reproduce_sec8(const homlie_sec8_opts* opts);

typedef struct homlie_scaling_opts {
  const int* dims;
  int n_dims;
  double omega;
  double threshold;
  int top_k;
  uint64_t seed;
  const char* out_path;
} homlie_scaling_opts;
homlie_scaling_opts homlie_scaling_opts_default(void);
homlie_status homlie_cmd_scaling(const homlie_scaling_opts* opts);

typedef struct homlie_weyl_opts {
  int n_max;
  double omega1;
  double omega2;
  const double* eps;
  int n_eps;
  double cluster_tol;
  uint64_t seed;
  const char* out_path;
} homlie_weyl_opts;
homlie_weyl_opts homlie_weyl_opts_default(void);
homlie_status homlie_cmd_weyl(const homlie_weyl_opts* opts);

#ifdef __cplusplus
}
#endif

#endif /* HOMLIE_H */
