// Exercises the shared-library C surface only (no internal headers).
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "homlie/homlie.h"

namespace {

std::string scratch(const char* name) {
  const auto dir = std::filesystem::temp_directory_path() / "homlie_capi_tests";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

homlie_matrix* pauli(char which) {
  // column-major interleaved (re, im)
  double sx[8] = {0, 0, 1, 0, 1, 0, 0, 0};
  double sy[8] = {0, 0, 0, 1, 0, -1, 0, 0};
  double sz[8] = {1, 0, 0, 0, 0, 0, -1, 0};
  switch (which) {
    case 'x': return homlie_matrix_create(2, sx);
    case 'y': return homlie_matrix_create(2, sy);
    default: return homlie_matrix_create(2, sz);
  }
}

std::complex<double> entry(const homlie_matrix* m, int r, int c) {
  double re = 0, im = 0;
  REQUIRE(homlie_matrix_get(m, r, c, &re, &im) == HOMLIE_OK);
  return {re, im};
}

}  // namespace

extern "C" int homlie_header_smoke(void);

TEST_CASE("version and error reporting") {
  CHECK(std::string(homlie_version()).rfind("homlie", 0) == 0);
  CHECK(homlie_header_smoke() == 0);
  CHECK(homlie_matrix_create(0, nullptr) == nullptr);
  CHECK(std::string(homlie_last_error()).size() > 0);
}

TEST_CASE("matrix handles: create, read, norm") {
  homlie_matrix* sy = pauli('y');
  REQUIRE(sy != nullptr);
  CHECK(homlie_matrix_dim(sy) == 2);
  CHECK(entry(sy, 0, 1) == std::complex<double>(0.0, -1.0));
  CHECK(entry(sy, 1, 0) == std::complex<double>(0.0, 1.0));
  double norm = 0;
  REQUIRE(homlie_matrix_op_norm(sy, &norm) == HOMLIE_OK);
  CHECK(norm == doctest::Approx(1.0));
  CHECK(homlie_matrix_get(sy, 5, 0, &norm, &norm) == HOMLIE_BAD_CONFIG);
  homlie_matrix_destroy(sy);

  homlie_matrix* s = homlie_matrix_cyclic_shift(4);
  CHECK(entry(s, 0, 1) == std::complex<double>(1.0, 0.0));
  CHECK(entry(s, 3, 0) == std::complex<double>(1.0, 0.0));
  homlie_matrix_destroy(s);
}

TEST_CASE("twisted bracket through the C surface reproduces the pauli oracle") {
  homlie_matrix* sx = pauli('x');
  homlie_matrix* sy = pauli('y');
  homlie_twist* id = homlie_twist_identity(2);
  homlie_matrix* bracket = nullptr;
  REQUIRE(homlie_twisted_bracket(id, sx, sy, &bracket) == HOMLIE_OK);
  // [sx, sy] = 2 i sz
  CHECK(entry(bracket, 0, 0) == std::complex<double>(0.0, 2.0));
  CHECK(entry(bracket, 1, 1) == std::complex<double>(0.0, -2.0));

  // transpose twist phi failure on (sx, sy) is 4 i sz
  homlie_twist* tp = homlie_twist_transpose(2);
  homlie_matrix* phi = nullptr;
  REQUIRE(homlie_phi_failure(tp, sx, sy, &phi) == HOMLIE_OK);
  CHECK(entry(phi, 0, 0) == std::complex<double>(0.0, 4.0));

  double defect = -1.0;
  REQUIRE(homlie_hom_jacobi_defect(id, sx, sy, bracket, &defect) == HOMLIE_OK);
  CHECK(defect <= 1e-12);
  REQUIRE(homlie_cyclic_phi_defect(tp, sx, sy, bracket, &defect) == HOMLIE_OK);
  CHECK(defect <= 1e-12);
  REQUIRE(homlie_hom_malcev_defect(tp, sx, sy, bracket, &defect) == HOMLIE_OK);
  CHECK(defect <= 1e-10);

  homlie_matrix_destroy(phi);
  homlie_matrix_destroy(bracket);
  homlie_twist_destroy(tp);
  homlie_twist_destroy(id);
  homlie_matrix_destroy(sy);
  homlie_matrix_destroy(sx);
}

TEST_CASE("dimension mismatches surface as BAD_CONFIG with a message") {
  homlie_twist* id3 = homlie_twist_identity(3);
  homlie_matrix* a2 = homlie_matrix_identity(2);
  homlie_matrix* out = nullptr;
  CHECK(homlie_twist_apply(id3, a2, &out) == HOMLIE_BAD_CONFIG);
  CHECK(std::strlen(homlie_last_error()) > 0);
  homlie_matrix_destroy(a2);
  homlie_twist_destroy(id3);
}

TEST_CASE("non-unitary conjugators are rejected") {
  double bad[8] = {2, 0, 0, 0, 0, 0, 1, 0};
  homlie_matrix* m = homlie_matrix_create(2, bad);
  CHECK(homlie_twist_unitary(m) == nullptr);
  CHECK(std::string(homlie_last_error()).find("unitary") != std::string::npos);
  homlie_matrix_destroy(m);
}

TEST_CASE("derivation, flow and exact modes through the C surface") {
  // X = diag(0, w), prefactor i: E_01 evolves as e^{-i w t}
  const double w = 0.9;
  homlie_matrix* x = homlie_matrix_zero(2);
  REQUIRE(homlie_matrix_set(x, 1, 1, w, 0.0) == HOMLIE_OK);
  homlie_twist* id = homlie_twist_identity(2);
  homlie_derivation* d = nullptr;
  REQUIRE(homlie_derivation_build(id, x, 0.0, 1.0, &d) == HOMLIE_OK);
  CHECK(homlie_derivation_dim(d) == 2);

  double defect = -1.0;
  REQUIRE(homlie_commutation_defect(d, &defect) == HOMLIE_OK);
  CHECK(defect <= 1e-14);

  homlie_matrix* e01 = homlie_matrix_zero(2);
  REQUIRE(homlie_matrix_set(e01, 0, 1, 1.0, 0.0) == HOMLIE_OK);

  homlie_matrix* moved = nullptr;
  const double t = 1.7;
  REQUIRE(homlie_flow(d, t, e01, &moved) == HOMLIE_OK);
  const std::complex<double> expect = std::exp(std::complex<double>(0.0, -w * t));
  CHECK(std::abs(entry(moved, 0, 1) - expect) <= 1e-12);

  homlie_decomposition* dec = nullptr;
  REQUIRE(homlie_exact_modes(d, e01, 1e-8, 1e-8, &dec) == HOMLIE_OK);
  REQUIRE(homlie_decomposition_mode_count(dec) == 1);
  double lre = 0, lim = 0, mag = 0;
  char tag[16];
  REQUIRE(homlie_decomposition_mode(dec, 0, &lre, &lim, &mag, tag, sizeof tag) == HOMLIE_OK);
  CHECK(lre == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(lim == doctest::Approx(-w));
  CHECK(mag == doctest::Approx(1.0));
  CHECK(std::string(tag) == "imaginary");

  double recon = -1.0, abs_sum = -1.0;
  REQUIRE(homlie_decomposition_reconstruction_error(dec, &recon) == HOMLIE_OK);
  REQUIRE(homlie_decomposition_abs_sum(dec, &abs_sum) == HOMLIE_OK);
  CHECK(recon <= 1e-12);
  CHECK(abs_sum == doctest::Approx(1.0));

  homlie_matrix* coeff = nullptr;
  REQUIRE(homlie_decomposition_coefficient(dec, 0, &coeff) == HOMLIE_OK);
  CHECK(std::abs(entry(coeff, 0, 1) - std::complex<double>(1.0, 0.0)) <= 1e-14);
  CHECK(homlie_decomposition_coefficient(dec, 5, &coeff) == HOMLIE_BAD_CONFIG);

  // the averaged coefficient at the detected frequency matches
  homlie_matrix* avg = nullptr;
  REQUIRE(homlie_bohr_coefficient(d, e01, 0.0, -w, 50.0, 1001, &avg) == HOMLIE_OK);
  CHECK(std::abs(entry(avg, 0, 1) - std::complex<double>(1.0, 0.0)) <= 1e-8);
  homlie_matrix* mean = nullptr;
  REQUIRE(homlie_mean_ergodic_projection(d, e01, 50.0, 1001, &mean) == HOMLIE_OK);
  double mean_norm = 0;
  REQUIRE(homlie_matrix_op_norm(mean, &mean_norm) == HOMLIE_OK);
  CHECK(mean_norm <= 2.0 / (w * 50.0));

  homlie_matrix_destroy(mean);
  homlie_matrix_destroy(avg);
  homlie_matrix_destroy(coeff);
  homlie_decomposition_destroy(dec);
  homlie_matrix_destroy(moved);
  homlie_matrix_destroy(e01);
  homlie_derivation_destroy(d);
  homlie_twist_destroy(id);
  homlie_matrix_destroy(x);
}

TEST_CASE("overflow surfaces as HOMLIE_OVERFLOW") {
  homlie_matrix* x = homlie_matrix_zero(2);
  REQUIRE(homlie_matrix_set(x, 1, 1, 50.0, 0.0) == HOMLIE_OK);
  homlie_twist* id = homlie_twist_identity(2);
  homlie_derivation* d = nullptr;
  REQUIRE(homlie_derivation_build(id, x, 1.0, 0.0, &d) == HOMLIE_OK);
  homlie_matrix* e01 = homlie_matrix_zero(2);
  REQUIRE(homlie_matrix_set(e01, 0, 1, 1.0, 0.0) == HOMLIE_OK);
  homlie_matrix* out = nullptr;
  CHECK(homlie_flow(d, -2.0, e01, &out) == HOMLIE_OVERFLOW);
  homlie_matrix_destroy(e01);
  homlie_derivation_destroy(d);
  homlie_twist_destroy(id);
  homlie_matrix_destroy(x);
}

TEST_CASE("command runners map pipeline exit codes onto statuses") {
  SUBCASE("identity suite passes for a unitary twist") {
    homlie_identities_opts o = homlie_identities_opts_default();
    const std::string out = scratch("cap_id.json");
    o.out_path = out.c_str();
    o.samples = 25;
    CHECK(homlie_cmd_check_identities(&o) == HOMLIE_OK);
    CHECK(std::filesystem::exists(out));
  }
  SUBCASE("transpose twist reports an identity failure") {
    homlie_identities_opts o = homlie_identities_opts_default();
    o.twist = "transpose";
    o.dim = 4;
    o.samples = 10;
    const std::string out = scratch("cap_id_tp.json");
    o.out_path = out.c_str();
    CHECK(homlie_cmd_check_identities(&o) == HOMLIE_IDENTITY_FAILURE);
  }
  SUBCASE("bad configuration") {
    homlie_identities_opts o = homlie_identities_opts_default();
    o.dim = 0;
    CHECK(homlie_cmd_check_identities(&o) == HOMLIE_BAD_CONFIG);
    CHECK(homlie_cmd_check_identities(nullptr) == HOMLIE_BAD_CONFIG);
  }
  SUBCASE("weyl comparison across eps") {
    homlie_weyl_opts o = homlie_weyl_opts_default();
    const double eps[2] = {0.0, 0.3};
    o.eps = eps;
    o.n_eps = 2;
    o.n_max = 8;
    const std::string out = scratch("cap_weyl.json");
    o.out_path = out.c_str();
    CHECK(homlie_cmd_weyl(&o) == HOMLIE_OK);
  }
  SUBCASE("scaling study writes csv and summary") {
    homlie_scaling_opts o = homlie_scaling_opts_default();
    const int dims[2] = {4, 8};
    o.dims = dims;
    o.n_dims = 2;
    const std::string out = scratch("cap_scaling.csv");
    o.out_path = out.c_str();
    CHECK(homlie_cmd_scaling(&o) == HOMLIE_OK);
    std::ifstream csv(out);
    std::string header;
    std::getline(csv, header);
    CHECK(header == "N,mode_count,max_err,seed");
  }
}
