// Command-line front end over the homlie C API.
//
// Exit codes: 0 pass, 1 identity failure, 2 configuration error,
// 3 numerical failure.  HOMLIE_SEED, when set, overrides --seed.

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "homlie/homlie.h"

namespace {

int status_to_exit(homlie_status s) {
  switch (s) {
    case HOMLIE_OK: return 0;
    case HOMLIE_IDENTITY_FAILURE: return 1;
    case HOMLIE_BAD_CONFIG: return 2;
    default: return 3;
  }
}

int finish(homlie_status s) {
  if (s != HOMLIE_OK) {
    const char* msg = homlie_last_error();
    if (msg && *msg) std::cerr << "homlie: " << msg << "\n";
  }
  return status_to_exit(s);
}

bool env_seed(std::uint64_t& seed) {
  const char* raw = std::getenv("HOMLIE_SEED");
  if (!raw || !*raw) return false;
  try {
    seed = std::stoull(raw);
    return true;
  } catch (const std::exception&) {
    std::cerr << "homlie: invalid HOMLIE_SEED value '" << raw << "'\n";
    std::exit(2);
  }
}

struct ScenarioFlags {
  std::string scenario = "hermitian";
  int dim = 8;
  double omega = 0.14142135623730951;
  std::string prefactor;  // "", "i", "1"
  int uhf_m = 2;
  bool uhf_movable = false;  // --uhf-movable: X supported on one factor
  double theta = 0.14142135623730951;
  std::vector<double> weight_phases;
  bool unitary_x = false;
  int n_max = 12;
  double omega1 = 1.0;
  double omega2 = 1.4142135623730951;
  double eps = 0.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--scenario", scenario, "hermitian | sec8 | uhf | weighted | weyl")
        ->capture_default_str();
    cmd->add_option("--dim", dim, "matrix dimension N")->capture_default_str();
    cmd->add_option("--omega", omega, "base frequency")->capture_default_str();
    cmd->add_option("--prefactor", prefactor, "derivation prefactor: i or 1")
        ->check(CLI::IsMember({"i", "1"}));
    cmd->add_option("--uhf-m", uhf_m, "uhf: tensor length m")->capture_default_str();
    cmd->add_flag("--uhf-movable", uhf_movable,
                  "uhf: X supported on one factor (breaks shift invariance)");
    cmd->add_option("--theta", theta, "weighted: diagonal slope")->capture_default_str();
    cmd->add_option("--weight-phases", weight_phases,
                    "weighted: phases of the unimodular weights")
        ->delimiter(',');
    cmd->add_flag("--unitary-x", unitary_x, "weighted: use X = diag(e^{i theta k})");
    cmd->add_option("--nmax", n_max, "weyl: Fock truncation")->capture_default_str();
    cmd->add_option("--omega1", omega1, "weyl: momentum frequency")->capture_default_str();
    cmd->add_option("--omega2", omega2, "weyl: position frequency")->capture_default_str();
    cmd->add_option("--eps", eps, "weyl: shear strength")->capture_default_str();
  }

  homlie_scenario_opts to_opts() const {
    homlie_scenario_opts o = homlie_scenario_opts_default();
    o.scenario = scenario.c_str();
    o.dim = dim;
    o.omega = omega;
    o.prefactor_set = prefactor.empty() ? 0 : 1;
    o.prefactor_one = prefactor == "1" ? 1 : 0;
    o.uhf_m = uhf_m;
    o.uhf_shift_invariant = uhf_movable ? 0 : 1;
    o.theta = theta;
    o.weight_phases = weight_phases.empty() ? nullptr : weight_phases.data();
    o.n_weight_phases = static_cast<int>(weight_phases.size());
    o.unitary_x = unitary_x ? 1 : 0;
    o.n_max = n_max;
    o.omega1 = omega1;
    o.omega2 = omega2;
    o.eps = eps;
    return o;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"homlie: twisted-derivation spectral toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", homlie_version());

  // check-identities
  auto* ci = app.add_subcommand("check-identities", "run the algebraic identity suite");
  std::string ci_twist = "unitary";
  int ci_dim = 8, ci_samples = 100;
  double ci_tol = 1e-9;
  std::uint64_t ci_seed = 42;
  std::string ci_out = "identities.json";
  ci->add_option("--twist", ci_twist, "identity | unitary | trace-shift | transpose")
      ->capture_default_str();
  ci->add_option("--dim", ci_dim)->capture_default_str();
  ci->add_option("--samples", ci_samples)->capture_default_str();
  ci->add_option("--tol", ci_tol)->capture_default_str();
  ci->add_option("--seed", ci_seed)->capture_default_str();
  ci->add_option("--out", ci_out)->capture_default_str();

  // spectrum
  auto* sp = app.add_subcommand("spectrum", "exact or averaged spectral decomposition");
  ScenarioFlags sp_sc;
  sp_sc.attach(sp);
  std::string sp_method = "eig";
  double sp_R = 200.0;
  int sp_steps = 4001;
  double sp_tol = 1e-8, sp_cluster = 1e-8, sp_threshold = 1e-3;
  std::uint64_t sp_seed = 42;
  std::string sp_out = "spectrum.json";
  bool sp_dump = false;
  sp->add_option("--method", sp_method, "eig | average")->check(CLI::IsMember({"eig", "average"}));
  sp->add_option("--R", sp_R, "averaging half-width")->capture_default_str();
  sp->add_option("--steps", sp_steps, "quadrature points")->capture_default_str();
  sp->add_option("--tol", sp_tol, "imaginary-classification tolerance")->capture_default_str();
  sp->add_option("--cluster-tol", sp_cluster)->capture_default_str();
  sp->add_option("--threshold", sp_threshold, "detection threshold (average method)")
      ->capture_default_str();
  sp->add_option("--seed", sp_seed)->capture_default_str();
  sp->add_option("--out", sp_out)->capture_default_str();
  sp->add_flag("--dump-coefficients", sp_dump, "write per-mode coefficient CSV sidecars");

  // decompose
  auto* de = app.add_subcommand("decompose", "detect frequencies, then average-decompose");
  ScenarioFlags de_sc;
  de_sc.attach(de);
  double de_gmin = 0.0, de_gmax = 0.0, de_gstep = 0.0;
  double de_R = 200.0;
  int de_steps = 4001;
  double de_threshold = 1e-3, de_tol = 1e-8, de_cluster = 1e-8;
  std::uint64_t de_seed = 42;
  std::string de_out = "decompose.json";
  de->add_option("--grid-min", de_gmin)->capture_default_str();
  de->add_option("--grid-max", de_gmax)->capture_default_str();
  de->add_option("--grid-step", de_gstep, "0 derives the grid from the eigen oracle")
      ->capture_default_str();
  de->add_option("--R", de_R)->capture_default_str();
  de->add_option("--steps", de_steps)->capture_default_str();
  de->add_option("--threshold", de_threshold)->capture_default_str();
  de->add_option("--tol", de_tol)->capture_default_str();
  de->add_option("--cluster-tol", de_cluster)->capture_default_str();
  de->add_option("--seed", de_seed)->capture_default_str();
  de->add_option("--out", de_out)->capture_default_str();

  // reproduce-sec8
  auto* rs = app.add_subcommand("reproduce-sec8",
                                "emit the numerical-illustration artifact set per dimension");
  std::vector<int> rs_dims = {8, 16, 32, 64};
  double rs_omega = 0.14142135623730951, rs_threshold = 1e-3;
  int rs_topk = 4, rs_signal_steps = 401;
  std::uint64_t rs_seed = 42;
  std::string rs_out = "sec8_report";
  rs->add_option("--dims", rs_dims, "dimensions, ascending")->delimiter(',');
  rs->add_option("--omega", rs_omega)->capture_default_str();
  rs->add_option("--threshold", rs_threshold)->capture_default_str();
  rs->add_option("--K", rs_topk, "modes kept in the truncated reconstruction")
      ->capture_default_str();
  rs->add_option("--signal-steps", rs_signal_steps)->capture_default_str();
  rs->add_option("--seed", rs_seed)->capture_default_str();
  rs->add_option("--out", rs_out, "output directory")->capture_default_str();

  // scaling
  auto* sc = app.add_subcommand("scaling", "mode count and truncation error over sizes");
  std::vector<int> sc_dims = {8, 16, 32, 64};
  double sc_omega = 0.14142135623730951, sc_threshold = 1e-3;
  int sc_topk = 4;
  std::uint64_t sc_seed = 42;
  std::string sc_out = "scaling.csv";
  sc->add_option("--dims", sc_dims)->delimiter(',');
  sc->add_option("--omega", sc_omega)->capture_default_str();
  sc->add_option("--threshold", sc_threshold)->capture_default_str();
  sc->add_option("--K", sc_topk)->capture_default_str();
  sc->add_option("--seed", sc_seed)->capture_default_str();
  sc->add_option("--out", sc_out)->capture_default_str();

  // weyl
  auto* wy = app.add_subcommand("weyl", "shear-twisted oscillator spectra across eps");
  int wy_nmax = 12;
  double wy_o1 = 1.0, wy_o2 = 1.4142135623730951, wy_cluster = 1e-6;
  std::vector<double> wy_eps = {0.0, 0.3};
  std::uint64_t wy_seed = 42;
  std::string wy_out = "weyl.json";
  wy->add_option("--nmax", wy_nmax)->capture_default_str();
  wy->add_option("--omega1", wy_o1)->capture_default_str();
  wy->add_option("--omega2", wy_o2)->capture_default_str();
  wy->add_option("--eps", wy_eps, "shear strengths")->delimiter(',');
  wy->add_option("--cluster-tol", wy_cluster)->capture_default_str();
  wy->add_option("--seed", wy_seed)->capture_default_str();
  wy->add_option("--out", wy_out)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (ci->parsed()) {
    env_seed(ci_seed);
    homlie_identities_opts o = homlie_identities_opts_default();
    o.twist = ci_twist.c_str();
    o.dim = ci_dim;
    o.samples = ci_samples;
    o.tol = ci_tol;
    o.seed = ci_seed;
    o.out_path = ci_out.c_str();
    return finish(homlie_cmd_check_identities(&o));
  }
  if (sp->parsed()) {
    env_seed(sp_seed);
    homlie_spectrum_opts o = homlie_spectrum_opts_default();
    o.scenario = sp_sc.to_opts();
    o.method = sp_method.c_str();
    o.half_width = sp_R;
    o.steps = sp_steps;
    o.tol_re = sp_tol;
    o.tol_cluster = sp_cluster;
    o.threshold = sp_threshold;
    o.seed = sp_seed;
    o.out_path = sp_out.c_str();
    o.dump_coefficients = sp_dump ? 1 : 0;
    return finish(homlie_cmd_spectrum(&o));
  }
  if (de->parsed()) {
    env_seed(de_seed);
    homlie_decompose_opts o = homlie_decompose_opts_default();
    o.scenario = de_sc.to_opts();
    o.grid_min = de_gmin;
    o.grid_max = de_gmax;
    o.grid_step = de_gstep;
    o.half_width = de_R;
    o.steps = de_steps;
    o.threshold = de_threshold;
    o.tol_re = de_tol;
    o.tol_cluster = de_cluster;
    o.seed = de_seed;
    o.out_path = de_out.c_str();
    return finish(homlie_cmd_decompose(&o));
  }
  if (rs->parsed()) {
    env_seed(rs_seed);
    if (rs_dims.empty()) {
      std::cerr << "homlie: reproduce-sec8 needs a nonempty --dims list\n";
      return 2;
    }
    homlie_sec8_opts o = homlie_sec8_opts_default();
    o.dims = rs_dims.data();
    o.n_dims = static_cast<int>(rs_dims.size());
    o.omega = rs_omega;
    o.threshold = rs_threshold;
    o.top_k = rs_topk;
    o.signal_steps = rs_signal_steps;
    o.seed = rs_seed;
    o.out_dir = rs_out.c_str();
    return finish(homlie_cmd_reproduce_sec8(&o));
  }
  if (sc->parsed()) {
    env_seed(sc_seed);
    if (sc_dims.empty()) {
      std::cerr << "homlie: scaling needs a nonempty --dims list\n";
      return 2;
    }
    homlie_scaling_opts o = homlie_scaling_opts_default();
    o.dims = sc_dims.data();
    o.n_dims = static_cast<int>(sc_dims.size());
    o.omega = sc_omega;
    o.threshold = sc_threshold;
    o.top_k = sc_topk;
    o.seed = sc_seed;
    o.out_path = sc_out.c_str();
    return finish(homlie_cmd_scaling(&o));
  }
  if (wy->parsed()) {
    env_seed(wy_seed);
    if (wy_eps.empty()) {
      std::cerr << "homlie: weyl needs a nonempty --eps list\n";
      return 2;
    }
    homlie_weyl_opts o = homlie_weyl_opts_default();
    o.n_max = wy_nmax;
    o.omega1 = wy_o1;
    o.omega2 = wy_o2;
    o.eps = wy_eps.data();
    o.n_eps = static_cast<int>(wy_eps.size());
    o.cluster_tol = wy_cluster;
    o.seed = wy_seed;
    o.out_path = wy_out.c_str();
    return finish(homlie_cmd_weyl(&o));
  }
  return 2;
}
