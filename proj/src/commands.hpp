#pragma once
// Command pipelines behind the CLI: each takes a config struct, writes its
// report files atomically, and returns the exit code (0 pass, 1 identity
// failure, 2 configuration error, 3 numerical failure).

#include <cstdint>
#include <string>
#include <vector>

#include "report.hpp"
#include "scenarios.hpp"
#include "subspaces.hpp"

namespace homlie::cli {

inline constexpr double kDefaultOmega = 0.14142135623730951;  // sqrt(2)/10

inline constexpr int kExitOk = 0;
inline constexpr int kExitIdentityFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;

struct IdentitiesConfig {
  std::string twist = "unitary";  // identity | unitary | trace-shift | transpose
  int dim = 8;
  int samples = 100;
  double tol = 1e-9;
  std::uint64_t seed = 42;
  std::string out = "identities.json";
};

struct ScenarioConfig {
  std::string scenario = "hermitian";  // hermitian | sec8 | uhf | weighted | weyl
  int dim = 8;
  double omega = kDefaultOmega;
  bool prefactor_one = false;
  bool prefactor_set = false;
  // uhf
  int uhf_m = 2;
  bool uhf_shift_invariant = true;
  // weighted
  double theta = kDefaultOmega;
  std::vector<double> weight_phases;  // w_k = e^{i phase_k}; empty = all ones
  bool unitary_x = false;
  // weyl
  int n_max = 12;
  double omega1 = 1.0;
  double omega2 = 1.4142135623730951;
  double eps = 0.0;
};

struct SpectrumConfig {
  ScenarioConfig scenario;
  std::string method = "eig";  // eig | average
  double half_width = 200.0;
  int steps = 4001;
  double tol_re = 1e-8;
  double tol_cluster = 1e-8;
  double threshold = 1e-3;
  std::uint64_t seed = 42;
  std::string out = "spectrum.json";
  bool dump_coefficients = false;
};

struct DecomposeConfig {
  ScenarioConfig scenario;
  double grid_min = 0.0;
  double grid_max = 0.0;
  double grid_step = 0.0;  // <= 0: derive pi/(2R) over a span from the oracle
  double half_width = 200.0;
  int steps = 4001;
  double threshold = 1e-3;
  double tol_re = 1e-8;
  double tol_cluster = 1e-8;
  std::uint64_t seed = 42;
  std::string out = "decompose.json";
};

struct Sec8Config {
  std::vector<int> dims = {8, 16, 32, 64};
  double omega = kDefaultOmega;
  double threshold = 1e-3;
  int top_k = 4;
  int signal_steps = 401;
  double tol_re = 1e-8;
  double tol_cluster = 1e-8;
  std::uint64_t seed = 42;
  std::string out_dir = "sec8_report";
};

struct ScalingConfig {
  std::vector<int> dims = {8, 16, 32, 64};
  double omega = kDefaultOmega;
  double threshold = 1e-3;
  int top_k = 4;
  std::uint64_t seed = 42;
  std::string out = "scaling.csv";
};

struct WeylConfig {
  int n_max = 12;
  double omega1 = 1.0;
  double omega2 = 1.4142135623730951;
  std::vector<double> eps = {0.0, 0.3};
  double cluster_tol = 1e-6;
  std::uint64_t seed = 42;
  std::string out = "weyl.json";
};

scenarios::Scenario build_scenario(const ScenarioConfig& cfg);

int cmd_check_identities(const IdentitiesConfig& cfg);
int cmd_spectrum(const SpectrumConfig& cfg);
int cmd_decompose(const DecomposeConfig& cfg);
int cmd_reproduce_sec8(const Sec8Config& cfg);
int cmd_scaling(const ScalingConfig& cfg);
int cmd_weyl(const WeylConfig& cfg);

}  // namespace homlie::cli
