#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <limits>
#include <numbers>

namespace homlie::cli {

using algebra::IdentityReport;
using algebra::TwistMap;
using bohr::BohrMode;
using bohr::SpectralDecomposition;
using linalg::mix_seed;
using linalg::op_norm;
using linalg::Rng;
using report::Csv;
using report::format_double;
using report::Json;
using report::kToolVersion;
using report::write_file_atomic;
using scenarios::Scenario;

namespace {

int run_guarded(const char* command, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    std::cerr << command << ": configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const OverflowError& e) {
    std::cerr << command << ": numerical overflow: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << command << ": numerical failure: " << e.what() << "\n";
    return kExitNumeric;
  }
}

Json envelope(const char* command, std::uint64_t seed, Json config,
              const Cplx* prefactor = nullptr) {
  Json j = Json::object();
  j.set("version", Json::string(kToolVersion));
  j.set("command", Json::string(command));
  j.set("config", std::move(config));
  j.set("seed", Json::uinteger(seed));
  j.set("prefactor", prefactor ? Json::complex(*prefactor) : Json::null());
  return j;
}

Json frequencies_json(const std::vector<Cplx>& freqs) {
  Json arr = Json::array();
  for (Cplx f : freqs) arr.push(Json::complex(f));
  return arr;
}

Json classification_counts_json(const SpectralDecomposition& dec) {
  int zero = 0, imaginary = 0, decaying = 0, growing = 0;
  for (const BohrMode& m : dec.modes) {
    switch (m.tag) {
      case bohr::ModeTag::zero: ++zero; break;
      case bohr::ModeTag::imaginary: ++imaginary; break;
      case bohr::ModeTag::decaying: ++decaying; break;
      case bohr::ModeTag::growing: ++growing; break;
    }
  }
  Json j = Json::object();
  j.set("zero", Json::integer(zero));
  j.set("imaginary", Json::integer(imaginary));
  j.set("decaying", Json::integer(decaying));
  j.set("growing", Json::integer(growing));
  return j;
}

Json scenario_json(const Scenario& sc) {
  Json j = Json::object();
  j.set("name", Json::string(sc.name));
  j.set("notes", Json::string(sc.notes));
  j.set("expected_frequencies", frequencies_json(sc.expected_frequencies));
  j.set("provenance", Json::string(sc.provenance));
  return j;
}

Json scenario_config_json(const ScenarioConfig& cfg) {
  Json j = Json::object();
  j.set("scenario", Json::string(cfg.scenario));
  j.set("dim", Json::integer(cfg.dim));
  j.set("omega", Json::number(cfg.omega));
  j.set("prefactor_flag", Json::string(cfg.prefactor_set ? (cfg.prefactor_one ? "1" : "i")
                                                         : "scenario-default"));
  if (cfg.scenario == "uhf") {
    j.set("m", Json::integer(cfg.uhf_m));
    j.set("shift_invariant", Json::boolean(cfg.uhf_shift_invariant));
  }
  if (cfg.scenario == "weighted") {
    j.set("theta", Json::number(cfg.theta));
    Json phases = Json::array();
    for (double p : cfg.weight_phases) phases.push(Json::number(p));
    j.set("weight_phases", std::move(phases));
    j.set("unitary_x", Json::boolean(cfg.unitary_x));
  }
  if (cfg.scenario == "weyl") {
    j.set("n_max", Json::integer(cfg.n_max));
    j.set("omega1", Json::number(cfg.omega1));
    j.set("omega2", Json::number(cfg.omega2));
    j.set("eps", Json::number(cfg.eps));
  }
  return j;
}

// Distance from every expected frequency to the nearest computed mode.
double expected_frequency_error(const Scenario& sc, const SpectralDecomposition& dec) {
  double worst = 0.0;
  for (Cplx f : sc.expected_frequencies) {
    double best = std::numeric_limits<double>::infinity();
    for (const BohrMode& m : dec.modes) best = std::min(best, std::abs(m.lambda - f));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

Scenario build_scenario(const ScenarioConfig& cfg) {
  std::optional<Cplx> pre;
  if (cfg.prefactor_set) pre = cfg.prefactor_one ? Cplx(1.0, 0.0) : Cplx(0.0, 1.0);
  if (cfg.scenario == "hermitian")
    return scenarios::scenario_hermitian_lattice(cfg.dim, cfg.omega, pre);
  if (cfg.scenario == "sec8") return scenarios::scenario_sec8(cfg.dim, cfg.omega, pre);
  if (cfg.scenario == "uhf")
    return scenarios::scenario_uhf(cfg.uhf_m, cfg.uhf_shift_invariant, pre);
  if (cfg.scenario == "weighted") {
    std::vector<Cplx> weights;
    if (cfg.weight_phases.empty()) {
      weights.assign(static_cast<std::size_t>(cfg.dim), Cplx(1.0, 0.0));
    } else {
      if (cfg.weight_phases.size() != static_cast<std::size_t>(cfg.dim))
        throw ConfigError("weighted scenario: need one weight phase per site");
      for (double p : cfg.weight_phases) weights.push_back(std::polar(1.0, p));
    }
    return scenarios::scenario_weighted_shift(cfg.dim, cfg.theta, weights, cfg.unitary_x, pre);
  }
  if (cfg.scenario == "weyl")
    return scenarios::scenario_weyl(cfg.n_max, cfg.omega1, cfg.omega2, cfg.eps, pre);
  throw ConfigError("unknown scenario '" + cfg.scenario + "'");
}

int cmd_check_identities(const IdentitiesConfig& cfg) {
  return run_guarded("check-identities", [&]() {
    if (cfg.dim < 1) throw ConfigError("dim must be >= 1");
    if (cfg.samples < 1) throw ConfigError("samples must be >= 1");
    if (!(cfg.tol > 0.0)) throw ConfigError("tol must be positive");

    TwistMap twist = [&]() {
      if (cfg.twist == "identity") return TwistMap::identity(cfg.dim);
      if (cfg.twist == "unitary")
        return TwistMap::unitary_conjugation(Rng(mix_seed(cfg.seed, 0x5EEDu)).unitary(cfg.dim));
      if (cfg.twist == "trace-shift") return TwistMap::trace_shift(cfg.dim);
      if (cfg.twist == "transpose") return TwistMap::transpose(cfg.dim);
      throw ConfigError("unknown twist '" + cfg.twist + "'");
    }();

    const auto reports = algebra::identity_suite(twist, cfg.samples, cfg.seed, cfg.tol);
    bool all_pass = true;
    Json arr = Json::array();
    for (const IdentityReport& rep : reports) {
      all_pass = all_pass && rep.pass;
      arr.push(report::identity_report_json(rep));
    }

    Json config = Json::object();
    config.set("twist", Json::string(cfg.twist));
    config.set("dim", Json::integer(cfg.dim));
    config.set("samples", Json::integer(cfg.samples));
    config.set("tol", Json::number(cfg.tol));
    config.set("out", Json::string(cfg.out));

    Json j = envelope("check-identities", cfg.seed, std::move(config));
    j.set("twist_detail", Json::string(cfg.twist == "unitary"
                                           ? "haar unitary drawn from the report seed"
                                           : cfg.twist));
    j.set("reports", std::move(arr));
    j.set("all_pass", Json::boolean(all_pass));
    write_file_atomic(cfg.out, j.dump());
    return all_pass ? kExitOk : kExitIdentityFailure;
  });
}

namespace {

Json average_eig_comparison(const SpectralDecomposition& average,
                            const SpectralDecomposition& exact, double tol_cluster) {
  double worst = 0.0;
  int matched = 0;
  for (const BohrMode& m : average.modes) {
    const BohrMode* hit = nullptr;
    double best = std::numeric_limits<double>::infinity();
    for (const BohrMode& e : exact.modes) {
      const double dist = std::abs(e.lambda - m.lambda);
      if (dist < best) {
        best = dist;
        hit = &e;
      }
    }
    if (hit && best <= std::max(tol_cluster, 1e-2)) {
      ++matched;
      worst = std::max(worst, op_norm(m.coefficient - hit->coefficient));
    }
  }
  Json j = Json::object();
  j.set("matched_modes", Json::integer(matched));
  j.set("max_coefficient_error", Json::number(worst));
  return j;
}

}  // namespace

int cmd_spectrum(const SpectrumConfig& cfg) {
  return run_guarded("spectrum", [&]() {
    if (cfg.method != "eig" && cfg.method != "average")
      throw ConfigError("method must be 'eig' or 'average'");
    Scenario sc = build_scenario(cfg.scenario);
    const Cplx prefactor = sc.derivation.prefactor();

    const SpectralDecomposition exact =
        bohr::exact_modes(sc.derivation, sc.a0, cfg.tol_re, cfg.tol_cluster);

    SpectralDecomposition main = exact;
    std::vector<Cplx> detected;
    if (cfg.method == "average") {
      double span = 0.0;
      for (const BohrMode& m : exact.modes) span = std::max(span, std::abs(m.lambda.imag()));
      if (span == 0.0) span = 1.0;
      bohr::FrequencyGrid grid;
      grid.step = std::numbers::pi / (2.0 * cfg.half_width);
      grid.min = -1.2 * span - 5.0 * grid.step;
      grid.max = 1.2 * span + 5.0 * grid.step;
      detected = bohr::detect_frequencies(sc.derivation, sc.a0, grid, cfg.half_width, cfg.steps,
                                          cfg.threshold);
      main = bohr::decompose_by_average(sc.derivation, sc.a0, detected, cfg.half_width, cfg.steps,
                                        cfg.tol_re, cfg.tol_cluster);
    }

    Json config = scenario_config_json(cfg.scenario);
    config.set("method", Json::string(cfg.method));
    config.set("R", Json::number(cfg.half_width));
    config.set("steps", Json::integer(cfg.steps));
    config.set("tol_re", Json::number(cfg.tol_re));
    config.set("tol_cluster", Json::number(cfg.tol_cluster));
    config.set("threshold", Json::number(cfg.threshold));
    config.set("out", Json::string(cfg.out));

    Json j = envelope("spectrum", cfg.seed, std::move(config), &prefactor);
    j.set("scenario", scenario_json(sc));
    j.set("commutation_defect", Json::number(dynamics::commutation_defect(sc.derivation)));
    j.set("classification_counts", classification_counts_json(main));
    if (!sc.expected_frequencies.empty())
      j.set("expected_frequency_max_error",
            Json::number(expected_frequency_error(sc, exact)));
    if (cfg.method == "average") {
      j.set("detected_frequencies", frequencies_json(detected));
      j.set("eig_comparison", average_eig_comparison(main, exact, cfg.tol_cluster));
    }
    j.set("decomposition", report::decomposition_json(main, cfg.seed));
    write_file_atomic(cfg.out, j.dump());

    if (cfg.dump_coefficients) {
      std::vector<const BohrMode*> order;
      for (const auto& m : main.modes) order.push_back(&m);
      std::stable_sort(order.begin(), order.end(),
                       [](const BohrMode* a, const BohrMode* b) {
                         if (a->lambda.imag() != b->lambda.imag())
                           return a->lambda.imag() < b->lambda.imag();
                         return a->lambda.real() < b->lambda.real();
                       });
      const std::string stem =
          cfg.out.size() > 5 && cfg.out.ends_with(".json")
              ? cfg.out.substr(0, cfg.out.size() - 5)
              : cfg.out;
      for (std::size_t k = 0; k < order.size(); ++k)
        write_file_atomic(stem + "_mode" + std::to_string(k) + ".csv",
                          report::mode_coefficient_csv(*order[k]));
    }
    return kExitOk;
  });
}

int cmd_decompose(const DecomposeConfig& cfg) {
  return run_guarded("decompose", [&]() {
    Scenario sc = build_scenario(cfg.scenario);
    const Cplx prefactor = sc.derivation.prefactor();

    bohr::FrequencyGrid grid{cfg.grid_min, cfg.grid_max, cfg.grid_step};
    if (!(cfg.grid_step > 0.0)) {
      const SpectralDecomposition exact =
          bohr::exact_modes(sc.derivation, sc.a0, cfg.tol_re, cfg.tol_cluster);
      double span = 0.0;
      for (const BohrMode& m : exact.modes) span = std::max(span, std::abs(m.lambda.imag()));
      if (span == 0.0) span = 1.0;
      grid.step = std::numbers::pi / (2.0 * cfg.half_width);
      grid.min = -1.2 * span - 5.0 * grid.step;
      grid.max = 1.2 * span + 5.0 * grid.step;
    }

    const std::vector<Cplx> detected = bohr::detect_frequencies(
        sc.derivation, sc.a0, grid, cfg.half_width, cfg.steps, cfg.threshold);
    const SpectralDecomposition dec = bohr::decompose_by_average(
        sc.derivation, sc.a0, detected, cfg.half_width, cfg.steps, cfg.tol_re, cfg.tol_cluster);

    Json config = scenario_config_json(cfg.scenario);
    config.set("grid_min", Json::number(grid.min));
    config.set("grid_max", Json::number(grid.max));
    config.set("grid_step", Json::number(grid.step));
    config.set("R", Json::number(cfg.half_width));
    config.set("steps", Json::integer(cfg.steps));
    config.set("threshold", Json::number(cfg.threshold));
    config.set("out", Json::string(cfg.out));

    Json j = envelope("decompose", cfg.seed, std::move(config), &prefactor);
    j.set("scenario", scenario_json(sc));
    j.set("detected_frequencies", frequencies_json(detected));
    j.set("classification_counts", classification_counts_json(dec));
    j.set("decomposition", report::decomposition_json(dec, cfg.seed));
    write_file_atomic(cfg.out, j.dump());
    return kExitOk;
  });
}

namespace {

// Modes ranked for the scalar (0,1)-entry signal: by the entry modulus of
// the coefficient, which is what the reference table tabulates.
std::vector<const BohrMode*> entry_ranked(const SpectralDecomposition& dec, Index r, Index c) {
  std::vector<const BohrMode*> order;
  for (const auto& m : dec.modes) order.push_back(&m);
  std::stable_sort(order.begin(), order.end(), [&](const BohrMode* a, const BohrMode* b) {
    const double ea = std::abs(a->coefficient(r, c));
    const double eb = std::abs(b->coefficient(r, c));
    if (ea != eb) return ea > eb;
    if (a->lambda.imag() != b->lambda.imag()) return a->lambda.imag() < b->lambda.imag();
    return a->lambda.real() < b->lambda.real();
  });
  return order;
}

Json reference_table1_json() {
  static const double rows[4][4] = {{0.141, 0.102, -0.181, 0.208},
                                    {0.282, -0.055, 0.098, 0.112},
                                    {0.424, 0.021, -0.037, 0.043},
                                    {0.565, -0.008, 0.014, 0.016}};
  Json arr = Json::array();
  for (const auto& r : rows) {
    Json row = Json::object();
    row.set("beta", Json::number(r[0]));
    row.set("c_re", Json::number(r[1]));
    row.set("c_im", Json::number(r[2]));
    row.set("abs_c", Json::number(r[3]));
    arr.push(std::move(row));
  }
  return arr;
}

}  // namespace

int cmd_reproduce_sec8(const Sec8Config& cfg) {
  return run_guarded("reproduce-sec8", [&]() {
    if (cfg.dims.empty()) throw ConfigError("dims must be nonempty");
    for (int n : cfg.dims)
      if (n < 2) throw ConfigError("every dim must be >= 2");
    if (!std::is_sorted(cfg.dims.begin(), cfg.dims.end()))
      throw ConfigError("dims must be ascending");
    if (cfg.top_k < 1) throw ConfigError("top_k must be >= 1");
    if (cfg.signal_steps < 2) throw ConfigError("signal_steps must be >= 2");

    namespace fs = std::filesystem;
    fs::create_directories(cfg.out_dir);
    const double t_span = 20.0;
    const Index er = 0, ec = 1;  // tracked entry

    Json per_dim = Json::array();
    for (int n : cfg.dims) {
      Scenario sc = scenarios::scenario_sec8(n, cfg.omega);
      const SpectralDecomposition dec =
          bohr::exact_modes(sc.derivation, sc.a0, cfg.tol_re, cfg.tol_cluster);
      const auto ranked = entry_ranked(dec, er, ec);

      // closed-form eigenvalue check over the full superoperator spectrum
      const linalg::EigenSystem es = eig(sc.derivation.superop());
      std::vector<Cplx> closed;
      closed.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) closed.push_back(scenarios::sec8_eigenvalue(cfg.omega, j, k));
      std::stable_sort(closed.begin(), closed.end(), [](Cplx a, Cplx b) {
        if (a.imag() != b.imag()) return a.imag() < b.imag();
        return a.real() < b.real();
      });
      double closed_err = 0.0;
      for (Index k = 0; k < es.eigenvalues.size(); ++k)
        closed_err = std::max(closed_err,
                              std::abs(es.eigenvalues[k] - closed[static_cast<std::size_t>(k)]));

      // modal signal over [-20, 20]: exact in finite dimension, finite for
      // every N (the stepper would overflow at N >= 16).
      Csv signal({"t", "norm", "re_entry", "im_entry"});
      Csv error_csv({"t", "err"});
      double max_err = 0.0;
      for (int gp = 0; gp < cfg.signal_steps; ++gp) {
        const double t = -t_span + 2.0 * t_span * static_cast<double>(gp) /
                                       static_cast<double>(cfg.signal_steps - 1);
        Matrix state = Matrix::Zero(n, n);
        for (const BohrMode& m : dec.modes) state += std::exp(m.lambda * t) * m.coefficient;
        Cplx rec{0.0, 0.0};
        for (int k = 0; k < cfg.top_k && static_cast<std::size_t>(k) < ranked.size(); ++k)
          rec += std::exp(ranked[static_cast<std::size_t>(k)]->lambda * t) *
                 ranked[static_cast<std::size_t>(k)]->coefficient(er, ec);
        const Cplx entry = state(er, ec);
        const double err = std::abs(entry - rec);
        max_err = std::max(max_err, err);
        signal.row({format_double(t), format_double(op_norm(state)),
                    format_double(entry.real()), format_double(entry.imag())});
        error_csv.row({format_double(t), format_double(err)});
      }
      const std::string tag = "N" + std::to_string(n);
      write_file_atomic(cfg.out_dir + "/signal_" + tag + ".csv", signal.str());
      write_file_atomic(cfg.out_dir + "/error_" + tag + ".csv", error_csv.str());

      Csv modes_csv({"beta", "re_lambda", "c_re", "c_im", "abs_c", "magnitude"});
      for (const BohrMode* m : ranked) {
        const Cplx c = m->coefficient(er, ec);
        modes_csv.row({format_double(m->lambda.imag()), format_double(m->lambda.real()),
                       format_double(c.real()), format_double(c.imag()),
                       format_double(std::abs(c)), format_double(m->magnitude)});
      }
      write_file_atomic(cfg.out_dir + "/modes_" + tag + ".csv", modes_csv.str());

      Json entry_modes = Json::array();
      for (std::size_t k = 0; k < ranked.size() && k < static_cast<std::size_t>(cfg.top_k); ++k) {
        const Cplx c = ranked[k]->coefficient(er, ec);
        Json row = Json::object();
        row.set("beta", Json::number(ranked[k]->lambda.imag()));
        row.set("re_lambda", Json::number(ranked[k]->lambda.real()));
        row.set("c_re", Json::number(c.real()));
        row.set("c_im", Json::number(c.imag()));
        row.set("abs_c", Json::number(std::abs(c)));
        entry_modes.push(std::move(row));
      }

      Json d = Json::object();
      d.set("dim", Json::integer(n));
      d.set("commutation_defect", Json::number(dynamics::commutation_defect(sc.derivation)));
      d.set("eigenvalue_closed_form_max_error", Json::number(closed_err));
      d.set("classification_counts", classification_counts_json(dec));
      d.set("mode_count", Json::integer(static_cast<int>(dec.modes.size())));
      d.set("max_signal_error_topk", Json::number(max_err));
      d.set("dominant_entry_modes", std::move(entry_modes));
      d.set("signal_csv", Json::string("signal_" + tag + ".csv"));
      d.set("error_csv", Json::string("error_" + tag + ".csv"));
      d.set("modes_csv", Json::string("modes_" + tag + ".csv"));
      per_dim.push(std::move(d));
    }

    const scenarios::ScalingStudy study =
        scenarios::scaling_study(cfg.dims, cfg.omega, cfg.threshold, cfg.top_k, cfg.seed);
    Csv scaling_csv({"N", "mode_count", "max_err", "seed"});
    Json scaling_rows = Json::array();
    for (const auto& row : study.rows) {
      scaling_csv.row({std::to_string(row.dim), std::to_string(row.mode_count),
                       format_double(row.max_err), std::to_string(row.seed)});
      Json r = Json::object();
      r.set("dim", Json::integer(row.dim));
      r.set("mode_count", Json::integer(row.mode_count));
      Json errs = Json::array();
      for (double e : row.err_by_k) errs.push(Json::number(e));
      r.set("err_by_k", std::move(errs));
      r.set("max_err", Json::number(row.max_err));
      r.set("seed", Json::uinteger(row.seed));
      scaling_rows.push(std::move(r));
    }
    write_file_atomic(cfg.out_dir + "/scaling.csv", scaling_csv.str());

    Json config = Json::object();
    {
      Json dims = Json::array();
      for (int n : cfg.dims) dims.push(Json::integer(n));
      config.set("dims", std::move(dims));
    }
    config.set("omega", Json::number(cfg.omega));
    config.set("threshold", Json::number(cfg.threshold));
    config.set("top_k", Json::integer(cfg.top_k));
    config.set("signal_steps", Json::integer(cfg.signal_steps));
    config.set("out_dir", Json::string(cfg.out_dir));

    const Cplx prefactor{1.0, 0.0};
    Json j = envelope("reproduce-sec8", cfg.seed, std::move(config), &prefactor);
    j.set("per_dim", std::move(per_dim));
    j.set("scaling", std::move(scaling_rows));

    Json comparison = Json::object();
    comparison.set("reference_table", reference_table1_json());
    comparison.set(
        "note",
        Json::string("reference values reproduced for side-by-side comparison only; the "
                     "closed-form spectrum of this construction is not purely imaginary and "
                     "agreement is not asserted"));
    j.set("reference_comparison", std::move(comparison));

    Json meta = Json::object();
    {
      Json counts = Json::array();
      const int ref[4][2] = {{8, 4}, {16, 7}, {32, 10}, {64, 11}};
      for (const auto& rc : ref) {
        Json pair = Json::array();
        pair.push(Json::integer(rc[0]));
        pair.push(Json::integer(rc[1]));
        counts.push(std::move(pair));
      }
      meta.set("reference_mode_counts", std::move(counts));
    }
    meta.set("reference_max_signal_error", Json::number(8e-4));
    meta.set("reference_scaling_power_law_beta", Json::number(1.2));
    j.set("reference_metadata", std::move(meta));

    write_file_atomic(cfg.out_dir + "/summary.json", j.dump());
    return kExitOk;
  });
}

int cmd_scaling(const ScalingConfig& cfg) {
  return run_guarded("scaling", [&]() {
    const scenarios::ScalingStudy study =
        scenarios::scaling_study(cfg.dims, cfg.omega, cfg.threshold, cfg.top_k, cfg.seed);

    Csv csv({"N", "mode_count", "max_err", "seed"});
    Json rows = Json::array();
    for (const auto& row : study.rows) {
      csv.row({std::to_string(row.dim), std::to_string(row.mode_count),
               format_double(row.max_err), std::to_string(row.seed)});
      Json r = Json::object();
      r.set("dim", Json::integer(row.dim));
      r.set("mode_count", Json::integer(row.mode_count));
      Json errs = Json::array();
      for (double e : row.err_by_k) errs.push(Json::number(e));
      r.set("err_by_k", std::move(errs));
      r.set("max_err", Json::number(row.max_err));
      r.set("seed", Json::uinteger(row.seed));
      rows.push(std::move(r));
    }
    write_file_atomic(cfg.out, csv.str());

    Json config = Json::object();
    {
      Json dims = Json::array();
      for (int n : cfg.dims) dims.push(Json::integer(n));
      config.set("dims", std::move(dims));
    }
    config.set("omega", Json::number(cfg.omega));
    config.set("threshold", Json::number(cfg.threshold));
    config.set("top_k", Json::integer(cfg.top_k));
    config.set("out", Json::string(cfg.out));

    const Cplx prefactor{0.0, 1.0};
    Json j = envelope("scaling", cfg.seed, std::move(config), &prefactor);
    j.set("rows", std::move(rows));
    Json meta = Json::object();
    meta.set("reference_scaling_power_law_beta", Json::number(1.2));
    meta.set("reference_claim", Json::string("mode count grows approximately linearly with N"));
    j.set("reference_metadata", std::move(meta));

    std::string summary_path = cfg.out;
    if (summary_path.size() > 4 && summary_path.ends_with(".csv"))
      summary_path = summary_path.substr(0, summary_path.size() - 4);
    write_file_atomic(summary_path + ".json", j.dump());
    return kExitOk;
  });
}

int cmd_weyl(const WeylConfig& cfg) {
  return run_guarded("weyl", [&]() {
    if (cfg.n_max < 4) throw ConfigError("n_max must be >= 4");
    if (cfg.eps.empty()) throw ConfigError("need at least one eps value");
    if (!(cfg.cluster_tol > 0.0)) throw ConfigError("cluster_tol must be positive");

    Json results = Json::array();
    for (double eps : cfg.eps) {
      Scenario sc = scenarios::scenario_weyl(cfg.n_max, cfg.omega1, cfg.omega2, eps);
      const int interior = scenarios::weyl_interior_mode_count(
          sc.derivation, cfg.n_max - 2, cfg.cluster_tol);
      const int total = scenarios::weyl_interior_mode_count(
          sc.derivation, cfg.n_max, cfg.cluster_tol);
      Json r = Json::object();
      r.set("eps", Json::number(eps));
      r.set("commutation_defect", Json::number(dynamics::commutation_defect(sc.derivation)));
      r.set("interior_distinct_count", Json::integer(interior));
      r.set("total_distinct_count", Json::integer(total));
      results.push(std::move(r));
    }

    Json config = Json::object();
    config.set("n_max", Json::integer(cfg.n_max));
    config.set("omega1", Json::number(cfg.omega1));
    config.set("omega2", Json::number(cfg.omega2));
    {
      Json eps = Json::array();
      for (double e : cfg.eps) eps.push(Json::number(e));
      config.set("eps", std::move(eps));
    }
    config.set("cluster_tol", Json::number(cfg.cluster_tol));
    config.set("out", Json::string(cfg.out));

    const Cplx prefactor{0.0, 1.0};
    Json j = envelope("weyl", cfg.seed, std::move(config), &prefactor);
    j.set("results", std::move(results));
    write_file_atomic(cfg.out, j.dump());
    return kExitOk;
  });
}

}  // namespace homlie::cli
