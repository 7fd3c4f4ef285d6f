#include "spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace homlie::bohr {

using dynamics::sample_flow;
using linalg::EigenSystem;
using linalg::frob_norm;
using linalg::op_norm;
using linalg::trapezoid_grid;
using linalg::unvec;
using linalg::vec;

const char* tag_name(ModeTag t) {
  switch (t) {
    case ModeTag::zero: return "zero";
    case ModeTag::imaginary: return "imaginary";
    case ModeTag::decaying: return "decaying";
    case ModeTag::growing: return "growing";
  }
  return "?";
}

namespace {

ModeTag classify(Cplx lambda, double tol_re) {
  if (std::abs(lambda) <= tol_re) return ModeTag::zero;
  if (std::abs(lambda.real()) <= tol_re) return ModeTag::imaginary;
  return lambda.real() < 0.0 ? ModeTag::decaying : ModeTag::growing;
}

bool ap_tag(ModeTag t) { return t == ModeTag::zero || t == ModeTag::imaginary; }

void sort_by_magnitude(std::vector<BohrMode>& modes) {
  std::stable_sort(modes.begin(), modes.end(), [](const BohrMode& a, const BohrMode& b) {
    if (a.magnitude != b.magnitude) return a.magnitude > b.magnitude;
    if (a.lambda.imag() != b.lambda.imag()) return a.lambda.imag() < b.lambda.imag();
    return a.lambda.real() < b.lambda.real();
  });
}

void require_diagonalisable(const EigenSystem& es) {
  if (es.reconstruction_residual < 1e-6) return;
  // Name the most degenerate eigenvalue pair: adjacent in the sorted order.
  double best = std::numeric_limits<double>::infinity();
  Cplx at{0.0, 0.0};
  for (Index k = 0; k + 1 < es.eigenvalues.size(); ++k) {
    const double gap = std::abs(es.eigenvalues[k + 1] - es.eigenvalues[k]);
    if (gap < best) {
      best = gap;
      at = es.eigenvalues[k];
    }
  }
  std::ostringstream msg;
  msg << "defective superoperator: eigen reconstruction residual "
      << es.reconstruction_residual << " (Jordan cluster near lambda = " << at.real()
      << (at.imag() < 0 ? " - " : " + ") << std::abs(at.imag()) << "i, gap " << best << ")";
  throw NumericError(msg.str());
}

// Greedy clustering of the (Im, Re)-sorted eigenvalues: a new cluster opens
// when the distance to the current anchor exceeds the tolerance.
std::vector<std::pair<Index, Index>> cluster_ranges(const Vector& sorted_vals, double tol) {
  std::vector<std::pair<Index, Index>> ranges;
  Index start = 0;
  for (Index k = 1; k <= sorted_vals.size(); ++k) {
    if (k == sorted_vals.size() || std::abs(sorted_vals[k] - sorted_vals[start]) > tol) {
      ranges.emplace_back(start, k);
      start = k;
    }
  }
  return ranges;
}

}  // namespace

Matrix SpectralDecomposition::ap_sum() const {
  Matrix acc = Matrix::Zero(residual.rows(), residual.cols());
  for (const BohrMode& m : modes)
    if (ap_tag(m.tag)) acc += m.coefficient;
  return acc;
}

Matrix SpectralDecomposition::mode_sum() const {
  Matrix acc = Matrix::Zero(residual.rows(), residual.cols());
  for (const BohrMode& m : modes) acc += m.coefficient;
  return acc;
}

SpectralDecomposition exact_modes(const SuperOperator& s, const Matrix& a, double tol_re,
                                  double tol_cluster) {
  if (a.rows() != s.dim() || a.cols() != s.dim())
    throw ConfigError("exact_modes: dimension mismatch");
  const EigenSystem es = eig(s);
  require_diagonalisable(es);

  const Vector c = es.coefficients(vec(a));
  const double drop = kModeDropTol * std::max(op_norm(a), 1e-300);
  const Index n = s.dim();

  SpectralDecomposition out;
  for (const auto& [lo, hi] : cluster_ranges(es.eigenvalues, tol_cluster)) {
    Cplx lambda{0.0, 0.0};
    Vector comp = Vector::Zero(n * n);
    for (Index k = lo; k < hi; ++k) {
      lambda += es.eigenvalues[k];
      comp += c[k] * es.eigenvector(k);
    }
    lambda /= static_cast<double>(hi - lo);
    BohrMode mode;
    mode.lambda = lambda;
    mode.coefficient = unvec(comp, n);
    mode.magnitude = op_norm(mode.coefficient);
    mode.tag = classify(lambda, tol_re);
    mode.source = ModeSource::eig;
    if (mode.magnitude > drop) out.modes.push_back(std::move(mode));
  }
  sort_by_magnitude(out.modes);

  Matrix all_sum = Matrix::Zero(n, n);
  Matrix ap = Matrix::Zero(n, n);
  out.abs_sum = 0.0;
  for (const BohrMode& m : out.modes) {
    all_sum += m.coefficient;
    if (ap_tag(m.tag)) ap += m.coefficient;
    out.abs_sum += m.magnitude;
  }
  out.residual = a - ap;
  out.reconstruction_error = op_norm(a - all_sum);
  return out;
}

SpectralDecomposition exact_modes(const TwistedDerivation& d, const Matrix& a, double tol_re,
                                  double tol_cluster) {
  SpectralDecomposition out = exact_modes(d.superop(), a, tol_re, tol_cluster);
  out.prefactor = d.prefactor();
  return out;
}

namespace {

void guard_candidate(Cplx lambda, double half_width) {
  if (std::abs(lambda.real()) * half_width > 600.0) {
    std::ostringstream msg;
    msg << "bohr_coefficient: e^{-lambda t} overflows over [-R, R] for Re(lambda) = "
        << lambda.real() << ", R = " << half_width;
    throw OverflowError(msg.str());
  }
}

}  // namespace

Matrix bohr_coefficient(const TwistedDerivation& d, const Matrix& a, Cplx lambda,
                        double half_width, int steps) {
  if (steps < 64) throw ConfigError("bohr_coefficient: need at least 64 quadrature points");
  if (!(half_width > 0.0)) throw ConfigError("bohr_coefficient: R must be positive");
  guard_candidate(lambda, half_width);
  const auto grid = trapezoid_grid(half_width, steps);
  Matrix acc = Matrix::Zero(a.rows(), a.cols());
  std::size_t k = 0;
  sample_flow(d, a, half_width, steps, [&](double t, const Matrix& state) {
    acc += grid[k].second * std::exp(-lambda * t) * state;
    ++k;
  });
  return acc;
}

Matrix mean_ergodic_projection(const TwistedDerivation& d, const Matrix& a, double half_width,
                               int steps) {
  return bohr_coefficient(d, a, Cplx(0.0, 0.0), half_width, steps);
}

SpectralDecomposition decompose_by_average(const TwistedDerivation& d, const Matrix& a,
                                           std::vector<Cplx> candidates, double half_width,
                                           int steps, double tol_re, double tol_cluster) {
  if (steps < 64) throw ConfigError("decompose_by_average: need at least 64 quadrature points");
  const Index n = d.dim();
  if (a.rows() != n || a.cols() != n) throw ConfigError("decompose_by_average: dimension mismatch");

  // Merge candidates within the clustering tolerance.
  std::stable_sort(candidates.begin(), candidates.end(), [](Cplx p, Cplx q) {
    if (p.imag() != q.imag()) return p.imag() < q.imag();
    return p.real() < q.real();
  });
  std::vector<Cplx> merged;
  for (Cplx z : candidates) {
    if (merged.empty() || std::abs(z - merged.back()) > tol_cluster) merged.push_back(z);
  }
  for (Cplx z : merged) guard_candidate(z, half_width);

  SpectralDecomposition out;
  out.prefactor = d.prefactor();
  std::vector<Matrix> acc(merged.size(), Matrix::Zero(n, n));
  if (!merged.empty()) {
    const auto grid = trapezoid_grid(half_width, steps);
    std::size_t k = 0;
    sample_flow(d, a, half_width, steps, [&](double t, const Matrix& state) {
      const double w = grid[k].second;
      for (std::size_t c = 0; c < merged.size(); ++c)
        acc[c] += w * std::exp(-merged[c] * t) * state;
      ++k;
    });
  }

  Matrix all_sum = Matrix::Zero(n, n);
  for (std::size_t c = 0; c < merged.size(); ++c) {
    BohrMode mode;
    mode.lambda = merged[c];
    mode.coefficient = std::move(acc[c]);
    mode.magnitude = op_norm(mode.coefficient);
    mode.tag = classify(mode.lambda, tol_re);
    mode.source = ModeSource::average;
    all_sum += mode.coefficient;
    out.abs_sum += mode.magnitude;
    out.modes.push_back(std::move(mode));
  }
  sort_by_magnitude(out.modes);
  out.residual = a - all_sum;
  out.reconstruction_error = op_norm(out.residual);
  return out;
}

std::vector<Cplx> detect_frequencies(const TwistedDerivation& d, const Matrix& a,
                                     const FrequencyGrid& grid, double half_width, int steps,
                                     double threshold) {
  if (!(grid.step > 0.0)) throw ConfigError("detect_frequencies: grid step must be positive");
  if (grid.max < grid.min) throw ConfigError("detect_frequencies: empty grid");
  if (steps < 64) throw ConfigError("detect_frequencies: need at least 64 quadrature points");

  const Index n = d.dim();
  std::vector<double> betas;
  for (double b = grid.min; b <= grid.max + 0.5 * grid.step; b += grid.step) betas.push_back(b);
  const std::size_t g = betas.size();

  const auto tg = trapezoid_grid(half_width, steps);
  std::vector<Matrix> states;
  states.reserve(tg.size());
  sample_flow(d, a, half_width, steps,
              [&](double, const Matrix& state) { states.push_back(state); });

  auto averaged = [&](double beta) {
    Matrix acc = Matrix::Zero(n, n);
    for (std::size_t k = 0; k < states.size(); ++k)
      acc += (tg[k].second * std::exp(Cplx(0.0, -beta * tg[k].first))) * states[k];
    return acc;
  };

  // Iterated three-point parabolic refinement with shrinking step: the
  // averaged magnitude is smooth near a peak, and the subtraction below
  // needs the centre to ~1e-6 so its own residual stays under threshold.
  auto refine = [&](double beta0) {
    double beta = beta0;
    double h = 0.5 * grid.step;
    for (int it = 0; it < 16; ++it) {
      const double ml = op_norm(averaged(beta - h));
      const double mc = op_norm(averaged(beta));
      const double mr = op_norm(averaged(beta + h));
      const double denom = ml - 2.0 * mc + mr;
      double offset = 0.0;
      if (std::abs(denom) > 1e-300) offset = std::clamp(0.5 * (ml - mr) / denom * h, -h, h);
      beta += offset;
      h *= 0.5;
    }
    return beta;
  };

  constexpr int kMaxPeaks = 64;
  std::vector<double> peaks;
  for (int round = 0; round < kMaxPeaks; ++round) {
    std::vector<double> mag(g);
    for (std::size_t c = 0; c < g; ++c) mag[c] = op_norm(averaged(betas[c]));
    std::size_t best = 0;
    for (std::size_t c = 1; c < g; ++c)
      if (mag[c] > mag[best]) best = c;
    if (!(mag[best] > threshold)) break;

    const double beta = refine(betas[best]);
    bool seen = false;
    for (double p : peaks)
      if (std::abs(p - beta) <= 0.5 * grid.step) { seen = true; break; }
    if (seen) break;  // no progress; imperfect cancellation would loop
    peaks.push_back(beta);

    const Matrix coeff = averaged(beta);
    for (std::size_t k = 0; k < states.size(); ++k)
      states[k] -= std::exp(Cplx(0.0, beta * tg[k].first)) * coeff;
  }

  std::sort(peaks.begin(), peaks.end());
  std::vector<Cplx> out;
  out.reserve(peaks.size());
  for (double b : peaks) out.emplace_back(0.0, b);
  return out;
}

}  // namespace homlie::bohr
