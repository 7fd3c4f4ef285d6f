#pragma once
// Bohr-Fourier decomposition of flow orbits.  Two routes: the exact
// finite-dimensional eigen-oracle (cluster the superoperator spectrum,
// expand the initial element in the eigenbasis) and the time-average
// estimator a_lambda = (1/2R) int e^{-lambda t} T(t) a dt.

#include <cstdint>
#include <vector>

#include "derivation.hpp"

namespace homlie::bohr {

using dynamics::TwistedDerivation;
using linalg::SuperOperator;

enum class ModeTag { zero, imaginary, decaying, growing };
enum class ModeSource { eig, average };

const char* tag_name(ModeTag t);

struct BohrMode {
  Cplx lambda;
  Matrix coefficient;
  double magnitude = 0.0;  // operator norm of the coefficient
  ModeTag tag = ModeTag::zero;
  ModeSource source = ModeSource::eig;
};

struct SpectralDecomposition {
  // Sorted by descending magnitude, ties by (Im, Re) of lambda ascending.
  std::vector<BohrMode> modes;
  // eig route: a minus the almost-periodic sum (tags zero/imaginary);
  // average route: a minus the sum over all candidate coefficients.
  Matrix residual;
  double reconstruction_error = 0.0;  // ||a - sum of all listed coefficients||
  double abs_sum = 0.0;               // sum of magnitudes
  Cplx prefactor{1.0, 0.0};

  Matrix ap_sum() const;   // sum of zero/imaginary coefficients
  Matrix mode_sum() const; // sum over all listed coefficients
};

// Modes with magnitude <= kModeDropTol * ||a|| are dropped from the list.
inline constexpr double kModeDropTol = 1e-12;

SpectralDecomposition exact_modes(const SuperOperator& s, const Matrix& a,
                                  double tol_re = 1e-8, double tol_cluster = 1e-8);
SpectralDecomposition exact_modes(const TwistedDerivation& d, const Matrix& a,
                                  double tol_re = 1e-8, double tol_cluster = 1e-8);

Matrix bohr_coefficient(const TwistedDerivation& d, const Matrix& a, Cplx lambda,
                        double half_width, int steps);

Matrix mean_ergodic_projection(const TwistedDerivation& d, const Matrix& a,
                               double half_width, int steps);

SpectralDecomposition decompose_by_average(const TwistedDerivation& d, const Matrix& a,
                                           std::vector<Cplx> candidates, double half_width,
                                           int steps, double tol_re = 1e-8,
                                           double tol_cluster = 1e-8);

struct FrequencyGrid {
  double min = 0.0;
  double max = 0.0;
  double step = 0.0;
};

// Scans lambda = i*beta over the grid and extracts peaks of ||a_lambda||
// above the threshold, strongest first, with parabolic refinement on the
// grid magnitudes.  Each extracted mode is subtracted from the cached
// signal before the next scan, so averaging-kernel sidelobes (~0.22 of the
// main lobe) do not register as modes.  Frequencies are returned sorted
// ascending by beta.
std::vector<Cplx> detect_frequencies(const TwistedDerivation& d, const Matrix& a,
                                     const FrequencyGrid& grid, double half_width, int steps,
                                     double threshold);

}  // namespace homlie::bohr
