#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace homlie {

using Cplx   = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index  = Eigen::Index;

// Bad arguments or configuration (CLI exit code 2).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// State growth past the safety threshold, or exp() out of range (exit code 3).
class OverflowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Solver breakdown: non-convergence, defective spectra (exit code 3).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace homlie
