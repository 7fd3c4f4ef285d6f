#include "subspaces.hpp"

#include <algorithm>
#include <numeric>

namespace homlie::bohr {

using algebra::twisted_bracket;
using linalg::EigenSystem;
using linalg::op_norm;
using linalg::Rng;
using linalg::unvec;
using linalg::vec;

Matrix SubspaceBasis::basis_matrix(Index k) const { return unvec(q.col(k), mat_dim); }

Matrix SubspaceBasis::project_residual(const Matrix& a) const {
  const Vector v = vec(a);
  if (q.cols() == 0) return a;
  const Vector r = v - q * (q.adjoint() * v);
  return unvec(r, mat_dim);
}

namespace {

SubspaceBasis orthonormal_span(const std::string& label, Index mat_dim,
                               const std::vector<Vector>& columns) {
  SubspaceBasis b;
  b.label = label;
  b.mat_dim = mat_dim;
  const Index n2 = mat_dim * mat_dim;
  if (columns.empty()) {
    b.q = Matrix(n2, 0);
    return b;
  }
  Matrix m(n2, static_cast<Index>(columns.size()));
  for (std::size_t k = 0; k < columns.size(); ++k) m.col(static_cast<Index>(k)) = columns[k];
  Eigen::HouseholderQR<Matrix> qr(m);
  b.q = qr.householderQ() * Matrix::Identity(n2, m.cols());
  return b;
}

}  // namespace

ApErgSplit ap_erg_split(const SuperOperator& s, double tol_re) {
  const EigenSystem es = eig(s);
  if (es.reconstruction_residual >= 1e-6)
    throw NumericError("ap_erg_split: defective superoperator (residual " +
                       std::to_string(es.reconstruction_residual) + ")");
  const Index n = s.dim();

  std::vector<Vector> ap_cols, erg_cols;
  ApErgSplit split;
  for (Index k = 0; k < es.eigenvalues.size(); ++k) {
    const Cplx lambda = es.eigenvalues[k];
    const bool imaginary = std::abs(lambda.real()) <= tol_re;
    if (imaginary) {
      ap_cols.push_back(es.eigenvector(k));
      if (std::abs(lambda) > tol_re) erg_cols.push_back(es.eigenvector(k));
    } else if (lambda.real() < -tol_re) {
      erg_cols.push_back(es.eigenvector(k));
    } else {
      split.growing.emplace_back(lambda, unvec(es.eigenvector(k), n));
    }
  }
  split.ap = orthonormal_span("ap", n, ap_cols);
  split.erg = orthonormal_span("erg", n, erg_cols);

  if (split.ap.dim() > 0 && split.erg.dim() > 0) {
    const Matrix overlap = split.ap.q.adjoint() * split.erg.q;
    Eigen::JacobiSVD<Matrix> svd(overlap);
    const auto& sv = svd.singularValues();
    split.principal_cosines.assign(sv.data(), sv.data() + sv.size());
    split.overlap_dim = static_cast<Index>(
        std::count_if(split.principal_cosines.begin(), split.principal_cosines.end(),
                      [](double c) { return c >= 1.0 - 1e-8; }));
  }
  return split;
}

ApErgSplit ap_erg_split(const TwistedDerivation& d, double tol_re) {
  return ap_erg_split(d.superop(), tol_re);
}

IdentityReport bracket_stability_check(const TwistedDerivation& d, const SubspaceBasis& basis,
                                       const TwistMap& alpha, int samples, std::uint64_t seed,
                                       double tol) {
  if (samples < 1) throw ConfigError("bracket_stability_check: samples must be >= 1");
  IdentityReport rep;
  rep.identity = "bracket_stability_" + basis.label;
  rep.samples = samples;
  rep.seed = seed;
  rep.tolerance = tol;
  if (basis.dim() == 0) {  // vacuous
    rep.pass = true;
    return rep;
  }
  Rng rng(seed);
  auto span_element = [&]() {
    Vector g(basis.dim());
    for (Index k = 0; k < g.size(); ++k) g[k] = rng.cnormal();
    return unvec(Vector(basis.q * g), basis.mat_dim);
  };
  for (int i = 0; i < samples; ++i) {
    const Matrix a = span_element();
    const Matrix b = span_element();
    const double na = std::max(op_norm(a), 1e-300);
    const double nb = std::max(op_norm(b), 1e-300);
    const double bracket_res =
        op_norm(basis.project_residual(twisted_bracket(alpha, a, b))) / (na * nb);
    const double alpha_res = op_norm(basis.project_residual(alpha.apply(a))) / na;
    const double delta_res = op_norm(basis.project_residual(d.apply(a))) / na;
    const double worst = std::max({bracket_res, alpha_res, delta_res});
    if (worst > rep.max_defect || rep.worst_index < 0) {
      rep.max_defect = worst;
      rep.worst_index = i;
      rep.worst_inputs = {a, b};
    }
  }
  rep.pass = rep.max_defect <= rep.tolerance;
  return rep;
}

IdentityReport permutation_invariance_check(const SpectralDecomposition& dec, std::uint64_t seed) {
  IdentityReport rep;
  rep.identity = "permutation_invariance";
  rep.samples = 10;
  rep.seed = seed;
  rep.tolerance = 1e-12;
  if (dec.modes.empty()) {
    rep.pass = true;
    return rep;
  }
  const Index n = dec.modes.front().coefficient.rows();
  Rng rng(seed);
  std::vector<Matrix> totals;
  std::vector<std::size_t> order(dec.modes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (int run = 0; run < 10; ++run) {
    // Fisher-Yates with the report's generator
    for (std::size_t k = order.size(); k > 1; --k) {
      const std::size_t j = static_cast<std::size_t>(rng.next_u64() % k);
      std::swap(order[k - 1], order[j]);
    }
    Matrix total = Matrix::Zero(n, n);
    for (std::size_t idx : order) total += dec.modes[idx].coefficient;
    totals.push_back(std::move(total));
  }
  const double scale = std::max(dec.abs_sum, 1e-300);
  for (std::size_t i = 0; i < totals.size(); ++i)
    for (std::size_t j = i + 1; j < totals.size(); ++j)
      rep.max_defect = std::max(rep.max_defect, op_norm(totals[i] - totals[j]) / scale);
  rep.worst_index = 0;
  rep.pass = rep.max_defect <= rep.tolerance;
  return rep;
}

}  // namespace homlie::bohr
