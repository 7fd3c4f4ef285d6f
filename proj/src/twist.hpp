#pragma once
// Twisting maps alpha: the bounded linear maps that deform the commutator
// into [a,b]_alpha = alpha(ab - ba).

#include <optional>

#include "common.hpp"
#include "linalg.hpp"
#include "superoperator.hpp"

namespace homlie::algebra {

using linalg::SuperOperator;

class TwistMap {
 public:
  enum class Kind { identity, unitary_conjugation, trace_shift, transpose, general };

  static TwistMap identity(Index dim);
  // Enforces ||U*U - I|| <= 1e-10.
  static TwistMap unitary_conjugation(Matrix u);
  static TwistMap trace_shift(Index dim);  // A -> A + tr(A) I
  static TwistMap transpose(Index dim);
  static TwistMap general(SuperOperator s);

  Kind kind() const { return kind_; }
  Index dim() const { return dim_; }
  const char* kind_name() const;

  // Multiplicative (hence bracket-morphism) kinds.
  bool is_morphism_kind() const;
  // Kinds the isometry check accepts.
  bool is_isometric_kind() const;

  Matrix apply(const Matrix& a) const;
  SuperOperator to_superoperator() const;

  // Upper estimate of the operator norm of alpha: 1 for the isometric
  // kinds, 1 + N for the trace shift, power iteration for general maps.
  double norm_bound() const;

  const Matrix& unitary() const;

 private:
  TwistMap(Kind k, Index dim);

  Kind kind_;
  Index dim_;
  Matrix u_;
  std::optional<SuperOperator> op_;
};

}  // namespace homlie::algebra
