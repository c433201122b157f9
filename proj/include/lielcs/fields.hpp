#pragma once

#include "lielcs/algebra.hpp"
#include "lielcs/common.hpp"
#include "lielcs/group.hpp"

namespace lielcs {

/// Linear vector field (xi, A, a) on G with A = p*I + q*J. Vanishes at the
/// identity; its flow is a one-parameter group of automorphisms.
struct LinearField {
  Vec2 xi = Vec2::Zero();
  double p = 0.0;
  double q = 0.0;
  double a = 0.0;

  LinearField() = default;
  LinearField(const Vec2& xi_, double p_, double q_, double a_) : xi(xi_), p(p_), q(q_), a(a_) {}
  /// Raw 2x2 A is accepted only when AJ = JA.
  LinearField(const Vec2& xi_, const Mat2& a_block, double a_);

  Mat2 a_matrix() const;
  Complex a_complex() const { return {p, q}; }
  double det_a() const { return p * p + q * q; }
  double tr_a() const { return 2.0 * p; }
};

/// Left-invariant vector field: value (alpha, eta, beta) at the identity,
/// extended by left translation.
struct InvariantField {
  double alpha = 0.0;
  Vec2 eta = Vec2::Zero();
  double beta = 0.0;

  AlgebraElement at_identity() const { return {alpha, eta, beta}; }
  static InvariantField from_element(const AlgebraElement& x) { return {x.alpha, x.eta, x.beta}; }
};

/// (0, A v + (I - R(theta)) J xi, a*theta) in cover coordinates.
Vec4 eval_linear(const LinearField& x, const CoverElement& g);

/// (alpha, R(theta) eta, beta).
Vec4 eval_invariant(const InvariantField& y, const CoverElement& g);

/// The derivation associated with a linear field (r = 0 always).
DerivationMatrix derivation_of(const LinearField& x);

/// Closed-form automorphism flow: theta fixed, v solves vdot = A v + const,
/// phi advances by a*theta*tau.
CoverElement flow(const LinearField& x, double tau, const CoverElement& g);

/// Flow on G itself: project o flow o lift. A genuine automorphism flow of
/// G only when x.a is an integer; exposed anyway for trajectory reporting.
GroupElement flow(const LinearField& x, double tau, const GroupElement& g);

/// Differential of the time-t flow at the identity, e^{tD}.
Mat4 flow_differential_at_identity(const LinearField& x, double t);

}  // namespace lielcs
