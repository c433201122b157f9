#pragma once

#include "lielcs/algebra.hpp"
#include "lielcs/common.hpp"

namespace lielcs {

/// Point of G = SE(2) x S^1: orientation theta, retinal position v, phase
/// phi. Both angles are kept in [0, 2*pi); every operation re-wraps.
struct GroupElement {
  double theta = 0.0;
  Vec2 v = Vec2::Zero();
  double phi = 0.0;

  static GroupElement identity() { return {}; }
};

/// Point of the universal cover: same coordinates with both angles
/// unwrapped. Flows and automorphisms are single-valued here.
struct CoverElement {
  double theta = 0.0;
  Vec2 v = Vec2::Zero();
  double phi = 0.0;

  static CoverElement identity() { return {}; }

  Vec4 to_vec4() const { return {theta, v.x(), v.y(), phi}; }
  static CoverElement from_vec4(const Vec4& s) { return {s(0), {s(1), s(2)}, s(3)}; }
};

/// Counter-clockwise rotation R(theta) = e^{theta J}.
Mat2 rotation(double theta);

GroupElement multiply(const GroupElement& g1, const GroupElement& g2);
CoverElement multiply(const CoverElement& g1, const CoverElement& g2);

GroupElement inverse(const GroupElement& g);
CoverElement inverse(const CoverElement& g);

GroupElement project(const CoverElement& c);
CoverElement lift(const GroupElement& g);

/// V(alpha) = (sin a / a) I + ((1 - cos a)/a) J, the exp jacobian on the
/// translation part; series-evaluated for |alpha| < 1e-4.
Mat2 v_matrix(double alpha);

CoverElement exp_map_cover(const AlgebraElement& x);
GroupElement exp_map(const AlgebraElement& x);

/// Principal logarithm: theta and phi taken in (-pi, pi], where V stays
/// invertible. exp_map(log_map(g)) == g.
AlgebraElement log_map(const GroupElement& g);

/// Automorphism of G determined by its differential: theta -> sign*theta,
/// v -> P v + (I - R(sign*theta)) J eta, phi -> t*phi + a*theta.
/// For sign = +1 the translation part reads (I - R(theta)) J eta.
struct GroupAutomorphism {
  int sign = 1;
  Mat2 P = Mat2::Identity();
  Vec2 eta = Vec2::Zero();
  double a = 0.0;
  double t = 1.0;

  GroupAutomorphism() = default;
  /// Validates sign, PJ = sign*JP, invertibility of P, t != 0.
  GroupAutomorphism(int sign_, const Mat2& p_, const Vec2& eta_, double a_, double t_);

  static GroupAutomorphism identity_automorphism() { return {}; }
};

CoverElement apply_group_automorphism(const GroupAutomorphism& f, const CoverElement& g);

/// G-level application. theta -> a*theta and phi -> t*phi descend to the
/// torus factors only for integer a and t; rejects anything else.
GroupElement apply_group_automorphism(const GroupAutomorphism& f, const GroupElement& g);

/// Right translation by (0, phi1): the phase shifts, everything else stays.
GroupElement translate_phase(const GroupElement& g, double phi1);

}  // namespace lielcs
