#include "lielcs/group.hpp"

#include <cmath>

#include <Eigen/LU>

namespace lielcs {

namespace {

const Mat2 kJ = j_matrix();

bool near_integer(double x) { return std::abs(x - std::round(x)) <= 1e-9; }

}  // namespace

Mat2 rotation(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  Mat2 r;
  r << c, -s, s, c;
  return r;
}

GroupElement multiply(const GroupElement& g1, const GroupElement& g2) {
  return {wrap_angle(g1.theta + g2.theta), g1.v + rotation(g1.theta) * g2.v,
          wrap_angle(g1.phi + g2.phi)};
}

CoverElement multiply(const CoverElement& g1, const CoverElement& g2) {
  return {g1.theta + g2.theta, g1.v + rotation(g1.theta) * g2.v, g1.phi + g2.phi};
}

GroupElement inverse(const GroupElement& g) {
  return {wrap_angle(-g.theta), -(rotation(-g.theta) * g.v), wrap_angle(-g.phi)};
}

CoverElement inverse(const CoverElement& g) {
  return {-g.theta, -(rotation(-g.theta) * g.v), -g.phi};
}

GroupElement project(const CoverElement& c) {
  return {wrap_angle(c.theta), c.v, wrap_angle(c.phi)};
}

CoverElement lift(const GroupElement& g) {
  return {wrap_angle(g.theta), g.v, wrap_angle(g.phi)};
}

Mat2 v_matrix(double alpha) {
  double s, c;  // s = sin a / a, c = (1 - cos a) / a
  if (std::abs(alpha) < 1e-4) {
    const double a2 = alpha * alpha;
    s = 1.0 - a2 / 6.0 + a2 * a2 / 120.0;
    c = alpha * (0.5 - a2 / 24.0 + a2 * a2 / 720.0);
  } else {
    s = std::sin(alpha) / alpha;
    c = (1.0 - std::cos(alpha)) / alpha;
  }
  return s * Mat2::Identity() + c * kJ;
}

CoverElement exp_map_cover(const AlgebraElement& x) {
  return {x.alpha, v_matrix(x.alpha) * x.eta, x.beta};
}

GroupElement exp_map(const AlgebraElement& x) { return project(exp_map_cover(x)); }

AlgebraElement log_map(const GroupElement& g) {
  const double theta = principal_angle(g.theta);
  const double phi = principal_angle(g.phi);
  // V(theta) = s I + c J  =>  V^-1 = (s I - c J) / (s^2 + c^2); nonsingular on (-pi, pi]
  const Mat2 v = v_matrix(theta);
  const double s = v(0, 0), c = v(1, 0);
  const Mat2 vinv = (s * Mat2::Identity() - c * kJ) / (s * s + c * c);
  return {theta, vinv * g.v, phi};
}

GroupAutomorphism::GroupAutomorphism(int sign_, const Mat2& p_, const Vec2& eta_, double a_,
                                     double t_)
    : sign(sign_), P(p_), eta(eta_), a(a_), t(t_) {
  if (sign != 1 && sign != -1)
    throw Error(Errc::invalid_argument, "group automorphism sign must be +1 or -1");
  if (t == 0.0) throw Error(Errc::invalid_argument, "group automorphism t must be nonzero");
  const double resid = (P * kJ - sign * (kJ * P)).cwiseAbs().maxCoeff();
  if (resid > 1e-9)
    throw Error(Errc::invalid_argument, "group automorphism block P violates PJ = sign*JP");
  if (std::abs(P.determinant()) <= 1e-12)
    throw Error(Errc::invalid_argument, "group automorphism block P must be invertible");
}

CoverElement apply_group_automorphism(const GroupAutomorphism& f, const CoverElement& g) {
  const double st = f.sign * g.theta;
  return {st, f.P * g.v + (Mat2::Identity() - rotation(st)) * (kJ * f.eta),
          f.t * g.phi + f.a * g.theta};
}

GroupElement apply_group_automorphism(const GroupAutomorphism& f, const GroupElement& g) {
  if (!near_integer(f.a) || !near_integer(f.t))
    throw Error(Errc::precondition_violated,
                "automorphism descends to G only for integer a and t");
  return project(apply_group_automorphism(f, lift(g)));
}

GroupElement translate_phase(const GroupElement& g, double phi1) {
  return {g.theta, g.v, wrap_angle(g.phi + phi1)};
}

}  // namespace lielcs
