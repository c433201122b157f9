#include "lielcs/fields.hpp"

#include <cmath>

#include "lielcs/linalg.hpp"

namespace lielcs {

namespace {
const Mat2 kJ = j_matrix();
}

LinearField::LinearField(const Vec2& xi_, const Mat2& a_block, double a_) : xi(xi_), a(a_) {
  const RotScale pq = decompose_commuting(a_block);
  p = pq.p;
  q = pq.q;
}

Mat2 LinearField::a_matrix() const {
  Mat2 m;
  m << p, -q, q, p;
  return m;
}

Vec4 eval_linear(const LinearField& x, const CoverElement& g) {
  const Vec2 vdot = x.a_matrix() * g.v + (Mat2::Identity() - rotation(g.theta)) * (kJ * x.xi);
  return {0.0, vdot.x(), vdot.y(), x.a * g.theta};
}

Vec4 eval_invariant(const InvariantField& y, const CoverElement& g) {
  const Vec2 vdot = rotation(g.theta) * y.eta;
  return {y.alpha, vdot.x(), vdot.y(), y.beta};
}

DerivationMatrix derivation_of(const LinearField& x) { return {x.xi, x.p, x.q, x.a, 0.0}; }

CoverElement flow(const LinearField& x, double tau, const CoverElement& g) {
  // vdot = A v + b with b = (I - R(theta)) J xi frozen along the flow;
  // in complex coordinates A acts as c = p + iq.
  const Complex c = x.a_complex();
  const Complex ect = std::exp(c * tau);
  const Complex b = to_complex((Mat2::Identity() - rotation(g.theta)) * (kJ * x.xi));
  const Complex v = ect * to_complex(g.v) + tau * expm1_over_z(c * tau) * b;
  return {g.theta, to_vec2(v), g.phi + x.a * g.theta * tau};
}

GroupElement flow(const LinearField& x, double tau, const GroupElement& g) {
  return project(flow(x, tau, lift(g)));
}

Mat4 flow_differential_at_identity(const LinearField& x, double t) {
  return expm(t * derivation_of(x).matrix());
}

}  // namespace lielcs
