#pragma once

#include <vector>

#include "lielcs/common.hpp"
#include "lielcs/linalg.hpp"

namespace lielcs {

/// Element of the 4D solvable Lie algebra se(2) (+) z in the basis
/// (E1, E2, E3, E4): alpha on the rotation generator E1, eta on the
/// translation generators (E2, E3), beta on the central generator E4.
struct AlgebraElement {
  double alpha = 0.0;
  Vec2 eta = Vec2::Zero();
  double beta = 0.0;

  Vec4 to_vec4() const { return {alpha, eta.x(), eta.y(), beta}; }
  static AlgebraElement from_vec4(const Vec4& v) { return {v(0), {v(1), v(2)}, v(3)}; }

  AlgebraElement operator+(const AlgebraElement& o) const {
    return {alpha + o.alpha, eta + o.eta, beta + o.beta};
  }
  AlgebraElement operator-(const AlgebraElement& o) const {
    return {alpha - o.alpha, eta - o.eta, beta - o.beta};
  }
  AlgebraElement operator-() const { return {-alpha, -eta, -beta}; }
  AlgebraElement operator*(double s) const { return {s * alpha, s * eta, s * beta}; }

  double norm() const { return to_vec4().norm(); }
};

inline AlgebraElement operator*(double s, const AlgebraElement& x) { return x * s; }

inline AlgebraElement basis_e1() { return {1.0, {0.0, 0.0}, 0.0}; }
inline AlgebraElement basis_e2() { return {0.0, {1.0, 0.0}, 0.0}; }
inline AlgebraElement basis_e3() { return {0.0, {0.0, 1.0}, 0.0}; }
inline AlgebraElement basis_e4() { return {0.0, {0.0, 0.0}, 1.0}; }

/// Lie bracket. Nonzero structure constants: [E1,E2] = E3, [E1,E3] = -E2;
/// E4 is central.
AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y);

/// Re-express a vector given on (X1, X2, X3, [X1,X2]) in the E-basis,
/// inverting E1 = X2, E2 = [X1,X2], E3 = X1, E4 = X3 + [X1,X2].
AlgebraElement from_horizontal(const Vec4& c);

/// Derivation of the algebra, stored in the shape its structure forces:
/// zero first row, middle block (xi | A | 0) with A = p*I + q*J, last row
/// (a, 0, 0, r). A*J = J*A holds by construction.
struct DerivationMatrix {
  Vec2 xi = Vec2::Zero();
  double p = 0.0;
  double q = 0.0;
  double a = 0.0;
  double r = 0.0;

  DerivationMatrix() = default;
  DerivationMatrix(const Vec2& xi_, double p_, double q_, double a_, double r_)
      : xi(xi_), p(p_), q(q_), a(a_), r(r_) {}
  /// Accepts a raw 2x2 block for A; rejects it unless AJ = JA.
  DerivationMatrix(const Vec2& xi_, const Mat2& a_block, double a_, double r_);

  Mat2 a_matrix() const;
  Mat4 matrix() const;
};

/// Automorphism of the algebra: block matrix with (1,1) entry sign = +/-1,
/// invertible P with PJ = sign*JP, free eta and a, nonzero t.
struct AlgebraAutomorphism {
  int sign = 1;
  Vec2 eta = Vec2::Zero();
  Mat2 P = Mat2::Identity();
  double a = 0.0;
  double t = 1.0;

  /// Validates the constraints; throws Errc::invalid_argument otherwise.
  AlgebraAutomorphism(int sign_, const Vec2& eta_, const Mat2& p_, double a_, double t_);

  Mat4 matrix() const;
  AlgebraElement apply(const AlgebraElement& x) const;
};

AlgebraElement apply_derivation(const DerivationMatrix& d, const AlgebraElement& y);

/// Largest entrywise violation of D[x,y] = [Dx,y] + [x,Dy] over the 6 basis
/// pairs.
double leibniz_residual(const Mat4& m);

/// Largest entrywise violation of M[x,y] = [Mx,My] over the 6 basis pairs.
double morphism_residual(const Mat4& m);

/// Leibniz identity holds on all basis pairs, entrywise within tol.
bool is_derivation(const Mat4& m, double tol);

/// M invertible (svd_rank policy) and the morphism identity holds within
/// tol.
bool is_automorphism(const Mat4& m, double tol);

/// Dimensions of the derived series g = g^(0) > g^(1) > ... computed by
/// bracket closure and rank reduction; stops at zero or stabilization.
std::vector<int> derived_series();
std::vector<int> derived_series(const std::vector<AlgebraElement>& generators);

/// Lower central series dimensions (g_{k+1} = [g, g_k]); stabilizes at 2
/// here, certifying non-nilpotency.
std::vector<int> lower_central_series();

/// Matrix of y -> [x, y] in the E-basis.
Mat4 ad_matrix(const AlgebraElement& x);

}  // namespace lielcs
