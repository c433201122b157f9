#pragma once

#include <array>

#include <Eigen/Core>

#include "lielcs/common.hpp"

namespace lielcs {

/// Numerical rank with the scale-invariant policy used across the library:
/// a singular value counts as nonzero iff sigma > 1e-9 * max(1, sigma_max).
int svd_rank(const Eigen::MatrixXd& m);

/// Orthonormal basis (columns) of the column space of m, cut at svd_rank.
Eigen::MatrixXd column_space_basis(const Eigen::MatrixXd& m);

/// Monic characteristic polynomial coefficients of a 4x4 matrix:
/// p(x) = x^4 + c[0] x^3 + c[1] x^2 + c[2] x + c[3]  (Faddeev-LeVerrier).
std::array<double, 4> characteristic_polynomial(const Mat4& m);

/// Matrix exponential by scaling-and-squaring with a truncated series
/// kernel; absolute accuracy well below 1e-12 for the norms that occur here.
Mat4 expm(const Mat4& m);

/// e^z - 1, accurate for small |z|.
Complex expm1_complex(Complex z);

/// (e^z - 1) / z with a series fallback when |z| < 1e-8.
Complex expm1_over_z(Complex z);

/// Decompose a 2x2 matrix commuting with J as p*I + q*J. Throws
/// Errc::invalid_argument when ||AJ - JA||_inf > 1e-9.
struct RotScale {
  double p;
  double q;
};
RotScale decompose_commuting(const Mat2& a);

}  // namespace lielcs
