#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace lielcs {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kPi = 3.1415926535897932384626433832795;

using Vec2 = Eigen::Vector2d;
using Vec4 = Eigen::Vector4d;
using Mat2 = Eigen::Matrix2d;
using Mat4 = Eigen::Matrix4d;
using Complex = std::complex<double>;

enum class Errc {
  control_out_of_range,
  invalid_window,
  invalid_config,
  invalid_spec,
  invalid_argument,
  precondition_violated,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

/// Canonical angle representative in [0, 2*pi).
inline double wrap_angle(double x) {
  double y = std::fmod(x, kTwoPi);
  if (y < 0.0) y += kTwoPi;
  if (y >= kTwoPi) y = 0.0;  // fmod rounding can land exactly on 2*pi
  return y;
}

/// Principal representative in (-pi, pi].
inline double principal_angle(double x) {
  double y = wrap_angle(x);
  if (y > kPi) y -= kTwoPi;
  return y;
}

/// Distance between two angles as points on the circle.
inline double angle_dist(double a, double b) { return std::abs(principal_angle(a - b)); }

/// R^2 <-> C identification: (x, y) <-> x + iy, J <-> i.
inline Complex to_complex(const Vec2& v) { return {v.x(), v.y()}; }
inline Vec2 to_vec2(Complex z) { return {z.real(), z.imag()}; }

inline Mat2 j_matrix() {
  Mat2 j;
  j << 0.0, -1.0, 1.0, 0.0;
  return j;
}

}  // namespace lielcs
