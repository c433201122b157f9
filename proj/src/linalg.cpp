#include "lielcs/linalg.hpp"

#include <cmath>

#include <Eigen/SVD>

namespace lielcs {

int svd_rank(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  const double cut = 1e-9 * std::max(1.0, sv(0));
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++rank;
  return rank;
}

Eigen::MatrixXd column_space_basis(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return Eigen::MatrixXd(m.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double cut = 1e-9 * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++rank;
  return svd.matrixU().leftCols(rank);
}

std::array<double, 4> characteristic_polynomial(const Mat4& m) {
  // Faddeev-LeVerrier recursion: M_1 = m, c_k = -tr(M_k)/k, M_{k+1} = m (M_k + c_k I).
  std::array<double, 4> c{};
  Mat4 mk = m;
  for (int k = 1; k <= 4; ++k) {
    c[k - 1] = -mk.trace() / k;
    if (k < 4) mk = m * (mk + c[k - 1] * Mat4::Identity());
  }
  return c;
}

Mat4 expm(const Mat4& m) {
  const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();  // inf-norm
  int squarings = 0;
  double scale = 1.0;
  while (norm * scale > 0.5) {
    scale *= 0.5;
    ++squarings;
  }
  const Mat4 a = m * scale;
  Mat4 term = Mat4::Identity();
  Mat4 sum = Mat4::Identity();
  for (int k = 1; k <= 18; ++k) {
    term = (term * a) / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

Complex expm1_complex(Complex z) {
  // e^z - 1 without the cancellation of exp(z) - 1 for small |z|:
  // real part = expm1(x) cos(y) - 2 sin^2(y/2), imag part = e^x sin(y)
  const double x = z.real(), y = z.imag();
  const double s = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y)};
}

Complex expm1_over_z(Complex z) {
  if (std::abs(z) < 1e-8) {
    // 1 + z/2 + z^2/6 + z^3/24; next term is below 1e-34 at the switch point
    return 1.0 + z * (0.5 + z * (1.0 / 6.0 + z * (1.0 / 24.0)));
  }
  return expm1_complex(z) / z;
}

RotScale decompose_commuting(const Mat2& a) {
  const Mat2 j = j_matrix();
  const double resid = (a * j - j * a).cwiseAbs().maxCoeff();
  if (resid > 1e-9)
    throw Error(Errc::invalid_argument,
                "matrix does not commute with J: ||AJ-JA||_inf = " + std::to_string(resid));
  return {0.5 * (a(0, 0) + a(1, 1)), 0.5 * (a(1, 0) - a(0, 1))};
}

}  // namespace lielcs
