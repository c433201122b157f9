#include "lielcs/algebra.hpp"

#include <Eigen/Dense>

namespace lielcs {

namespace {

const Mat2 kJ = j_matrix();

std::vector<AlgebraElement> full_basis() {
  return {basis_e1(), basis_e2(), basis_e3(), basis_e4()};
}

AlgebraElement column_as_element(const Mat4& m, int j) {
  return AlgebraElement::from_vec4(m.col(j));
}

/// One closure step of the derived-series recursion: span of all pairwise
/// brackets of the given orthonormal basis columns.
Eigen::MatrixXd bracket_span(const Eigen::MatrixXd& basis) {
  const int n = static_cast<int>(basis.cols());
  Eigen::MatrixXd out(4, std::max(1, n * (n - 1) / 2));
  out.setZero();
  int k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      out.col(k++) = bracket(AlgebraElement::from_vec4(basis.col(i)),
                             AlgebraElement::from_vec4(basis.col(j)))
                         .to_vec4();
  return out;
}

std::vector<int> series_dims(Eigen::MatrixXd current,
                             const Eigen::MatrixXd& outer,  // empty => derived series
                             int cap = 8) {
  std::vector<int> dims;
  current = column_space_basis(current);
  dims.push_back(static_cast<int>(current.cols()));
  for (int step = 0; step < cap; ++step) {
    Eigen::MatrixXd next;
    if (outer.size() == 0) {
      next = bracket_span(current);
    } else {
      // lower central: brackets of the fixed outer basis against the current term
      next = Eigen::MatrixXd::Zero(4, std::max<Eigen::Index>(1, outer.cols() * current.cols()));
      int k = 0;
      for (Eigen::Index i = 0; i < outer.cols(); ++i)
        for (Eigen::Index j = 0; j < current.cols(); ++j)
          next.col(k++) = bracket(AlgebraElement::from_vec4(outer.col(i)),
                                  AlgebraElement::from_vec4(current.col(j)))
                              .to_vec4();
    }
    next = column_space_basis(next);
    const int dim = static_cast<int>(next.cols());
    dims.push_back(dim);
    if (dim == 0 || dim == dims[dims.size() - 2]) break;
    current = next;
  }
  return dims;
}

}  // namespace

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) {
  return {0.0, x.alpha * (kJ * y.eta) - y.alpha * (kJ * x.eta), 0.0};
}

AlgebraElement from_horizontal(const Vec4& c) {
  // (X1, X2, X3, [X1,X2]) -> E-basis: X2 = E1, [X1,X2] = E2, X1 = E3, X3 = E4 - E2.
  return {c(1), {c(3) - c(2), c(0)}, c(2)};
}

DerivationMatrix::DerivationMatrix(const Vec2& xi_, const Mat2& a_block, double a_, double r_)
    : xi(xi_), a(a_), r(r_) {
  const RotScale pq = decompose_commuting(a_block);
  p = pq.p;
  q = pq.q;
}

Mat2 DerivationMatrix::a_matrix() const {
  Mat2 m;
  m << p, -q, q, p;
  return m;
}

Mat4 DerivationMatrix::matrix() const {
  Mat4 m = Mat4::Zero();
  m.block<2, 1>(1, 0) = xi;
  m.block<2, 2>(1, 1) = a_matrix();
  m(3, 0) = a;
  m(3, 3) = r;
  return m;
}

AlgebraAutomorphism::AlgebraAutomorphism(int sign_, const Vec2& eta_, const Mat2& p_, double a_,
                                         double t_)
    : sign(sign_), eta(eta_), P(p_), a(a_), t(t_) {
  if (sign != 1 && sign != -1)
    throw Error(Errc::invalid_argument, "automorphism sign must be +1 or -1");
  if (t == 0.0) throw Error(Errc::invalid_argument, "automorphism t must be nonzero");
  const double resid = (P * kJ - sign * (kJ * P)).cwiseAbs().maxCoeff();
  if (resid > 1e-9)
    throw Error(Errc::invalid_argument, "automorphism block P violates PJ = sign*JP");
  if (std::abs(P.determinant()) <= 1e-12)
    throw Error(Errc::invalid_argument, "automorphism block P must be invertible");
}

Mat4 AlgebraAutomorphism::matrix() const {
  Mat4 m = Mat4::Zero();
  m(0, 0) = sign;
  m.block<2, 1>(1, 0) = eta;
  m.block<2, 2>(1, 1) = P;
  m(3, 0) = a;
  m(3, 3) = t;
  return m;
}

AlgebraElement AlgebraAutomorphism::apply(const AlgebraElement& x) const {
  return AlgebraElement::from_vec4(matrix() * x.to_vec4());
}

AlgebraElement apply_derivation(const DerivationMatrix& d, const AlgebraElement& y) {
  return {0.0, y.alpha * d.xi + d.a_matrix() * y.eta, d.a * y.alpha + d.r * y.beta};
}

double leibniz_residual(const Mat4& m) {
  const auto basis = full_basis();
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const AlgebraElement mi = column_as_element(m, i);
      const AlgebraElement mj = column_as_element(m, j);
      const AlgebraElement lhs =
          AlgebraElement::from_vec4(m * bracket(basis[i], basis[j]).to_vec4());
      const AlgebraElement rhs = bracket(mi, basis[j]) + bracket(basis[i], mj);
      worst = std::max(worst, (lhs - rhs).to_vec4().cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

double morphism_residual(const Mat4& m) {
  const auto basis = full_basis();
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const AlgebraElement lhs =
          AlgebraElement::from_vec4(m * bracket(basis[i], basis[j]).to_vec4());
      const AlgebraElement rhs = bracket(column_as_element(m, i), column_as_element(m, j));
      worst = std::max(worst, (lhs - rhs).to_vec4().cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

bool is_derivation(const Mat4& m, double tol) { return leibniz_residual(m) <= tol; }

bool is_automorphism(const Mat4& m, double tol) {
  return svd_rank(m) == 4 && morphism_residual(m) <= tol;
}

std::vector<int> derived_series() { return derived_series(full_basis()); }

std::vector<int> derived_series(const std::vector<AlgebraElement>& generators) {
  Eigen::MatrixXd m(4, std::max<std::size_t>(1, generators.size()));
  m.setZero();
  for (std::size_t i = 0; i < generators.size(); ++i) m.col(static_cast<int>(i)) = generators[i].to_vec4();
  return series_dims(m, Eigen::MatrixXd());
}

std::vector<int> lower_central_series() {
  Eigen::MatrixXd whole(4, 4);
  const auto basis = full_basis();
  for (int i = 0; i < 4; ++i) whole.col(i) = basis[i].to_vec4();
  return series_dims(whole, whole);
}

Mat4 ad_matrix(const AlgebraElement& x) {
  Mat4 m;
  const auto basis = full_basis();
  for (int j = 0; j < 4; ++j) m.col(j) = bracket(x, basis[j]).to_vec4();
  return m;
}

}  // namespace lielcs
