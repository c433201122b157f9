#include "lielcs/larc.hpp"

#include <cmath>

#include <Eigen/Dense>

namespace lielcs {

namespace {

constexpr int kClosureCap = 8;

/// Generic rank closure over a list of 1-step expansions. Vectors live in
/// R^n columns; expand(basis) appends candidate columns.
template <typename Expand>
int closure_dim(Eigen::MatrixXd seed, Expand expand) {
  Eigen::MatrixXd basis = column_space_basis(seed);
  for (int step = 0; step < kClosureCap; ++step) {
    if (basis.cols() == 0 || basis.cols() == basis.rows()) break;
    Eigen::MatrixXd candidates = expand(basis);
    Eigen::MatrixXd augmented(basis.rows(), basis.cols() + candidates.cols());
    augmented << basis, candidates;
    Eigen::MatrixXd next = column_space_basis(augmented);
    if (next.cols() == basis.cols()) break;
    basis = next;
  }
  return static_cast<int>(basis.cols());
}

}  // namespace

ControlSystem::ControlSystem(const LinearField& x, const InvariantField& y, double omega_minus_,
                             double omega_plus_)
    : X(x), Y(y), omega_minus(omega_minus_), omega_plus(omega_plus_) {
  if (!(omega_minus < 0.0 && 0.0 < omega_plus))
    throw Error(Errc::invalid_config, "control range must satisfy omega_minus < 0 < omega_plus");
}

std::string to_string(Category c) {
  switch (c) {
    case Category::NOT_LARC: return "NOT_LARC";
    case Category::EMPTY_INTERIOR_CONTROL_SETS: return "EMPTY_INTERIOR_CONTROL_SETS";
    case Category::UNIQUE_CONTROL_SET: return "UNIQUE_CONTROL_SET";
    case Category::CONTROLLABLE: return "CONTROLLABLE";
  }
  return "UNKNOWN";
}

Subalgebra invariant_subalgebra(const DerivationMatrix& d, const AlgebraElement& y) {
  const Mat4 dm = d.matrix();
  Eigen::MatrixXd seed = y.to_vec4();
  Eigen::MatrixXd basis = column_space_basis(seed);
  for (int step = 0; step < kClosureCap; ++step) {
    if (basis.cols() == 0 || basis.cols() == 4) break;
    const int n = static_cast<int>(basis.cols());
    Eigen::MatrixXd candidates(4, n + n * (n - 1) / 2);
    for (int i = 0; i < n; ++i) candidates.col(i) = dm * basis.col(i);
    int k = n;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        candidates.col(k++) = bracket(AlgebraElement::from_vec4(basis.col(i)),
                                      AlgebraElement::from_vec4(basis.col(j)))
                                  .to_vec4();
    Eigen::MatrixXd augmented(4, basis.cols() + candidates.cols());
    augmented << basis, candidates;
    Eigen::MatrixXd next = column_space_basis(augmented);
    if (next.cols() == basis.cols()) break;
    basis = next;
  }
  Subalgebra out;
  out.dim = static_cast<int>(basis.cols());
  for (int i = 0; i < out.dim; ++i)
    out.basis.push_back(AlgebraElement::from_vec4(basis.col(i)));
  return out;
}

bool larc_holds(const ControlSystem& sys) {
  return invariant_subalgebra(derivation_of(sys.X), sys.Y.at_identity()).dim == 4;
}

bool larc_analytic(const ControlSystem& sys) {
  // The split criterion needs a != 0, not a^2 + beta^2 != 0: with a = 0 the
  // control drives theta and phi through the same integral of u, so the
  // closure stays inside a 3D coset no matter what beta is.
  if (sys.X.a * sys.X.a <= 1e-18) return false;
  // projected closure in se(2) coordinates (alpha, eta): Dhat = (xi | A),
  // bracket inherited from the E-basis restricted to the first 3 coordinates
  Eigen::Matrix3d dhat = Eigen::Matrix3d::Zero();
  dhat.block<2, 1>(1, 0) = sys.X.xi;
  dhat.block<2, 2>(1, 1) = sys.X.a_matrix();
  const Mat2 j = j_matrix();
  auto se2_bracket = [&j](const Eigen::Vector3d& x, const Eigen::Vector3d& y) {
    Eigen::Vector3d out = Eigen::Vector3d::Zero();
    out.tail<2>() = x(0) * (j * y.tail<2>()) - y(0) * (j * x.tail<2>());
    return out;
  };
  Eigen::MatrixXd seed = Eigen::Vector3d(sys.Y.alpha, sys.Y.eta.x(), sys.Y.eta.y());
  const int dim = closure_dim(seed, [&](const Eigen::MatrixXd& basis) {
    const int n = static_cast<int>(basis.cols());
    Eigen::MatrixXd out(3, n + n * (n - 1) / 2);
    for (int i = 0; i < n; ++i) out.col(i) = dhat * basis.col(i);
    int k = n;
    for (int i = 0; i < n; ++i)
      for (int jj = i + 1; jj < n; ++jj)
        out.col(k++) = se2_bracket(basis.col(i), basis.col(jj));
    return out;
  });
  return dim == 3;
}

Verdict classify(const ControlSystem& sys) {
  Verdict v;
  v.det_A = sys.X.det_a();
  v.tr_A = sys.X.tr_a();
  const Subalgebra sub = invariant_subalgebra(derivation_of(sys.X), sys.Y.at_identity());
  v.subalgebra_dim = sub.dim;
  v.larc = (sub.dim == 4);
  if (!v.larc) {
    v.category = Category::NOT_LARC;
  } else if (v.det_A <= 1e-12) {
    v.category = Category::EMPTY_INTERIOR_CONTROL_SETS;
  } else if (std::abs(sys.X.p) > 1e-12) {
    v.category = Category::UNIQUE_CONTROL_SET;
  } else {
    v.category = Category::CONTROLLABLE;
  }
  return v;
}

}  // namespace lielcs
