#pragma once

#include <string>
#include <vector>

#include "lielcs/algebra.hpp"
#include "lielcs/fields.hpp"

namespace lielcs {

/// One-input linear control system: drift X, control direction Y, control
/// range Omega = [omega_minus, omega_plus] with 0 in its interior.
struct ControlSystem {
  LinearField X;
  InvariantField Y;
  double omega_minus = -1.0;
  double omega_plus = 1.0;

  ControlSystem() = default;
  /// Throws Errc::invalid_config unless omega_minus < 0 < omega_plus.
  ControlSystem(const LinearField& x, const InvariantField& y, double omega_minus_,
                double omega_plus_);

  bool admits(double u) const { return u >= omega_minus && u <= omega_plus; }
};

enum class Category {
  NOT_LARC,
  EMPTY_INTERIOR_CONTROL_SETS,
  UNIQUE_CONTROL_SET,
  CONTROLLABLE,
};

std::string to_string(Category c);

struct Verdict {
  bool larc = false;
  Category category = Category::NOT_LARC;
  double det_A = 0.0;
  double tr_A = 0.0;
  int subalgebra_dim = 0;
};

struct Subalgebra {
  std::vector<AlgebraElement> basis;  // orthonormal in E-coordinates
  int dim = 0;
};

/// Smallest D-invariant Lie subalgebra containing y, by closure under
/// D and pairwise brackets with rank growth decided by the svd_rank policy.
Subalgebra invariant_subalgebra(const DerivationMatrix& d, const AlgebraElement& y);

/// LARC by closure: the subalgebra generated by Y reaches dimension 4.
bool larc_holds(const ControlSystem& sys);

/// LARC by the split criterion: the projected SE(2) closure reaches
/// dimension 3 and a != 0. (beta alone cannot rescue the rank: with a = 0
/// the phi and theta coordinates respond to the same integral of u.)
bool larc_analytic(const ControlSystem& sys);

/// Control-set classification: NOT_LARC, then det A = 0, then tr A != 0,
/// else controllable. Zero tests use |.| <= 1e-12 on p and p^2 + q^2.
Verdict classify(const ControlSystem& sys);

}  // namespace lielcs
