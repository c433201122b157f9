#include "lielcs/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "lielcs/dynamics.hpp"
#include "lielcs/fields.hpp"
#include "lielcs/linalg.hpp"
#include "lielcs/random.hpp"

namespace lielcs {

namespace {

using BracketFn = std::function<AlgebraElement(const AlgebraElement&, const AlgebraElement&)>;

double vec4_dist(const Vec4& a, const Vec4& b) { return (a - b).cwiseAbs().maxCoeff(); }

double cover_dist(const CoverElement& a, const CoverElement& b) {
  return vec4_dist(a.to_vec4(), b.to_vec4());
}

double wrapped_dist(const GroupElement& a, const GroupElement& b) {
  double d = std::max(angle_dist(a.theta, b.theta), angle_dist(a.phi, b.phi));
  return std::max(d, (a.v - b.v).cwiseAbs().maxCoeff());
}

PropertyResult make_result(std::string name, int trials, double max_error, double tol) {
  return {std::move(name), trials, max_error, tol, max_error <= tol};
}

/// Central-difference Jacobian of a cover-coordinate vector field, step h.
Mat4 fd_jacobian(const std::function<Vec4(const CoverElement&)>& f, const CoverElement& at,
                 double h) {
  Mat4 jac;
  for (int k = 0; k < 4; ++k) {
    Vec4 hi = at.to_vec4(), lo = at.to_vec4();
    hi(k) += h;
    lo(k) -= h;
    jac.col(k) = (f(CoverElement::from_vec4(hi)) - f(CoverElement::from_vec4(lo))) / (2.0 * h);
  }
  return jac;
}

// ---------------------------------------------------------------- algebra

std::vector<PropertyResult> algebra_suite(int trials, std::uint64_t seed,
                                          const VerifyOptions& opts) {
  std::vector<PropertyResult> out;
  SplitMix64 rng(seed);

  BracketFn br = [](const AlgebraElement& x, const AlgebraElement& y) { return bracket(x, y); };
  if (opts.inject_bracket_bug) {
    // one term sign-flipped; a full sign flip would still be a Lie bracket
    br = [](const AlgebraElement& x, const AlgebraElement& y) {
      const Mat2 j = j_matrix();
      return AlgebraElement{0.0, x.alpha * (j * y.eta) + y.alpha * (j * x.eta), 0.0};
    };
  }

  {
    double worst = 0.0;
    for (int i = 0; i < trials; ++i) {
      const AlgebraElement x = draw_algebra_element(rng), y = draw_algebra_element(rng);
      worst = std::max(worst, (br(x, y) + br(y, x)).to_vec4().cwiseAbs().maxCoeff());
    }
    out.push_back(make_result("algebra/bracket-antisymmetry", trials, worst, 0.0));
  }
  {
    double worst = 0.0;
    for (int i = 0; i < trials; ++i) {
      const AlgebraElement x = draw_algebra_element(rng), y = draw_algebra_element(rng),
                           z = draw_algebra_element(rng);
      const AlgebraElement jac = br(x, br(y, z)) + br(y, br(z, x)) + br(z, br(x, y));
      worst = std::max(worst, jac.to_vec4().cwiseAbs().maxCoeff());
    }
    out.push_back(make_result("algebra/jacobi-identity", trials, worst, 1e-12));
  }
  {
    double worst = 0.0;
    for (int i = 0; i < trials; ++i)
      worst = std::max(
          worst, bracket(basis_e4(), draw_algebra_element(rng)).to_vec4().cwiseAbs().maxCoeff());
    // no other basis direction is central
    const AlgebraElement e[3] = {basis_e1(), basis_e2(), basis_e3()};
    for (const auto& x : e) {
      if (ad_matrix(x).cwiseAbs().maxCoeff() < 0.5) worst = std::max(worst, 1.0);
    }
    out.push_back(make_result("algebra/center-is-E4", trials, worst, 0.0));
  }
  {
    double worst = 0.0;
    for (int i = 0; i < trials; ++i)
      worst = std::max(worst, leibniz_residual(draw_derivation(rng).matrix()));
    out.push_back(make_result("algebra/derivation-membership", trials, worst, 1e-12));
  }
  {
    double worst = 0.0;
    for (int i = 0; i < trials; ++i) {
      const Mat4 m = draw_algebra_automorphism(rng).matrix();
      worst = std::max(worst, morphism_residual(m));
      if (svd_rank(m) != 4) worst = std::max(worst, 1.0);
    }
    out.push_back(make_result("algebra/automorphism-membership", trials, worst, 1e-12));
  }
  {
    double worst = 0.0;
    for (int i = 0; i < trials; ++i) {
      const Mat4 d1 = draw_derivation(rng).matrix(), d2 = draw_derivation(rng).matrix();
      worst = std::max(worst, leibniz_residual(d1 * d2 - d2 * d1));
    }
    out.push_back(make_result("algebra/derivation-commutator-closure", trials, worst, 1e-12));
  }
  {
    double err = 0.0;
    if (derived_series() != std::vector<int>{4, 2, 0}) err = 1.0;
    if (lower_central_series() != std::vector<int>{4, 2, 2}) err = 1.0;  // stabilizes at 2
    out.push_back(make_result("algebra/derived-series-solvable-not-nilpotent", 1, err, 0.0));
  }
  {
    // char poly of ad(E1) is x^4 + x^2: the +-i pair rules out complete solvability
    const auto c = characteristic_polynomial(ad_matrix(basis_e1()));
    const double err = std::max({std::abs(c[0]), std::abs(c[1] - 1.0), std::abs(c[2]),
                                 std::abs(c[3])});
    out.push_back(make_result("algebra/adE1-characteristic-polynomial", 1, err, 1e-12));
  }
  return out;
}

// ------------------------------------------------------------------ group

std::vector<PropertyResult> group_suite(int trials, std::uint64_t seed, const VerifyOptions&) {
  std::vector<PropertyResult> out;
  SplitMix64 rng(seed);

  {
    double worst = 0.0;
    for (int i = 0; i < trials; ++i) {
      const CoverElement c1 = draw_cover_element(rng), c2 = draw_cover_element(rng),
                         c3 = draw_cover_element(rng);
      worst = std::max(worst, cover_dist(multiply(multiply(c1, c2), c3),
                                         multiply(c1, multiply(c2, c3))));
      const GroupElement g1 = project(c1), g2 = project(c2), g3 = project(c3);
      worst = std::max(worst, wrapped_dist(multiply(multiply(g1, g2), g3),
                                           multiply(g1, multiply(g2, g3))));
    }
    out.push_back(make_result("group/associativity", trials, worst, 1e-12));
  }
  {
    double worst = 0.0;
    for (int i = 0; i < trials; ++i) {
      const GroupElement g = draw_group_element(rng);
      worst = std::max(worst, wrapped_dist(multiply(g, inverse(g)), GroupElement::identity()));
      worst = std::max(worst, wrapped_dist(multiply(inverse(g), g), GroupElement::identity()));
      worst = std::max(worst, wrapped_dist(multiply(GroupElement::identity(), g), g));
    }
    out.push_back(make_result("group/identity-inverse-laws", trials, worst, 1e-12));
  }
  {
    double worst = 0.0;
    for (int i = 0; i < trials; ++i) {
      const AlgebraElement x = draw_algebra_element(rng);
      const double t = rng.uniform(-3.0, 3.0), s = rng.uniform(-3.0, 3.0);
      worst = std::max(worst, cover_dist(multiply(exp_map_cover(x * t), exp_map_cover(x * s)),
                                         exp_map_cover(x * (t + s))));
    }
    out.push_back(make_result("group/exp-one-parameter", trials, worst, 1e-10));
  }
  {
    double worst = 0.0;
    for (int i = 0; i < trials; ++i) {
      AlgebraElement x = draw_algebra_element(rng);
      x.alpha = rng.uniform(-kPi * 0.999, kPi * 0.999);
      x.beta = rng.uniform(-kPi * 0.999, kPi * 0.999);
      const AlgebraElement back = log_map(exp_map(x));
      worst = std::max(worst, (back - x).to_vec4().cwiseAbs().maxCoeff());
      const GroupElement g = draw_group_element(rng);
      worst = std::max(worst, wrapped_dist(exp_map(log_map(g)), g));
    }
    out.push_back(make_result("group/log-exp-roundtrip", trials, worst, 1e-10));
  }
  {
    double worst = 0.0;
    for (int i = 0; i < trials; ++i) {
      const GroupElement g1 = draw_group_element(rng), g2 = draw_group_element(rng);
      worst = std::max(
          worst, wrapped_dist(project(multiply(lift(g1), lift(g2))), multiply(g1, g2)));
    }
    out.push_back(make_result("group/covering-homomorphism", trials, worst, 1e-12));
  }
  {
    double worst = 0.0;
    for (int i = 0; i < trials; ++i) {
      const GroupAutomorphism f = draw_group_automorphism(rng);
      const CoverElement g1 = draw_cover_element(rng), g2 = draw_cover_element(rng);
      worst = std::max(worst, cover_dist(apply_group_automorphism(f, multiply(g1, g2)),
                                         multiply(apply_group_automorphism(f, g1),
                                                  apply_group_automorphism(f, g2))));
    }
    out.push_back(make_result("group/automorphism-homomorphism", trials, worst, 1e-12));
  }
  {
    double worst = 0.0;
    for (int i = 0; i < trials; ++i) {
      const double t1 = rng.uniform(-7.0, 7.0), t2 = rng.uniform(-7.0, 7.0);
      worst = std::max(worst,
                       (rotation(t1) * rotation(t2) - rotation(t1 + t2)).cwiseAbs().maxCoeff());
    }
    out.push_back(make_result("group/rotation-homomorphism", trials, worst, 1e-12));
  }
  return out;
}

// ----------------------------------------------------------------- fields

std::vector<PropertyResult> fields_suite(int trials, std::uint64_t seed, const VerifyOptions&) {
  std::vector<PropertyResult> out;
  SplitMix64 rng(seed);

  {
    double worst = 0.0;
    for (int i = 0; i < trials; ++i) {
      const LinearField x = draw_linear_field(rng);
      const CoverElement g = draw_cover_element(rng);
      const double t1 = rng.uniform(-2.0, 2.0), t2 = rng.uniform(-2.0, 2.0);
      worst = std::max(worst, cover_dist(flow(x, t1 + t2, g), flow(x, t1, flow(x, t2, g))));
    }
    out.push_back(make_result("fields/flow-one-parameter", trials, worst, 1e-10));
  }
  {
    double worst = 0.0;
    for (int i = 0; i < trials; ++i) {
      const LinearField x = draw_linear_field(rng);
      const double tau = rng.uniform(-2.0, 2.0);
      const CoverElement g1 = draw_cover_element(rng), g2 = draw_cover_element(rng);
      worst = std::max(worst, cover_dist(flow(x, tau, multiply(g1, g2)),
                                         multiply(flow(x, tau, g1), flow(x, tau, g2))));
    }
    out.push_back(make_result("fields/flow-automorphism", trials, worst, 1e-10));
  }
  {
    double worst = 0.0;
    for (int i = 0; i < trials; ++i) {
      const LinearField x = draw_linear_field(rng);
      AlgebraElement v = draw_algebra_element(rng);
      v.alpha = rng.uniform(-kPi * 0.999, kPi * 0.999);
      const double t = rng.uniform(-2.0, 2.0);
      const Vec4 image = flow_differential_at_identity(x, t) * v.to_vec4();
      worst = std::max(worst, cover_dist(flow(x, t, exp_map_cover(v)),
                                         exp_map_cover(AlgebraElement::from_vec4(image))));
    }
    out.push_back(make_result("fields/flow-exp-compatibility", trials, worst, 1e-9));
  }
  {
    double worst = 0.0;
    const double h = 1e-5;
    for (int i = 0; i < trials; ++i) {
      const LinearField x = draw_linear_field(rng);
      const InvariantField y = draw_invariant_field(rng);
      // bracket oriented so that [X, Y](e) = D Y for a linear field X
      const Mat4 jx = fd_jacobian([&](const CoverElement& g) { return eval_linear(x, g); },
                                  CoverElement::identity(), h);
      const Mat4 jy = fd_jacobian([&](const CoverElement& g) { return eval_invariant(y, g); },
                                  CoverElement::identity(), h);
      const Vec4 fd = jx * eval_invariant(y, CoverElement::identity()) -
                      jy * eval_linear(x, CoverElement::identity());
      const Vec4 an = apply_derivation(derivation_of(x), y.at_identity()).to_vec4();
      worst = std::max(worst, vec4_dist(fd, an));
    }
    out.push_back(make_result("fields/derivation-finite-difference", trials, worst, 1e-5));
  }
  {
    double worst = 0.0;
    for (int i = 0; i < trials; ++i)
      worst = std::max(worst, eval_linear(draw_linear_field(rng), CoverElement::identity())
                                  .cwiseAbs()
                                  .maxCoeff());
    out.push_back(make_result("fields/identity-singularity", trials, worst, 0.0));
  }
  {
    double worst = 0.0;
    const double h = 1e-5;
    for (int i = 0; i < trials; ++i) {
      const LinearField x = draw_linear_field(rng);
      const double t = rng.uniform(-1.5, 1.5);
      const Mat4 fd = fd_jacobian(
          [&](const CoverElement& g) { return flow(x, t, g).to_vec4(); },
          CoverElement::identity(), h);
      worst = std::max(
          worst, (fd - flow_differential_at_identity(x, t)).cwiseAbs().maxCoeff());
    }
    out.push_back(make_result("fields/flow-differential-finite-difference", trials, worst, 1e-6));
  }
  return out;
}

// ------------------------------------------------------------------- larc

std::vector<PropertyResult> larc_suite(int trials, std::uint64_t seed, const VerifyOptions&) {
  std::vector<PropertyResult> out;
  SplitMix64 rng(seed);

  {
    int disagreements = 0;
    for (int i = 0; i < trials; ++i) {
      const ControlSystem sys = draw_system(rng, 0.2);
      if (larc_holds(sys) != larc_analytic(sys)) ++disagreements;
    }
    out.push_back(make_result("larc/closure-analytic-equivalence", trials,
                              static_cast<double>(disagreements), 0.0));
  }
  {
    int failures = 0;
    for (int i = 0; i < trials; ++i) {
      const ControlSystem sys = draw_system(rng, 0.2);
      const DerivationMatrix d = derivation_of(sys.X);
      const Subalgebra sub = invariant_subalgebra(d, sys.Y.at_identity());
      // one more closure step must not grow the span
      Eigen::MatrixXd m(4, sub.dim + sub.dim + sub.dim * (sub.dim - 1) / 2);
      int k = 0;
      for (const auto& b : sub.basis) m.col(k++) = b.to_vec4();
      for (const auto& b : sub.basis) m.col(k++) = d.matrix() * b.to_vec4();
      for (int a = 0; a < sub.dim; ++a)
        for (int b = a + 1; b < sub.dim; ++b)
          m.col(k++) = bracket(sub.basis[a], sub.basis[b]).to_vec4();
      if (sub.dim > 0 && svd_rank(m) != sub.dim) ++failures;
    }
    out.push_back(make_result("larc/closure-idempotent", trials,
                              static_cast<double>(failures), 0.0));
  }
  {
    int failures = 0;
    for (int i = 0; i < trials; ++i) {
      const ControlSystem sys = draw_system(rng, 0.2);
      double lambda = rng.uniform(-3.0, 3.0);
      if (std::abs(lambda) < 0.05) lambda = 0.5;
      const double mu = rng.uniform(0.1, 4.0);
      const ControlSystem scaled(sys.X,
                                 InvariantField{lambda * sys.Y.alpha, lambda * sys.Y.eta,
                                                lambda * sys.Y.beta},
                                 mu * sys.omega_minus, mu * sys.omega_plus);
      if (classify(sys).category != classify(scaled).category) ++failures;
    }
    out.push_back(make_result("larc/classification-scale-invariance", trials,
                              static_cast<double>(failures), 0.0));
  }
  {
    // AJ = JA forces A = 0 whenever det A vanishes
    int failures = 0;
    for (int i = 0; i < trials; ++i) {
      ControlSystem sys = draw_system(rng, 0.5);
      if (sys.X.det_a() < 1e-24 && (std::abs(sys.X.p) > 1e-12 || std::abs(sys.X.q) > 1e-12))
        ++failures;
    }
    out.push_back(make_result("larc/detA-zero-implies-A-zero", trials,
                              static_cast<double>(failures), 0.0));
  }
  return out;
}

// --------------------------------------------------------------- dynamics

std::vector<PropertyResult> dynamics_suite(int trials, std::uint64_t seed,
                                           const VerifyOptions&) {
  std::vector<PropertyResult> out;
  SplitMix64 rng(seed);

  {
    double worst = 0.0;
    for (int i = 0; i < trials; ++i) {
      const ControlSystem sys = draw_system(rng);
      const CoverElement s0 = draw_cover_element(rng);
      const double u = rng.uniform(sys.omega_minus, sys.omega_plus);
      const double d = rng.uniform(0.2, 2.0), split = rng.uniform(0.1, 0.9);
      const CoverElement whole = segment_exact(sys, u, d, s0);
      const CoverElement halves =
          segment_exact(sys, u, d * (1.0 - split), segment_exact(sys, u, d * split, s0));
      worst = std::max(worst, cover_dist(whole, halves));
    }
    out.push_back(make_result("dynamics/cocycle", trials, worst, 1e-10));
  }
  {
    double worst = 0.0;
    for (int i = 0; i < trials; ++i) {
      const ControlSystem sys = draw_system(rng);
      const CoverElement end =
          segment_exact(sys, 0.0, rng.uniform(0.1, 5.0), CoverElement::identity());
      worst = std::max(worst, end.to_vec4().cwiseAbs().maxCoeff());
    }
    out.push_back(make_result("dynamics/drift-singularity-fixed", trials, worst, 0.0));
  }
  {
    double worst = 0.0;
    for (int i = 0; i < trials; ++i) {
      const ControlSystem sys = draw_system(rng);
      const CoverElement s0 = draw_cover_element(rng);
      const double t = rng.uniform(0.1, 3.0);
      worst = std::max(worst,
                       cover_dist(segment_exact(sys, 0.0, t, s0), flow(sys.X, t, s0)));
    }
    out.push_back(make_result("dynamics/zero-control-matches-flow", trials, worst, 1e-10));
  }
  {
    double worst = 0.0;
    for (int i = 0; i < trials; ++i) {
      const ControlSystem sys = draw_system(rng);
      CoverElement s0 = draw_cover_element(rng);
      const double u = rng.uniform(sys.omega_minus, sys.omega_plus);
      const double t = rng.uniform(0.1, 3.0);
      const CoverElement a = segment_exact(sys, u, t, s0);
      s0.phi = rng.uniform(-10.0, 10.0);
      const CoverElement b = segment_exact(sys, u, t, s0);
      // (theta, v) must be bitwise independent of the initial phase
      if (a.theta != b.theta || a.v.x() != b.v.x() || a.v.y() != b.v.y())
        worst = std::max(worst, 1.0);
    }
    out.push_back(make_result("dynamics/phase-independence-bitwise", trials, worst, 0.0));
  }
  {
    double worst = 0.0;
    for (int i = 0; i < trials; ++i) {
      const ControlSystem sys = draw_system(rng);
      const GroupElement s0 = draw_group_element(rng);
      const double phi1 = rng.uniform(0.0, kTwoPi);
      ControlInput input;
      const int nseg = 1 + static_cast<int>(rng.below(3));
      for (int k = 0; k < nseg; ++k)
        input.segments.push_back(
            {rng.uniform(0.1, 1.0), rng.uniform(sys.omega_minus, sys.omega_plus)});
      const Trajectory base = propagate(sys, input, lift(s0), 3);
      const Trajectory shifted = propagate(sys, input, lift(translate_phase(s0, phi1)), 3);
      for (std::size_t k = 0; k < base.states.size(); ++k)
        worst = std::max(worst, wrapped_dist(translate_phase(project(base.states[k]), phi1),
                                             project(shifted.states[k])));
    }
    out.push_back(make_result("dynamics/phase-translation-equivariance", trials, worst, 1e-12));
  }
  {
    // sup |exact - rk4| over [0, 5]; includes exact and near resonance
    const int systems = std::max(3, trials / 10);
    double worst = 0.0;
    for (int i = 0; i < systems; ++i) {
      ControlSystem sys = draw_system(rng);
      double u = rng.uniform(sys.omega_minus, sys.omega_plus);
      const double mode = rng.uniform();
      if (mode < 0.2) {  // exact resonance: i u alpha == p + iq
        sys.X.p = 0.0;
        sys.X.q = u * sys.Y.alpha;
      } else if (mode < 0.4) {
        sys.X.p = 0.0;
        sys.X.q = u * sys.Y.alpha + (mode < 0.3 ? 1e-9 : 1e-6);
      }
      const CoverElement s0 = draw_cover_element(rng, kTwoPi, 1.0);
      ControlInput input;
      input.segments.push_back({5.0, u});
      const Trajectory rk = integrate_rk4(sys, input, 1e-3, s0);
      for (std::size_t k = 0; k < rk.times.size(); ++k)
        worst = std::max(
            worst, cover_dist(segment_exact(sys, u, rk.times[k], s0), rk.states[k]));
    }
    out.push_back(make_result("dynamics/exact-vs-rk4", systems, worst, 1e-8));
  }
  {
    // Richardson order check on a fixed generic system
    const ControlSystem sys(LinearField({0.3, -0.2}, 0.2, 0.7, 0.5),
                            InvariantField{0.8, {0.5, 0.1}, 0.3}, -1.0, 1.0);
    const double u = 0.7;
    const CoverElement s0{0.4, {0.5, -0.3}, 0.1};
    ControlInput input;
    input.segments.push_back({5.0, u});
    auto sup_err = [&](double h) {
      const Trajectory rk = integrate_rk4(sys, input, h, s0);
      double err = 0.0;
      for (std::size_t k = 0; k < rk.times.size(); ++k)
        err = std::max(err, cover_dist(segment_exact(sys, u, rk.times[k], s0), rk.states[k]));
      return err;
    };
    const double ratio = sup_err(0.05) / sup_err(0.025);
    const double err = (ratio >= 12.0 && ratio <= 20.0) ? 0.0 : ratio;
    out.push_back(make_result("dynamics/rk4-order-ratio", 1, err, 0.0));
  }
  return out;
}

}  // namespace

std::vector<Suite> all_suites() {
  return {Suite::algebra, Suite::group, Suite::fields, Suite::larc, Suite::dynamics};
}

std::string suite_name(Suite s) {
  switch (s) {
    case Suite::algebra: return "algebra";
    case Suite::group: return "group";
    case Suite::fields: return "fields";
    case Suite::larc: return "larc";
    case Suite::dynamics: return "dynamics";
  }
  return "unknown";
}

Suite suite_from_name(const std::string& name) {
  for (const Suite s : all_suites())
    if (suite_name(s) == name) return s;
  throw Error(Errc::invalid_argument, "unknown suite '" + name + "'");
}

std::vector<PropertyResult> run_suite(Suite suite, int trials, std::uint64_t seed,
                                      const VerifyOptions& opts) {
  if (trials <= 0) return {};
  switch (suite) {
    case Suite::algebra: return algebra_suite(trials, seed, opts);
    case Suite::group: return group_suite(trials, seed, opts);
    case Suite::fields: return fields_suite(trials, seed, opts);
    case Suite::larc: return larc_suite(trials, seed, opts);
    case Suite::dynamics: return dynamics_suite(trials, seed, opts);
  }
  return {};
}

}  // namespace lielcs
