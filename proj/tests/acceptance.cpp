// Acceptance battery: one pass/fail line per criterion, nonzero exit when
// anything fails. The Monte-Carlo criteria (9, 10) are the long poles; the
// rest run in seconds.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lielcs/dynamics.hpp"
#include "lielcs/fields.hpp"
#include "lielcs/random.hpp"
#include "lielcs/reachability.hpp"
#include "lielcs/verify.hpp"

using namespace lielcs;

namespace {

int failures = 0;

void report(int criterion, const std::string& what, bool passed, const std::string& detail,
            double seconds) {
  std::printf("%s criterion %2d: %s (%s) [%.2fs]\n", passed ? "PASS" : "FAIL", criterion,
              what.c_str(), detail.c_str(), seconds);
  if (!passed) ++failures;
}

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

double cover_dist(const CoverElement& a, const CoverElement& b) {
  return (a.to_vec4() - b.to_vec4()).cwiseAbs().maxCoeff();
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3e", x);
  return buf;
}

// 1. structure constants, exactly
void criterion_1() {
  Timer timer;
  bool ok = true;
  ok &= (bracket(basis_e1(), basis_e2()) - basis_e3()).norm() == 0.0;
  ok &= (bracket(basis_e1(), basis_e3()) + basis_e2()).norm() == 0.0;
  const AlgebraElement basis[4] = {basis_e1(), basis_e2(), basis_e3(), basis_e4()};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if ((i == 0 && (j == 1 || j == 2)) || (j == 0 && (i == 1 || i == 2))) continue;
      ok &= bracket(basis[i], basis[j]).norm() == 0.0;
    }
  report(1, "structure constants [E1,E2]=E3, [E1,E3]=-E2, rest zero", ok, "exact",
         timer.seconds());
}

// 2. solvable, not completely solvable
void criterion_2() {
  Timer timer;
  bool ok = derived_series() == std::vector<int>{4, 2, 0};
  const auto c = characteristic_polynomial(ad_matrix(basis_e1()));
  const double err =
      std::max({std::abs(c[0]), std::abs(c[1] - 1.0), std::abs(c[2]), std::abs(c[3])});
  ok &= err <= 1e-12;
  report(2, "derived series [4,2,0]; ad(E1) char poly = x^4 + x^2", ok,
         "coeff err " + fmt(err), timer.seconds());
}

// 3. Der/Aut membership and perturbation rejection, 1000 + 1000
void criterion_3() {
  Timer timer;
  SplitMix64 rng(0xACCE3);
  bool ok = true;
  for (int i = 0; i < 1000; ++i) {
    ok &= is_derivation(draw_derivation(rng).matrix(), 1e-12);
    ok &= is_automorphism(draw_algebra_automorphism(rng).matrix(), 1e-12);
  }
  // entries the Lemma pattern forces: row 1, the center couplings, and the
  // (2,2)=(3,3) / (2,3)=-(3,2) ties
  const int forced[10][2] = {{0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 3},
                             {2, 3}, {3, 1}, {3, 2}, {1, 1}, {1, 2}};
  int rejected = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto& e = forced[rng.below(10)];
    const double delta = rng.uniform(1e-3, 1.0) * (rng.uniform() < 0.5 ? 1.0 : -1.0);
    if (i % 2 == 0) {
      Mat4 m = draw_derivation(rng).matrix();
      m(e[0], e[1]) += delta;
      if (!is_derivation(m, 1e-12)) ++rejected;
    } else {
      Mat4 m = draw_algebra_automorphism(rng).matrix();
      m(e[0], e[1]) += delta;
      if (!is_automorphism(m, 1e-12)) ++rejected;
    }
  }
  ok &= rejected == 1000;
  report(3, "1000 Der/Aut members pass, 1000 perturbed matrices fail", ok,
         std::to_string(rejected) + "/1000 rejected", timer.seconds());
}

// 4. flow laws over 1000 draws
void criterion_4() {
  Timer timer;
  SplitMix64 rng(0xACCE4);
  double worst_group = 0.0, worst_auto = 0.0, worst_diff = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const LinearField x = draw_linear_field(rng);
    const CoverElement g1 = draw_cover_element(rng), g2 = draw_cover_element(rng);
    const double t1 = rng.uniform(-2.0, 2.0), t2 = rng.uniform(-2.0, 2.0);
    worst_group = std::max(
        worst_group, cover_dist(flow(x, t1 + t2, g1), flow(x, t1, flow(x, t2, g1))));
    worst_auto = std::max(worst_auto, cover_dist(flow(x, t1, multiply(g1, g2)),
                                                 multiply(flow(x, t1, g1), flow(x, t1, g2))));
    // (d phi_t)_e against central differences of the flow
    Mat4 fd;
    const double h = 1e-5;
    for (int k = 0; k < 4; ++k) {
      Vec4 hi = Vec4::Zero(), lo = Vec4::Zero();
      hi(k) += h;
      lo(k) -= h;
      fd.col(k) = (flow(x, t1, CoverElement::from_vec4(hi)).to_vec4() -
                   flow(x, t1, CoverElement::from_vec4(lo)).to_vec4()) /
                  (2.0 * h);
    }
    worst_diff = std::max(
        worst_diff, (fd - flow_differential_at_identity(x, t1)).cwiseAbs().maxCoeff());
  }
  const bool ok = worst_group <= 1e-10 && worst_auto <= 1e-10 && worst_diff <= 1e-6;
  report(4, "flow one-parameter/automorphism laws and (d phi_t)_e = e^{tD}", ok,
         "grp " + fmt(worst_group) + ", aut " + fmt(worst_auto) + ", diff " + fmt(worst_diff),
         timer.seconds());
}

// 5. derivation extraction via finite differences, 500 draws
void criterion_5() {
  Timer timer;
  SplitMix64 rng(0xACCE5);
  const double h = 1e-5;
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const LinearField x = draw_linear_field(rng);
    const InvariantField y = draw_invariant_field(rng);
    Mat4 jx, jy;
    for (int k = 0; k < 4; ++k) {
      Vec4 hi = Vec4::Zero(), lo = Vec4::Zero();
      hi(k) += h;
      lo(k) -= h;
      jx.col(k) = (eval_linear(x, CoverElement::from_vec4(hi)) -
                   eval_linear(x, CoverElement::from_vec4(lo))) /
                  (2.0 * h);
      jy.col(k) = (eval_invariant(y, CoverElement::from_vec4(hi)) -
                   eval_invariant(y, CoverElement::from_vec4(lo))) /
                  (2.0 * h);
    }
    const Vec4 fd = jx * eval_invariant(y, CoverElement::identity()) -
                    jy * eval_linear(x, CoverElement::identity());
    const Vec4 an = apply_derivation(derivation_of(x), y.at_identity()).to_vec4();
    worst = std::max(worst, (fd - an).cwiseAbs().maxCoeff());
  }
  report(5, "finite-difference [X,Y](e) matches the associated derivation", worst <= 1e-5,
         "max err " + fmt(worst), timer.seconds());
}

// 6. LARC equivalence on 1000 systems with forced degeneracies
void criterion_6() {
  Timer timer;
  SplitMix64 rng(0xACCE6);
  int agree = 0;
  for (int i = 0; i < 1000; ++i) {
    const ControlSystem sys = draw_system(rng, 0.2);
    if (larc_holds(sys) == larc_analytic(sys)) ++agree;
  }
  report(6, "closure LARC agrees with the split criterion on 1000 systems", agree == 1000,
         std::to_string(agree) + "/1000", timer.seconds());
}

// 7. integrator cross-validation on 100 systems + order check
void criterion_7() {
  Timer timer;
  SplitMix64 rng(0xACCE7);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    ControlSystem sys = draw_system(rng);
    double u = rng.uniform(sys.omega_minus, sys.omega_plus);
    const double mode = rng.uniform();
    if (mode < 0.2) {  // exact resonance i u alpha = c
      sys.X.p = 0.0;
      sys.X.q = u * sys.Y.alpha;
    } else if (mode < 0.3) {
      sys.X.p = 0.0;
      sys.X.q = u * sys.Y.alpha + 1e-9;
    } else if (mode < 0.4) {
      sys.X.p = 0.0;
      sys.X.q = u * sys.Y.alpha + 1e-6;
    }
    const CoverElement s0 = draw_cover_element(rng, kTwoPi, 1.0);
    ControlInput input;
    input.segments.push_back({5.0, u});
    const Trajectory rk = integrate_rk4(sys, input, 1e-3, s0);
    for (std::size_t k = 0; k < rk.times.size(); ++k)
      worst =
          std::max(worst, cover_dist(segment_exact(sys, u, rk.times[k], s0), rk.states[k]));
  }

  const ControlSystem order_sys(LinearField({0.3, -0.2}, 0.2, 0.7, 0.5),
                                InvariantField{0.8, {0.5, 0.1}, 0.3}, -1.0, 1.0);
  const CoverElement s0{0.4, {0.5, -0.3}, 0.1};
  auto sup_err = [&](double h) {
    ControlInput input;
    input.segments.push_back({5.0, 0.7});
    const Trajectory rk = integrate_rk4(order_sys, input, h, s0);
    double err = 0.0;
    for (std::size_t k = 0; k < rk.times.size(); ++k)
      err = std::max(err,
                     cover_dist(segment_exact(order_sys, 0.7, rk.times[k], s0), rk.states[k]));
    return err;
  };
  const double ratio = sup_err(0.05) / sup_err(0.025);

  const bool ok = worst <= 1e-8 && ratio >= 12.0 && ratio <= 20.0;
  report(7, "segment_exact vs RK4 sup error on [0,5] and Richardson ratio", ok,
         "sup " + fmt(worst) + ", ratio " + fmt(ratio), timer.seconds());
}

// 8. conjugation identities over 1000 runs
void criterion_8() {
  Timer timer;
  SplitMix64 rng(0xACCE8);
  double worst_proj = 0.0, worst_phase = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const ControlSystem sys = draw_system(rng);
    const GroupElement start = draw_group_element(rng);
    ControlInput input;
    const int nseg = 1 + static_cast<int>(rng.below(3));
    for (int k = 0; k < nseg; ++k)
      input.segments.push_back(
          {rng.uniform(0.1, 1.0), rng.uniform(sys.omega_minus, sys.omega_plus)});
    worst_proj = std::max(worst_proj, check_semiconjugacy(sys, start, input, 2));

    const double phi1 = rng.uniform(0.0, kTwoPi);
    const Trajectory base = propagate(sys, input, lift(start), 2);
    const Trajectory shifted = propagate(sys, input, lift(translate_phase(start, phi1)), 2);
    for (std::size_t k = 0; k < base.states.size(); ++k) {
      const GroupElement lhs = translate_phase(project(base.states[k]), phi1);
      const GroupElement rhs = project(shifted.states[k]);
      worst_phase = std::max(worst_phase, angle_dist(lhs.phi, rhs.phi));
      worst_phase = std::max(worst_phase, (lhs.v - rhs.v).cwiseAbs().maxCoeff());
      worst_phase = std::max(worst_phase, angle_dist(lhs.theta, rhs.theta));
    }
  }
  const bool ok = worst_proj <= 1e-12 && worst_phase <= 1e-12;
  report(8, "pi-semiconjugacy and phase-translation equivariance", ok,
         "proj " + fmt(worst_proj) + ", phase " + fmt(worst_phase), timer.seconds());
}

// 9. controllable regime: forward reach and the control-set estimate both
// fill the window
void criterion_9() {
  Timer timer;
  const ControlSystem sys(LinearField({1.0, 0.0}, 0.0, 1.0, 1.0),
                          InvariantField{1.0, {1.0, 0.0}, 0.0}, -1.0, 1.0);
  const Verdict verdict = classify(sys);
  Window window;  // defaults: v in [-3,3]^2, 16 x 40x40 x 16 bins
  ReachConfig cfg;
  cfg.horizon = 30.0;
  cfg.n_trajectories = 200000;
  cfg.seed = 42;
  const OccupancyGrid fwd =
      sample_reach(sys, GroupElement::identity(), window, cfg, Direction::forward);
  const OccupancyGrid bwd =
      sample_reach(sys, GroupElement::identity(), window, cfg, Direction::backward);
  const double frac = fwd.occupancy_fraction();
  const double cs_frac = OccupancyGrid::intersect(fwd, bwd).occupancy_fraction();
  const bool ok = verdict.category == Category::CONTROLLABLE && frac >= 0.99 &&
                  cs_frac >= 0.99;
  report(9, "controllable regime: occupancy >= 99% forward and in the intersection", ok,
         "forward " + fmt(frac) + ", intersection " + fmt(cs_frac) + ", " +
             to_string(verdict.category),
         timer.seconds());
}

// 10. unique-control-set regime: fat intersection with full phi fibers
void criterion_10() {
  Timer timer;
  // A = I + J expands at rate e^t, so forward trajectories under random
  // controls survive inside the window only a few time units; the phase
  // coupling a and the control authority are sized so theta and phi mix
  // within that survival window and the fiber structure becomes visible.
  const ControlSystem sys(LinearField(Vec2::Zero(), 1.0, 1.0, 16.0),
                          InvariantField{1.0, {1.0, 0.0}, 0.0}, -3.6, 3.6);
  const Verdict verdict = classify(sys);
  Window window;
  ReachConfig cfg;
  cfg.horizon = 8.0;
  cfg.n_trajectories = 1000000;
  cfg.seed = 42;
  cfg.samples_per_segment = 32;
  const OccupancyGrid cs = estimate_control_set(sys, GroupElement::identity(), window, cfg);
  const std::size_t component = largest_component_size(cs);

  const auto coverage = fiber_coverage(cs);
  std::size_t high = 0;
  for (const auto& [base, frac] : coverage)
    if (frac >= 15.0 / 16.0) ++high;
  const double high_frac =
      coverage.empty() ? 0.0 : static_cast<double>(high) / coverage.size();

  const bool ok = verdict.category == Category::UNIQUE_CONTROL_SET && component >= 50 &&
                  high_frac >= 0.9;
  report(10, "control-set estimate has interior and full phi fibers", ok,
         "component " + std::to_string(component) + ", fibered " + fmt(high_frac) + " of " +
             std::to_string(coverage.size()) + " base cells",
         timer.seconds());
}

// 11. degenerate regime A = 0
void criterion_11() {
  Timer timer;
  const ControlSystem sys(LinearField({1.0, 0.0}, 0.0, 0.0, 1.0),
                          InvariantField{1.0, {1.0, 0.0}, 0.0}, -1.0, 1.0);
  const bool singular = singular_locus_check(sys);
  const Verdict verdict = classify(sys);
  const bool ok =
      singular && verdict.category == Category::EMPTY_INTERIOR_CONTROL_SETS && verdict.larc;
  report(11, "A = 0: singular locus {theta=0} and empty-interior classification", ok,
         to_string(verdict.category), timer.seconds());
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  if (failures > 0) {
    std::printf("%d criterion(s) FAILED\n", failures);
    return 1;
  }
  std::printf("all 11 criteria passed\n");
  return 0;
}
