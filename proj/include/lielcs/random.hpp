#pragma once

#include "lielcs/algebra.hpp"
#include "lielcs/group.hpp"
#include "lielcs/larc.hpp"
#include "lielcs/rng.hpp"

namespace lielcs {

/// Draw helpers for property trials. All values stay at desk scale so the
/// stated tolerances are meaningful.

inline AlgebraElement draw_algebra_element(SplitMix64& rng, double scale = 2.0) {
  return {rng.uniform(-scale, scale),
          {rng.uniform(-scale, scale), rng.uniform(-scale, scale)},
          rng.uniform(-scale, scale)};
}

inline CoverElement draw_cover_element(SplitMix64& rng, double angle_scale = 6.0,
                                       double v_scale = 2.0) {
  return {rng.uniform(-angle_scale, angle_scale),
          {rng.uniform(-v_scale, v_scale), rng.uniform(-v_scale, v_scale)},
          rng.uniform(-angle_scale, angle_scale)};
}

inline GroupElement draw_group_element(SplitMix64& rng, double v_scale = 2.0) {
  return {rng.uniform(0.0, kTwoPi),
          {rng.uniform(-v_scale, v_scale), rng.uniform(-v_scale, v_scale)},
          rng.uniform(0.0, kTwoPi)};
}

inline DerivationMatrix draw_derivation(SplitMix64& rng, double scale = 2.0) {
  return {{rng.uniform(-scale, scale), rng.uniform(-scale, scale)},
          rng.uniform(-scale, scale),
          rng.uniform(-scale, scale),
          rng.uniform(-scale, scale),
          rng.uniform(-scale, scale)};
}

/// P = s * R(angle) or s * R(angle) * diag(1, -1) depending on the sign,
/// which exhausts the invertible solutions of PJ = sign*JP up to scale.
inline AlgebraAutomorphism draw_algebra_automorphism(SplitMix64& rng) {
  const int sign = rng.uniform() < 0.5 ? 1 : -1;
  const double s = rng.uniform(0.2, 2.0) * (rng.uniform() < 0.5 ? 1.0 : -1.0);
  Mat2 p = s * rotation(rng.uniform(0.0, kTwoPi));
  if (sign == -1) p.col(1) *= -1.0;  // reflection part anticommutes with J
  const double t = rng.uniform(0.2, 2.0) * (rng.uniform() < 0.5 ? 1.0 : -1.0);
  return {sign,
          {rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)},
          p,
          rng.uniform(-2.0, 2.0),
          t};
}

inline GroupAutomorphism draw_group_automorphism(SplitMix64& rng) {
  const AlgebraAutomorphism a = draw_algebra_automorphism(rng);
  return {a.sign, a.P, a.eta, a.a, a.t};
}

inline LinearField draw_linear_field(SplitMix64& rng, double scale = 1.0) {
  return {{rng.uniform(-scale, scale), rng.uniform(-scale, scale)},
          rng.uniform(-scale, scale),
          rng.uniform(-scale, scale),
          rng.uniform(-scale, scale)};
}

inline InvariantField draw_invariant_field(SplitMix64& rng, double scale = 1.0) {
  return {rng.uniform(-scale, scale),
          {rng.uniform(-scale, scale), rng.uniform(-scale, scale)},
          rng.uniform(-scale, scale)};
}

/// Random system; degenerate_prob independently forces a = 0, beta = 0,
/// xi = 0 and A = 0, so the LARC split criterion gets exercised on both
/// sides.
inline ControlSystem draw_system(SplitMix64& rng, double degenerate_prob = 0.0) {
  LinearField x = draw_linear_field(rng);
  InvariantField y = draw_invariant_field(rng);
  if (rng.uniform() < degenerate_prob) x.a = 0.0;
  if (rng.uniform() < degenerate_prob) y.beta = 0.0;
  if (rng.uniform() < degenerate_prob) x.xi = Vec2::Zero();
  if (rng.uniform() < degenerate_prob) {
    x.p = 0.0;
    x.q = 0.0;
  }
  const double lo = -rng.uniform(0.2, 2.0);
  const double hi = rng.uniform(0.2, 2.0);
  return {x, y, lo, hi};
}

}  // namespace lielcs
