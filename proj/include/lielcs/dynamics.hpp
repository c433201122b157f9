#pragma once

#include <string>
#include <vector>

#include "lielcs/group.hpp"
#include "lielcs/larc.hpp"

namespace lielcs {

/// Piecewise-constant control: ordered (duration, value) segments.
struct ControlInput {
  struct Segment {
    double duration;
    double u;
  };
  std::vector<Segment> segments;

  double total_duration() const;
};

struct Trajectory {
  std::vector<double> times;          // strictly increasing, starts at 0
  std::vector<CoverElement> states;   // same length; states[0] = initial state
};

/// Exact propagation over one constant-control segment, solved in complex
/// coordinates:
///   theta(t) = theta0 + u*alpha*t
///   phi(t)   = phi0 + a*theta0*t + a*u*alpha*t^2/2 + u*beta*t
///   v(t)     = e^{ct} v0 + i xi_c I0(t) + (u eta_c - i xi_c) e^{i theta0} I1(t)
/// with c = p + iq and the convolution integrals I0, I1 in closed form
/// (series fallback when a denominator modulus drops below 1e-8, which
/// covers the resonant case i*u*alpha = c).
CoverElement segment_exact(const ControlSystem& sys, double u, double t, const CoverElement& s0);

/// SE(2) projection of the same segment solution; the phi coordinate of s0
/// never enters.
void segment_exact_se2(const ControlSystem& sys, double u, double t, double& theta, Vec2& v);

/// Classical fixed-step RK4 on the cover, kept as an independent oracle for
/// segment_exact. Segment boundaries are always landed on exactly.
Trajectory integrate_rk4(const ControlSystem& sys, const ControlInput& input, double step,
                         const CoverElement& s0);

/// Chains segment_exact across segments, recording samples_per_segment
/// states per segment at uniform sub-times.
Trajectory propagate(const ControlSystem& sys, const ControlInput& input, const CoverElement& s0,
                     int samples_per_segment);

/// CSV with header t,theta,vx,vy,phi,theta_wrapped,phi_wrapped.
std::string trajectory_csv(const Trajectory& traj);
void write_trajectory_csv(const Trajectory& traj, const std::string& path);

}  // namespace lielcs
