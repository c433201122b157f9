#include "lielcs/dynamics.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "lielcs/linalg.hpp"

namespace lielcs {

namespace {

void require_admissible(const ControlSystem& sys, double u) {
  if (!sys.admits(u))
    throw Error(Errc::control_out_of_range,
                "control value " + std::to_string(u) + " outside [" +
                    std::to_string(sys.omega_minus) + ", " + std::to_string(sys.omega_plus) + "]");
}

/// v(t) in complex coordinates; shared by the full and the projected solver.
Complex segment_v(const ControlSystem& sys, double u, double t, double theta0, Complex v0) {
  const Complex c = sys.X.a_complex();
  const Complex xi_c = to_complex(sys.X.xi);
  const Complex eta_c = to_complex(sys.Y.eta);
  const Complex i_unit(0.0, 1.0);
  const double w = u * sys.Y.alpha;  // angular rate of theta

  if (w == 0.0) {
    // theta frozen => constant forcing; summed first so a vanishing forcing
    // (the identity singularity under u = 0) stays exactly zero
    const Complex b = i_unit * xi_c + (u * eta_c - i_unit * xi_c) * std::exp(i_unit * theta0);
    return std::exp(c * t) * v0 + t * expm1_over_z(c * t) * b;
  }
  const Complex i0 = t * expm1_over_z(c * t);                                // int e^{c(t-s)} ds
  const Complex i1 = std::exp(c * t) * t * expm1_over_z((i_unit * w - c) * t);  // resonance-safe
  return std::exp(c * t) * v0 + i_unit * xi_c * i0 +
         (u * eta_c - i_unit * xi_c) * std::exp(i_unit * theta0) * i1;
}

Vec4 rhs(const ControlSystem& sys, double u, const Vec4& state) {
  const CoverElement g = CoverElement::from_vec4(state);
  return eval_linear(sys.X, g) + u * eval_invariant(sys.Y, g);
}

}  // namespace

double ControlInput::total_duration() const {
  double t = 0.0;
  for (const auto& s : segments) t += s.duration;
  return t;
}

CoverElement segment_exact(const ControlSystem& sys, double u, double t, const CoverElement& s0) {
  require_admissible(sys, u);
  const double w = u * sys.Y.alpha;
  CoverElement out;
  out.theta = s0.theta + w * t;
  out.phi = s0.phi + sys.X.a * s0.theta * t + 0.5 * sys.X.a * w * t * t + u * sys.Y.beta * t;
  out.v = to_vec2(segment_v(sys, u, t, s0.theta, to_complex(s0.v)));
  return out;
}

void segment_exact_se2(const ControlSystem& sys, double u, double t, double& theta, Vec2& v) {
  require_admissible(sys, u);
  v = to_vec2(segment_v(sys, u, t, theta, to_complex(v)));
  theta += u * sys.Y.alpha * t;
}

Trajectory integrate_rk4(const ControlSystem& sys, const ControlInput& input, double step,
                         const CoverElement& s0) {
  if (step <= 0.0) throw Error(Errc::invalid_argument, "rk4 step must be positive");
  Trajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(s0);
  double t0 = 0.0;
  Vec4 state = s0.to_vec4();
  for (const auto& seg : input.segments) {
    if (seg.duration <= 0.0)
      throw Error(Errc::invalid_argument, "segment durations must be positive");
    require_admissible(sys, seg.u);
    const int n = std::max(1, static_cast<int>(std::ceil(seg.duration / step - 1e-12)));
    const double h = seg.duration / n;
    for (int k = 0; k < n; ++k) {
      const Vec4 k1 = rhs(sys, seg.u, state);
      const Vec4 k2 = rhs(sys, seg.u, state + 0.5 * h * k1);
      const Vec4 k3 = rhs(sys, seg.u, state + 0.5 * h * k2);
      const Vec4 k4 = rhs(sys, seg.u, state + h * k3);
      state += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      traj.times.push_back(t0 + (k + 1) * h);
      traj.states.push_back(CoverElement::from_vec4(state));
    }
    t0 += seg.duration;
  }
  return traj;
}

Trajectory propagate(const ControlSystem& sys, const ControlInput& input, const CoverElement& s0,
                     int samples_per_segment) {
  if (samples_per_segment < 1)
    throw Error(Errc::invalid_argument, "samples_per_segment must be >= 1");
  Trajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(s0);
  double t0 = 0.0;
  CoverElement state = s0;
  for (const auto& seg : input.segments) {
    if (seg.duration <= 0.0)
      throw Error(Errc::invalid_argument, "segment durations must be positive");
    for (int k = 1; k <= samples_per_segment; ++k) {
      const double dt = seg.duration * k / samples_per_segment;
      traj.times.push_back(t0 + dt);
      traj.states.push_back(segment_exact(sys, seg.u, dt, state));
    }
    state = traj.states.back();
    t0 += seg.duration;
  }
  return traj;
}

std::string trajectory_csv(const Trajectory& traj) {
  std::string out = "t,theta,vx,vy,phi,theta_wrapped,phi_wrapped\n";
  char line[256];
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const CoverElement& s = traj.states[i];
    std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  traj.times[i], s.theta, s.v.x(), s.v.y(), s.phi, wrap_angle(s.theta),
                  wrap_angle(s.phi));
    out += line;
  }
  return out;
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::invalid_argument, "cannot open " + path + " for writing");
  f << trajectory_csv(traj);
}

}  // namespace lielcs
