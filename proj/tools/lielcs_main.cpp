#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lielcs/dynamics.hpp"
#include "lielcs/reachability.hpp"
#include "lielcs/spec_io.hpp"
#include "lielcs/verify.hpp"

namespace {

using namespace lielcs;

ControlInput load_control_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(Errc::invalid_spec, "cannot open control file " + path);
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::invalid_spec, std::string("control file is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("segments") || !j["segments"].is_array())
    throw Error(Errc::invalid_spec, "control file must be {\"segments\": [[duration, u], ...]}");
  ControlInput input;
  for (const auto& seg : j["segments"]) {
    if (!seg.is_array() || seg.size() != 2 || !seg[0].is_number() || !seg[1].is_number())
      throw Error(Errc::invalid_spec, "control segment must be a [duration, u] pair");
    const double d = seg[0].get<double>();
    if (d <= 0.0) throw Error(Errc::invalid_spec, "control segment durations must be positive");
    input.segments.push_back({d, seg[1].get<double>()});
  }
  if (input.segments.empty())
    throw Error(Errc::invalid_spec, "control file contains no segments");
  return input;
}

double max_deviation_exact_vs_rk4(const ControlSystem& sys, const ControlInput& input,
                                  const Trajectory& rk) {
  double dev = 0.0;
  std::size_t i = 0;
  double t0 = 0.0;
  CoverElement seg_start = rk.states[0];
  for (const auto& seg : input.segments) {
    while (i < rk.times.size() && rk.times[i] <= t0 + seg.duration + 1e-12) {
      const CoverElement exact = segment_exact(sys, seg.u, rk.times[i] - t0, seg_start);
      dev = std::max(dev, (exact.to_vec4() - rk.states[i].to_vec4()).cwiseAbs().maxCoeff());
      ++i;
    }
    seg_start = segment_exact(sys, seg.u, seg.duration, seg_start);
    t0 += seg.duration;
  }
  return dev;
}

int cmd_classify(const std::string& spec_path) {
  const SystemSpec spec = SystemSpec::load(spec_path);
  const Verdict v = classify(spec.system);
  nlohmann::ordered_json j;
  j["larc"] = v.larc;
  j["subalgebra_dim"] = v.subalgebra_dim;
  j["det_A"] = v.det_A;
  j["tr_A"] = v.tr_A;
  j["category"] = to_string(v.category);
  j["A"] = {{"p", spec.system.X.p},
            {"q", spec.system.X.q},
            {"matrix", {{spec.system.X.p, -spec.system.X.q}, {spec.system.X.q, spec.system.X.p}}}};
  std::cout << j.dump(2) << "\n";
  return 0;
}

struct SimulateArgs {
  std::string spec_path;
  std::string control_path;
  bool have_u_const = false;
  double u_const = 0.0;
  double t_final = 0.0;
  double dt = 0.01;
  std::string method = "exact";
  std::string out = "trajectory.csv";
  std::vector<double> start{0.0, 0.0, 0.0, 0.0};
};

int cmd_simulate(const SimulateArgs& args) {
  const SystemSpec spec = SystemSpec::load(args.spec_path);
  const ControlSystem& sys = spec.system;

  ControlInput input;
  if (args.have_u_const) {
    if (args.t_final <= 0.0)
      throw Error(Errc::invalid_config, "--u-const requires a positive --t");
    input.segments.push_back({args.t_final, args.u_const});
  } else if (!args.control_path.empty()) {
    input = load_control_file(args.control_path);
  } else {
    throw Error(Errc::invalid_config, "either --control or --u-const must be given");
  }
  for (const auto& seg : input.segments)
    if (!sys.admits(seg.u))
      throw Error(Errc::control_out_of_range,
                  "control value " + std::to_string(seg.u) + " outside omega");

  const CoverElement s0{args.start[0], {args.start[1], args.start[2]}, args.start[3]};

  Trajectory exact_traj, rk_traj;
  if (args.method == "exact" || args.method == "both") {
    int samples = 1;
    for (const auto& seg : input.segments)
      samples = std::max(samples, static_cast<int>(std::ceil(seg.duration / args.dt)));
    exact_traj = propagate(sys, input, s0, samples);
  }
  if (args.method == "rk4" || args.method == "both")
    rk_traj = integrate_rk4(sys, input, args.dt, s0);

  if (args.method == "exact") {
    write_trajectory_csv(exact_traj, args.out);
    std::cout << "wrote " << args.out << " (" << exact_traj.times.size() << " rows)\n";
  } else if (args.method == "rk4") {
    write_trajectory_csv(rk_traj, args.out);
    std::cout << "wrote " << args.out << " (" << rk_traj.times.size() << " rows)\n";
  } else if (args.method == "both") {
    write_trajectory_csv(exact_traj, args.out);
    const std::string rk_path = args.out + ".rk4.csv";
    write_trajectory_csv(rk_traj, rk_path);
    const double dev = max_deviation_exact_vs_rk4(sys, input, rk_traj);
    std::printf("wrote %s and %s\nmax_deviation=%.3e\n", args.out.c_str(), rk_path.c_str(), dev);
  } else {
    throw Error(Errc::invalid_config, "--method must be exact, rk4 or both");
  }
  return 0;
}

struct ReachArgs {
  std::string spec_path;
  double horizon = 10.0;
  std::uint64_t n = 10000;
  std::uint64_t seed = 0;
  std::string direction = "forward";
  std::vector<double> v_min{-3.0, -3.0};
  std::vector<double> v_max{3.0, 3.0};
  int theta_bins = 16;
  int v_bins = 40;
  int phi_bins = 16;
  double d_min = 0.1;
  double d_max = 1.0;
  int samples_per_segment = 8;
  std::vector<double> start{0.0, 0.0, 0.0, 0.0};
  std::string out = "reach";
};

int cmd_reach(const ReachArgs& args) {
  const SystemSpec spec = SystemSpec::load(args.spec_path);
  Window window;
  window.v_min = {args.v_min[0], args.v_min[1]};
  window.v_max = {args.v_max[0], args.v_max[1]};
  window.theta_bins = args.theta_bins;
  window.v_bins = args.v_bins;
  window.phi_bins = args.phi_bins;
  ReachConfig cfg;
  cfg.horizon = args.horizon;
  cfg.n_trajectories = args.n;
  cfg.seed = args.seed;
  cfg.duration_min = args.d_min;
  cfg.duration_max = args.d_max;
  cfg.samples_per_segment = args.samples_per_segment;

  const GroupElement start{wrap_angle(args.start[0]), {args.start[1], args.start[2]},
                           wrap_angle(args.start[3])};

  OccupancyGrid grid;
  if (args.direction == "forward") {
    grid = sample_reach(spec.system, start, window, cfg, Direction::forward);
  } else if (args.direction == "backward") {
    grid = sample_reach(spec.system, start, window, cfg, Direction::backward);
  } else if (args.direction == "intersect") {
    grid = estimate_control_set(spec.system, start, window, cfg);
  } else {
    throw Error(Errc::invalid_config, "--direction must be forward, backward or intersect");
  }

  write_grid_json(grid, cfg, args.direction, args.out + ".json");
  write_occupied_cells_csv(grid, args.out + ".csv");
  const FiberStats fibers = fiber_stats(grid);
  std::printf(
      "occupancy_fraction=%.6f occupied_cells=%zu total_samples=%llu "
      "fiber_min=%.4f fiber_mean=%.4f\n",
      grid.occupancy_fraction(), grid.occupied_cells(),
      static_cast<unsigned long long>(grid.total_samples()), fibers.min, fibers.mean);
  std::cout << "wrote " << args.out << ".json and " << args.out << ".csv\n";
  return 0;
}

int cmd_verify(const std::string& suite, int trials, std::uint64_t seed, bool inject_bug) {
  if (trials == 0) {
    std::cout << "warning: no trials requested; nothing verified\n";
    return 0;
  }
  if (trials < 0) throw Error(Errc::invalid_config, "--trials must be >= 0");
  std::vector<Suite> suites =
      suite == "all" ? all_suites() : std::vector<Suite>{suite_from_name(suite)};
  VerifyOptions opts;
  opts.inject_bracket_bug = inject_bug;
  bool all_passed = true;
  for (const Suite s : suites) {
    for (const PropertyResult& r : run_suite(s, trials, seed, opts)) {
      std::printf("[%s] %-48s trials=%-6d max_err=%-12.3e tol=%.1e\n",
                  r.passed ? "PASS" : "FAIL", r.name.c_str(), r.trials, r.max_error,
                  r.tolerance);
      all_passed = all_passed && r.passed;
    }
  }
  if (!all_passed) {
    std::cout << "verification FAILED\n";
    return 1;
  }
  std::cout << "all properties passed\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"linear control systems on the solvable group SE(2) x S1"};
  app.require_subcommand(1);

  std::string spec_path;
  auto* classify_cmd = app.add_subcommand("classify", "LARC and control-set classification");
  classify_cmd->add_option("spec", spec_path, "system spec JSON file")->required();

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "propagate a trajectory, write CSV");
  sim_cmd->add_option("spec", sim.spec_path, "system spec JSON file")->required();
  sim_cmd->add_option("--control", sim.control_path, "control file {\"segments\":[[d,u],...]}");
  auto* uconst_opt = sim_cmd->add_option("--u-const", sim.u_const, "constant control value");
  sim_cmd->add_option("--t", sim.t_final, "duration for --u-const");
  sim_cmd->add_option("--dt", sim.dt, "sample spacing / rk4 step")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--method", sim.method, "exact | rk4 | both");
  sim_cmd->add_option("--out", sim.out, "output CSV path");
  sim_cmd->add_option("--start", sim.start, "initial state theta vx vy phi")->expected(4);

  ReachArgs reach;
  auto* reach_cmd = app.add_subcommand("reach", "Monte-Carlo reachable-set estimation");
  reach_cmd->add_option("spec", reach.spec_path, "system spec JSON file")->required();
  reach_cmd->add_option("--horizon", reach.horizon, "time horizon");
  reach_cmd->add_option("--n", reach.n, "number of trajectories");
  reach_cmd->add_option("--seed", reach.seed, "RNG seed");
  reach_cmd->add_option("--direction", reach.direction, "forward | backward | intersect");
  reach_cmd->add_option("--v-min", reach.v_min, "window lower corner")->expected(2);
  reach_cmd->add_option("--v-max", reach.v_max, "window upper corner")->expected(2);
  reach_cmd->add_option("--theta-bins", reach.theta_bins, "theta bins");
  reach_cmd->add_option("--v-bins", reach.v_bins, "v bins per axis");
  reach_cmd->add_option("--phi-bins", reach.phi_bins, "phi bins");
  reach_cmd->add_option("--d-min", reach.d_min, "min segment duration");
  reach_cmd->add_option("--d-max", reach.d_max, "max segment duration");
  reach_cmd->add_option("--samples-per-segment", reach.samples_per_segment,
                        "states recorded per control segment");
  reach_cmd->add_option("--start", reach.start, "start state theta vx vy phi")->expected(4);
  reach_cmd->add_option("--out", reach.out, "output path prefix");

  std::string suite = "all";
  int trials = 1000;
  std::uint64_t verify_seed = 42;
  bool inject_bug = false;
  auto* verify_cmd = app.add_subcommand("verify", "run the module property suites");
  verify_cmd->add_option("--suite", suite, "algebra|group|fields|larc|dynamics|all");
  verify_cmd->add_option("--trials", trials, "randomized trials per property");
  verify_cmd->add_option("--seed", verify_seed, "RNG seed");
  verify_cmd
      ->add_flag("--inject-bracket-bug", inject_bug,
                 "self-test: run against a deliberately broken bracket")
      ->group("");  // hidden

  CLI11_PARSE(app, argc, argv);

  try {
    if (classify_cmd->parsed()) return cmd_classify(spec_path);
    if (sim_cmd->parsed()) {
      sim.have_u_const = uconst_opt->count() > 0;
      return cmd_simulate(sim);
    }
    if (reach_cmd->parsed()) return cmd_reach(reach);
    if (verify_cmd->parsed()) return cmd_verify(suite, trials, verify_seed, inject_bug);
  } catch (const lielcs::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
