// Compares the serial reference sampler against the OpenMP kernel and
// checks that both produce the same grid. Run manually:
//   ./bench_reach [n_trajectories] [horizon]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

#include "lielcs/reachability.hpp"

using namespace lielcs;

namespace {

double wall_seconds(const std::function<void()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  ReachConfig cfg;
  cfg.n_trajectories = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 20000;
  cfg.horizon = argc > 2 ? std::strtod(argv[2], nullptr) : 20.0;
  cfg.seed = 42;

  const ControlSystem sys(LinearField({1.0, 0.0}, 0.0, 1.0, 1.0),
                          InvariantField{1.0, {1.0, 0.0}, 0.0}, -1.0, 1.0);
  const Window window;
  const GroupElement start = GroupElement::identity();

  std::printf("n=%llu horizon=%.1f threads=%d\n",
              static_cast<unsigned long long>(cfg.n_trajectories), cfg.horizon,
              resolve_thread_count());

  OccupancyGrid serial_grid, parallel_grid;
  const double t_serial = wall_seconds([&] {
    serial_grid = sample_reach_serial(sys, start, window, cfg, Direction::forward);
  });
  const double t_parallel = wall_seconds(
      [&] { parallel_grid = sample_reach(sys, start, window, cfg, Direction::forward); });

  const bool identical = serial_grid.counts() == parallel_grid.counts();
  std::printf("serial   %8.3fs  occupancy %.4f\n", t_serial, serial_grid.occupancy_fraction());
  std::printf("parallel %8.3fs  occupancy %.4f\n", t_parallel,
              parallel_grid.occupancy_fraction());
  std::printf("speedup  %8.2fx  grids %s\n", t_serial / t_parallel,
              identical ? "identical" : "DIFFER");
  return identical ? 0 : 1;
}
