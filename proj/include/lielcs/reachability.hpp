#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "lielcs/dynamics.hpp"
#include "lielcs/group.hpp"
#include "lielcs/larc.hpp"

namespace lielcs {

/// Binning window over G: the v-box is explicit, the theta and phi axes
/// always cover the whole circle.
struct Window {
  Vec2 v_min{-3.0, -3.0};
  Vec2 v_max{3.0, 3.0};
  int theta_bins = 16;
  int v_bins = 40;   // per axis
  int phi_bins = 16;

  /// Throws Errc::invalid_window on a degenerate box or bin counts < 2.
  void validate() const;

  std::size_t cell_count() const {
    return static_cast<std::size_t>(theta_bins) * v_bins * v_bins * phi_bins;
  }
  bool operator==(const Window& o) const;
};

/// Dense visit counter over a window. Merging adds counts, so per-worker
/// grids can be combined in any order.
class OccupancyGrid {
 public:
  OccupancyGrid() = default;
  explicit OccupancyGrid(const Window& w);

  const Window& window() const { return window_; }
  const std::vector<std::uint32_t>& counts() const { return counts_; }
  std::uint64_t total_samples() const { return total_samples_; }

  /// Flat index layout: ((theta * v_bins + ix) * v_bins + iy) * phi_bins + iphi.
  std::size_t index(int itheta, int ix, int iy, int iphi) const;

  /// Wraps the angles, bins the state, increments the cell; states with v
  /// outside the box are skipped. Returns whether the state was binned.
  bool mark(const CoverElement& s);
  void count_sample() { ++total_samples_; }

  void merge(const OccupancyGrid& other);

  std::size_t occupied_cells() const;
  double occupancy_fraction() const;

  /// Cellwise min of indicators; both grids must share the window.
  static OccupancyGrid intersect(const OccupancyGrid& a, const OccupancyGrid& b);

  /// Center coordinates of a flat cell index as (theta, vx, vy, phi).
  Vec4 cell_center(std::size_t flat) const;

 private:
  Window window_;
  std::vector<std::uint32_t> counts_;
  std::uint64_t total_samples_ = 0;
};

struct ReachConfig {
  double horizon = 10.0;
  std::uint64_t n_trajectories = 10000;
  std::uint64_t seed = 0;
  double duration_min = 0.1;
  double duration_max = 1.0;
  int samples_per_segment = 8;

  /// Throws Errc::invalid_config.
  void validate() const;
};

enum class Direction { forward, backward };

/// The system whose forward orbits are the backward orbits of sys.
ControlSystem time_reversed(const ControlSystem& sys);

/// Monte-Carlo positive-orbit sampler: n_trajectories random
/// piecewise-constant controls (durations uniform in the duration range,
/// values uniform in Omega), each drawn from its own counter-based stream
/// mix(seed, trajectory index), propagated with segment_exact until the
/// horizon is reached. Deterministic: same seed gives a bit-identical grid.
///
/// sample_reach fans trajectories out across OpenMP workers with private
/// grids merged afterwards; sample_reach_serial is the reference
/// implementation producing identical counts.
OccupancyGrid sample_reach(const ControlSystem& sys, const GroupElement& start,
                           const Window& window, const ReachConfig& cfg, Direction direction);
OccupancyGrid sample_reach_serial(const ControlSystem& sys, const GroupElement& start,
                                  const Window& window, const ReachConfig& cfg,
                                  Direction direction);

/// Forward/backward intersection around start: the numerical surrogate for
/// the control set containing it. Counts in the result are indicators.
OccupancyGrid estimate_control_set(const ControlSystem& sys, const GroupElement& start,
                                   const Window& window, const ReachConfig& cfg);

/// For every (theta, v) base cell with any occupancy: fraction of its phi
/// bins that are occupied. Key = flat base index.
std::unordered_map<std::size_t, double> fiber_coverage(const OccupancyGrid& grid);

struct FiberStats {
  std::size_t base_cells = 0;
  double min = 0.0;
  double mean = 0.0;
};
FiberStats fiber_stats(const OccupancyGrid& grid);

/// Largest face-connected component of occupied cells (theta and phi axes
/// wrap).
std::size_t largest_component_size(const OccupancyGrid& grid);

/// Propagates the full system and the projected SE(2) system under the same
/// control and returns the sup-norm deviation of the (theta, v) components.
double check_semiconjugacy(const ControlSystem& sys, const GroupElement& start,
                           const ControlInput& input, int samples_per_segment = 4);

/// With A = 0: drift vanishes (<= 1e-14) at 100 random points of the
/// singular locus {theta = 0}. Throws Errc::precondition_violated if A != 0.
bool singular_locus_check(const ControlSystem& sys);

/// Worker count: LIE_LCS_THREADS env var when set and nonzero, otherwise
/// the OpenMP default.
int resolve_thread_count();

/// JSON export: window + config header and the flat counts array.
std::string grid_json(const OccupancyGrid& grid, const ReachConfig& cfg,
                      const std::string& direction);
void write_grid_json(const OccupancyGrid& grid, const ReachConfig& cfg,
                     const std::string& direction, const std::string& path);

/// CSV of occupied-cell centers: theta,vx,vy,phi,count.
std::string occupied_cells_csv(const OccupancyGrid& grid);
void write_occupied_cells_csv(const OccupancyGrid& grid, const std::string& path);

}  // namespace lielcs
