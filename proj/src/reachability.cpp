#include "lielcs/reachability.hpp"

#include <omp.h>

#include <cmath>
#include <cstdlib>
#include <deque>
#include <fstream>

#include <json.hpp>

#include "lielcs/rng.hpp"

namespace lielcs {

namespace {

int angle_bin(double angle, int bins) {
  const int b = static_cast<int>(wrap_angle(angle) * bins / kTwoPi);
  return b >= bins ? bins - 1 : b;  // wrap_angle can round up to 2*pi
}

/// One trajectory of the sampler; shared verbatim by the serial and the
/// OpenMP paths so their grids are bit-identical.
void sample_trajectory(const ControlSystem& sys, const CoverElement& start,
                       const ReachConfig& cfg, std::uint64_t index, OccupancyGrid& grid) {
  SplitMix64 rng(mix_stream(cfg.seed, index));
  CoverElement state = start;
  grid.count_sample();
  grid.mark(state);
  double t = 0.0;
  while (t < cfg.horizon) {
    const double d = rng.uniform(cfg.duration_min, cfg.duration_max);
    const double u = rng.uniform(sys.omega_minus, sys.omega_plus);
    for (int k = 1; k <= cfg.samples_per_segment; ++k) {
      const CoverElement s = segment_exact(sys, u, d * k / cfg.samples_per_segment, state);
      grid.count_sample();
      grid.mark(s);
      if (k == cfg.samples_per_segment) state = s;
    }
    t += d;  // final segment runs whole, so larger horizons only add cells
  }
}

ControlSystem oriented(const ControlSystem& sys, Direction direction) {
  return direction == Direction::forward ? sys : time_reversed(sys);
}

}  // namespace

void Window::validate() const {
  if (!(v_min.x() < v_max.x() && v_min.y() < v_max.y()))
    throw Error(Errc::invalid_window, "window requires v_min < v_max componentwise");
  if (theta_bins < 2 || v_bins < 2 || phi_bins < 2)
    throw Error(Errc::invalid_window, "window requires all bin counts >= 2");
}

bool Window::operator==(const Window& o) const {
  return v_min == o.v_min && v_max == o.v_max && theta_bins == o.theta_bins &&
         v_bins == o.v_bins && phi_bins == o.phi_bins;
}

OccupancyGrid::OccupancyGrid(const Window& w) : window_(w) {
  window_.validate();
  counts_.assign(window_.cell_count(), 0);
}

std::size_t OccupancyGrid::index(int itheta, int ix, int iy, int iphi) const {
  return ((static_cast<std::size_t>(itheta) * window_.v_bins + ix) * window_.v_bins + iy) *
             window_.phi_bins +
         iphi;
}

bool OccupancyGrid::mark(const CoverElement& s) {
  const double wx = window_.v_max.x() - window_.v_min.x();
  const double wy = window_.v_max.y() - window_.v_min.y();
  const double fx = (s.v.x() - window_.v_min.x()) / wx;
  const double fy = (s.v.y() - window_.v_min.y()) / wy;
  if (fx < 0.0 || fx >= 1.0 || fy < 0.0 || fy >= 1.0) return false;  // outside: skip, not clamp
  const int ix = static_cast<int>(fx * window_.v_bins);
  const int iy = static_cast<int>(fy * window_.v_bins);
  const int it = angle_bin(s.theta, window_.theta_bins);
  const int ip = angle_bin(s.phi, window_.phi_bins);
  ++counts_[index(it, std::min(ix, window_.v_bins - 1), std::min(iy, window_.v_bins - 1), ip)];
  return true;
}

void OccupancyGrid::merge(const OccupancyGrid& other) {
  if (!(window_ == other.window_))
    throw Error(Errc::invalid_window, "cannot merge grids over different windows");
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
  total_samples_ += other.total_samples_;
}

std::size_t OccupancyGrid::occupied_cells() const {
  std::size_t n = 0;
  for (const auto c : counts_)
    if (c > 0) ++n;
  return n;
}

double OccupancyGrid::occupancy_fraction() const {
  return counts_.empty() ? 0.0 : static_cast<double>(occupied_cells()) / counts_.size();
}

OccupancyGrid OccupancyGrid::intersect(const OccupancyGrid& a, const OccupancyGrid& b) {
  if (!(a.window_ == b.window_))
    throw Error(Errc::invalid_window, "cannot intersect grids over different windows");
  OccupancyGrid out(a.window_);
  for (std::size_t i = 0; i < out.counts_.size(); ++i)
    out.counts_[i] = (a.counts_[i] > 0 && b.counts_[i] > 0) ? 1 : 0;
  out.total_samples_ = a.total_samples_ + b.total_samples_;
  return out;
}

Vec4 OccupancyGrid::cell_center(std::size_t flat) const {
  const int ip = static_cast<int>(flat % window_.phi_bins);
  flat /= window_.phi_bins;
  const int iy = static_cast<int>(flat % window_.v_bins);
  flat /= window_.v_bins;
  const int ix = static_cast<int>(flat % window_.v_bins);
  const int it = static_cast<int>(flat / window_.v_bins);
  const double wx = (window_.v_max.x() - window_.v_min.x()) / window_.v_bins;
  const double wy = (window_.v_max.y() - window_.v_min.y()) / window_.v_bins;
  return {kTwoPi * (it + 0.5) / window_.theta_bins, window_.v_min.x() + wx * (ix + 0.5),
          window_.v_min.y() + wy * (iy + 0.5), kTwoPi * (ip + 0.5) / window_.phi_bins};
}

void ReachConfig::validate() const {
  if (horizon <= 0.0) throw Error(Errc::invalid_config, "horizon must be positive");
  if (duration_min <= 0.0 || duration_max < duration_min)
    throw Error(Errc::invalid_config, "segment duration range must satisfy 0 < d_min <= d_max");
  if (samples_per_segment < 1)
    throw Error(Errc::invalid_config, "samples_per_segment must be >= 1");
}

ControlSystem time_reversed(const ControlSystem& sys) {
  // reversed trajectories solve sdot = -X(s) - u Y(s) over the same Omega
  ControlSystem out = sys;
  out.X = LinearField(-sys.X.xi, -sys.X.p, -sys.X.q, -sys.X.a);
  out.Y = InvariantField{-sys.Y.alpha, -sys.Y.eta, -sys.Y.beta};
  return out;
}

OccupancyGrid sample_reach_serial(const ControlSystem& sys, const GroupElement& start,
                                  const Window& window, const ReachConfig& cfg,
                                  Direction direction) {
  window.validate();
  cfg.validate();
  const ControlSystem esys = oriented(sys, direction);
  OccupancyGrid grid(window);
  const CoverElement s0 = lift(start);
  for (std::uint64_t i = 0; i < cfg.n_trajectories; ++i)
    sample_trajectory(esys, s0, cfg, i, grid);
  return grid;
}

OccupancyGrid sample_reach(const ControlSystem& sys, const GroupElement& start,
                           const Window& window, const ReachConfig& cfg, Direction direction) {
  window.validate();
  cfg.validate();
  const ControlSystem esys = oriented(sys, direction);
  OccupancyGrid grid(window);
  const CoverElement s0 = lift(start);
  const auto n = static_cast<std::int64_t>(cfg.n_trajectories);
  const int threads = resolve_thread_count();
#pragma omp parallel num_threads(threads)
  {
    OccupancyGrid local(window);
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < n; ++i)
      sample_trajectory(esys, s0, cfg, static_cast<std::uint64_t>(i), local);
#pragma omp critical
    grid.merge(local);  // counts add, so merge order cannot matter
  }
  return grid;
}

OccupancyGrid estimate_control_set(const ControlSystem& sys, const GroupElement& start,
                                   const Window& window, const ReachConfig& cfg) {
  const OccupancyGrid fwd = sample_reach(sys, start, window, cfg, Direction::forward);
  const OccupancyGrid bwd = sample_reach(sys, start, window, cfg, Direction::backward);
  return OccupancyGrid::intersect(fwd, bwd);
}

std::unordered_map<std::size_t, double> fiber_coverage(const OccupancyGrid& grid) {
  const Window& w = grid.window();
  std::unordered_map<std::size_t, double> out;
  const std::size_t base_cells =
      static_cast<std::size_t>(w.theta_bins) * w.v_bins * w.v_bins;
  for (std::size_t base = 0; base < base_cells; ++base) {
    int occupied = 0;
    for (int ip = 0; ip < w.phi_bins; ++ip)
      if (grid.counts()[base * w.phi_bins + ip] > 0) ++occupied;
    if (occupied > 0) out.emplace(base, static_cast<double>(occupied) / w.phi_bins);
  }
  return out;
}

FiberStats fiber_stats(const OccupancyGrid& grid) {
  const auto cov = fiber_coverage(grid);
  FiberStats stats;
  stats.base_cells = cov.size();
  if (cov.empty()) return stats;
  double sum = 0.0, mn = 1.0;
  for (const auto& [base, frac] : cov) {
    sum += frac;
    mn = std::min(mn, frac);
  }
  stats.min = mn;
  stats.mean = sum / static_cast<double>(cov.size());
  return stats;
}

std::size_t largest_component_size(const OccupancyGrid& grid) {
  const Window& w = grid.window();
  const auto& counts = grid.counts();
  std::vector<char> seen(counts.size(), 0);
  std::size_t best = 0;
  const int dims[4] = {w.theta_bins, w.v_bins, w.v_bins, w.phi_bins};
  const bool wraps[4] = {true, false, false, true};
  for (std::size_t root = 0; root < counts.size(); ++root) {
    if (counts[root] == 0 || seen[root]) continue;
    std::size_t size = 0;
    std::deque<std::size_t> queue{root};
    seen[root] = 1;
    while (!queue.empty()) {
      const std::size_t cell = queue.front();
      queue.pop_front();
      ++size;
      int idx[4];
      std::size_t rest = cell;
      idx[3] = static_cast<int>(rest % dims[3]);
      rest /= dims[3];
      idx[2] = static_cast<int>(rest % dims[2]);
      rest /= dims[2];
      idx[1] = static_cast<int>(rest % dims[1]);
      idx[0] = static_cast<int>(rest / dims[1]);
      for (int axis = 0; axis < 4; ++axis) {
        for (int step = -1; step <= 1; step += 2) {
          int ni = idx[axis] + step;
          if (wraps[axis])
            ni = (ni + dims[axis]) % dims[axis];
          else if (ni < 0 || ni >= dims[axis])
            continue;
          int nidx[4] = {idx[0], idx[1], idx[2], idx[3]};
          nidx[axis] = ni;
          const std::size_t ncell =
              ((static_cast<std::size_t>(nidx[0]) * dims[1] + nidx[1]) * dims[2] + nidx[2]) *
                  dims[3] +
              nidx[3];
          if (counts[ncell] > 0 && !seen[ncell]) {
            seen[ncell] = 1;
            queue.push_back(ncell);
          }
        }
      }
    }
    best = std::max(best, size);
  }
  return best;
}

double check_semiconjugacy(const ControlSystem& sys, const GroupElement& start,
                           const ControlInput& input, int samples_per_segment) {
  const Trajectory full = propagate(sys, input, lift(start), samples_per_segment);
  double theta = lift(start).theta;
  Vec2 v = start.v;
  double dev = 0.0;
  std::size_t i = 1;
  for (const auto& seg : input.segments) {
    const double sub = seg.duration / samples_per_segment;
    for (int k = 0; k < samples_per_segment; ++k, ++i) {
      segment_exact_se2(sys, seg.u, sub, theta, v);
      dev = std::max(dev, std::abs(full.states[i].theta - theta));
      dev = std::max(dev, (full.states[i].v - v).cwiseAbs().maxCoeff());
    }
  }
  return dev;
}

bool singular_locus_check(const ControlSystem& sys) {
  if (std::abs(sys.X.p) > 1e-12 || std::abs(sys.X.q) > 1e-12)
    throw Error(Errc::precondition_violated, "singular locus check requires A = 0");
  SplitMix64 rng(0xD1CEu);
  for (int i = 0; i < 100; ++i) {
    CoverElement g;
    g.theta = 0.0;
    g.v = {rng.uniform(-10.0, 10.0), rng.uniform(-10.0, 10.0)};
    g.phi = rng.uniform(0.0, kTwoPi);
    if (eval_linear(sys.X, g).cwiseAbs().maxCoeff() > 1e-14) return false;
  }
  return true;
}

int resolve_thread_count() {
  if (const char* env = std::getenv("LIE_LCS_THREADS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n > 0) return static_cast<int>(n);
  }
  return omp_get_max_threads();
}

std::string grid_json(const OccupancyGrid& grid, const ReachConfig& cfg,
                      const std::string& direction) {
  nlohmann::ordered_json j;
  const Window& w = grid.window();
  j["window"] = {{"v_min", {w.v_min.x(), w.v_min.y()}},
                 {"v_max", {w.v_max.x(), w.v_max.y()}},
                 {"theta_bins", w.theta_bins},
                 {"v_bins", w.v_bins},
                 {"phi_bins", w.phi_bins}};
  j["config"] = {{"horizon", cfg.horizon},
                 {"n_trajectories", cfg.n_trajectories},
                 {"seed", cfg.seed},
                 {"duration_range", {cfg.duration_min, cfg.duration_max}},
                 {"samples_per_segment", cfg.samples_per_segment}};
  j["direction"] = direction;
  j["total_samples"] = grid.total_samples();
  j["occupied_cells"] = grid.occupied_cells();
  j["occupancy_fraction"] = grid.occupancy_fraction();
  j["counts"] = grid.counts();
  return j.dump();
}

void write_grid_json(const OccupancyGrid& grid, const ReachConfig& cfg,
                     const std::string& direction, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::invalid_argument, "cannot open " + path + " for writing");
  f << grid_json(grid, cfg, direction);
}

std::string occupied_cells_csv(const OccupancyGrid& grid) {
  std::string out = "theta,vx,vy,phi,count\n";
  char line[192];
  for (std::size_t i = 0; i < grid.counts().size(); ++i) {
    if (grid.counts()[i] == 0) continue;
    const Vec4 c = grid.cell_center(i);
    std::snprintf(line, sizeof(line), "%.10g,%.10g,%.10g,%.10g,%u\n", c(0), c(1), c(2), c(3),
                  grid.counts()[i]);
    out += line;
  }
  return out;
}

void write_occupied_cells_csv(const OccupancyGrid& grid, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::invalid_argument, "cannot open " + path + " for writing");
  f << occupied_cells_csv(grid);
}

}  // namespace lielcs
