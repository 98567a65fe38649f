#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace qrate {

/// Parameters of the additive (Bachelier) price process
///   dX = drift dt + sigma dW,  X(0) = x0.
/// Under no-arbitrage the drift is pinned to the risk-free rate r.
struct ModelParams {
  double x0 = 0.0;
  double drift = 0.0;
  double r = 0.0;
  double sigma = 0.0;
  bool no_arbitrage = true;

  /// Risk-neutral parameters with drift == r.
  static ModelParams risk_neutral(double x0, double r, double sigma) {
    return ModelParams{x0, r, r, sigma, true};
  }
};

/// Returns p unchanged, or throws ValidationError naming the bad field.
const ModelParams& validate_params(const ModelParams& p);

/// Strictly increasing sample times starting at exactly 0.
class TimeGrid {
 public:
  explicit TimeGrid(std::vector<double> times);

  /// {0, step, 2 step, ..., horizon}; the last point is clamped to `horizon`.
  static TimeGrid uniform(double horizon, double step);

  std::span<const double> times() const noexcept { return times_; }
  std::size_t size() const noexcept { return times_.size(); }
  double operator[](std::size_t i) const { return times_[i]; }
  double horizon() const noexcept { return times_.back(); }

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  std::vector<double> times_;
};

struct GaussianLaw {
  double mean = 0.0;
  double variance = 0.0;
};

/// Law of X(t): N(x0 + drift t, sigma^2 t). Under no-arbitrage drift == r.
GaussianLaw exact_marginal(const ModelParams& p, double t);

/// Simulated trajectories, row-major: one row per path, one column per
/// grid time.
class PathSet {
 public:
  PathSet(TimeGrid grid, std::size_t n_paths, std::uint64_t seed);

  const TimeGrid& grid() const noexcept { return grid_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::size_t n_paths() const noexcept { return n_paths_; }
  std::size_t n_times() const noexcept { return grid_.size(); }

  std::span<const double> path(std::size_t i) const;
  std::span<double> path(std::size_t i);
  double value(std::size_t path, std::size_t step) const { return values_[path * n_times() + step]; }

  /// Cross-section X(t_step) over all paths.
  std::vector<double> column(std::size_t step) const;

  friend bool operator==(const PathSet&, const PathSet&) = default;

 private:
  TimeGrid grid_;
  std::size_t n_paths_;
  std::uint64_t seed_;
  std::vector<double> values_;
};

/// Exact-increment simulation. Path i draws its noise from stream
/// (seed, i), so the matrix is the same for every worker count.
/// `workers == 0` uses all hardware threads.
PathSet simulate_paths(const ModelParams& p, const TimeGrid& grid, std::size_t n_paths,
                       std::uint64_t seed, unsigned workers = 0);

/// First grid time at which the path reaches `level` from its starting
/// side (>= when starting below, <= when starting above). Only values up
/// to the returned index are inspected.
std::optional<double> first_hitting_time(std::span<const double> path, const TimeGrid& grid,
                                         double level);

/// Closed-form P(tau <= t) for continuous monitoring of arithmetic
/// Brownian motion with drift p.drift. sigma == 0 gives the deterministic
/// 0/1 answer.
double hitting_probability(const ModelParams& p, double level, double t);

struct HittingFrequency {
  std::size_t n_paths = 0;
  std::size_t hits = 0;
  double frequency = 0.0;
  double standard_error = 0.0;
};

/// Monte Carlo frequency of {tau <= grid.horizon()} using the same
/// per-path streams as simulate_paths, without materializing the paths.
HittingFrequency hitting_frequency(const ModelParams& p, double level, const TimeGrid& grid,
                                   std::size_t n_paths, std::uint64_t seed, unsigned workers = 0);

/// CSV export: header `t,path_0,...`, one row per grid time.
void write_csv(std::ostream& out, const PathSet& paths, int precision = 15);

}  // namespace qrate
