#include "qrate/model.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

#include "qrate/error.hpp"
#include "qrate/parallel.hpp"
#include "qrate/random.hpp"

namespace qrate {

namespace {

void require_finite(double value, const char* field) {
  if (!std::isfinite(value)) throw ValidationError(field, "must be finite");
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

// P(sup_{s<=t} W_s + mu s >= b) for b > 0, unit volatility.
double upcrossing_probability(double b, double mu, double t) {
  const double s = std::sqrt(t);
  const double direct = normal_cdf((-b + mu * t) / s);
  // exp(2 mu b) * Phi(.) can overflow * underflow; combine in log space.
  const double tail = normal_cdf((-b - mu * t) / s);
  const double reflected = tail > 0.0 ? std::exp(2.0 * mu * b + std::log(tail)) : 0.0;
  return std::min(1.0, direct + reflected);
}

}  // namespace

const ModelParams& validate_params(const ModelParams& p) {
  require_finite(p.x0, "x0");
  require_finite(p.drift, "drift");
  require_finite(p.r, "r");
  require_finite(p.sigma, "sigma");
  if (p.sigma < 0.0) throw ValidationError("sigma", "must be non-negative");
  if (p.no_arbitrage && p.drift != p.r) {
    throw ValidationError("drift", "must equal r under no-arbitrage");
  }
  return p;
}

TimeGrid::TimeGrid(std::vector<double> times) : times_(std::move(times)) {
  if (times_.size() < 2) throw ValidationError("grid", "needs at least two times");
  if (times_.front() != 0.0) throw ValidationError("grid", "first time must be exactly 0");
  for (std::size_t i = 1; i < times_.size(); ++i) {
    if (!std::isfinite(times_[i]) || !(times_[i] > times_[i - 1])) {
      throw ValidationError("grid", "times must be finite and strictly increasing (index " +
                                        std::to_string(i) + ")");
    }
  }
}

TimeGrid TimeGrid::uniform(double horizon, double step) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw ValidationError("horizon", "must be positive");
  if (!(step > 0.0) || !std::isfinite(step)) throw ValidationError("step", "must be positive");
  const auto intervals = static_cast<std::size_t>(std::ceil(horizon / step - 1e-9));
  std::vector<double> times(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) times[i] = std::min(horizon, static_cast<double>(i) * step);
  times.back() = horizon;
  return TimeGrid(std::move(times));
}

GaussianLaw exact_marginal(const ModelParams& p, double t) {
  validate_params(p);
  if (!(t >= 0.0) || !std::isfinite(t)) throw ValidationError("t", "must be a non-negative finite time");
  return {p.x0 + p.drift * t, p.sigma * p.sigma * t};
}

PathSet::PathSet(TimeGrid grid, std::size_t n_paths, std::uint64_t seed)
    : grid_(std::move(grid)), n_paths_(n_paths), seed_(seed), values_(n_paths * grid_.size()) {}

std::span<const double> PathSet::path(std::size_t i) const {
  return std::span<const double>(values_).subspan(i * n_times(), n_times());
}

std::span<double> PathSet::path(std::size_t i) {
  return std::span<double>(values_).subspan(i * n_times(), n_times());
}

std::vector<double> PathSet::column(std::size_t step) const {
  std::vector<double> out(n_paths_);
  for (std::size_t i = 0; i < n_paths_; ++i) out[i] = value(i, step);
  return out;
}

namespace {

// Fills one trajectory from its own stream. Returns early if `stop`
// reports true for the value just written.
template <typename Stop>
void fill_path(const ModelParams& p, const TimeGrid& grid, std::uint64_t seed, std::size_t index,
               std::span<double> out, Stop&& stop) {
  NormalStream noise(seed, index);
  double x = p.x0;
  out[0] = x;
  if (stop(0, x)) return;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double dt = grid[i] - grid[i - 1];
    const double z = noise();
    if (p.sigma == 0.0) {
      x = p.x0 + p.drift * grid[i];
    } else {
      x += p.drift * dt + p.sigma * std::sqrt(dt) * z;
    }
    out[i] = x;
    if (stop(i, x)) return;
  }
}

}  // namespace

PathSet simulate_paths(const ModelParams& p, const TimeGrid& grid, std::size_t n_paths,
                       std::uint64_t seed, unsigned workers) {
  validate_params(p);
  if (n_paths == 0) throw ValidationError("n_paths", "must be at least 1");
  PathSet set(grid, n_paths, seed);
  parallel_for(n_paths, workers, [&](std::size_t i) {
    fill_path(p, grid, seed, i, set.path(i), [](std::size_t, double) { return false; });
  });
  return set;
}

std::optional<double> first_hitting_time(std::span<const double> path, const TimeGrid& grid,
                                         double level) {
  if (path.size() != grid.size()) throw ValidationError("path", "length does not match grid");
  if (path.empty()) return std::nullopt;
  const bool from_below = path[0] <= level;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (from_below ? path[i] >= level : path[i] <= level) return grid[i];
  }
  return std::nullopt;
}

double hitting_probability(const ModelParams& p, double level, double t) {
  validate_params(p);
  require_finite(level, "level");
  if (level == p.x0) throw ValidationError("level", "must differ from x0");
  if (!(t > 0.0) || !std::isfinite(t)) throw ValidationError("t", "must be positive");
  const double distance = std::abs(level - p.x0);
  // Drift toward the level, seen from a start below it.
  const double toward = level > p.x0 ? p.drift : -p.drift;
  if (p.sigma == 0.0) return toward * t >= distance ? 1.0 : 0.0;
  return upcrossing_probability(distance / p.sigma, toward / p.sigma, t);
}

HittingFrequency hitting_frequency(const ModelParams& p, double level, const TimeGrid& grid,
                                   std::size_t n_paths, std::uint64_t seed, unsigned workers) {
  validate_params(p);
  require_finite(level, "level");
  if (n_paths == 0) throw ValidationError("n_paths", "must be at least 1");
  std::vector<unsigned char> hit(n_paths, 0);
  parallel_for(n_paths, workers, [&](std::size_t i) {
    std::vector<double> scratch(grid.size());
    const bool from_below = p.x0 <= level;
    fill_path(p, grid, seed, i, scratch, [&](std::size_t, double x) {
      const bool reached = from_below ? x >= level : x <= level;
      if (reached) hit[i] = 1;
      return reached;
    });
  });
  HittingFrequency out;
  out.n_paths = n_paths;
  for (auto h : hit) out.hits += h;
  out.frequency = static_cast<double>(out.hits) / static_cast<double>(n_paths);
  out.standard_error = std::sqrt(out.frequency * (1.0 - out.frequency) / static_cast<double>(n_paths));
  return out;
}

void write_csv(std::ostream& out, const PathSet& paths, int precision) {
  const auto saved = out.flags();
  const auto saved_precision = out.precision();
  out << std::setprecision(precision);
  out << 't';
  for (std::size_t j = 0; j < paths.n_paths(); ++j) out << ",path_" << j;
  out << '\n';
  for (std::size_t i = 0; i < paths.n_times(); ++i) {
    out << paths.grid()[i];
    for (std::size_t j = 0; j < paths.n_paths(); ++j) out << ',' << paths.value(j, i);
    out << '\n';
  }
  out.flags(saved);
  out.precision(saved_precision);
}

}  // namespace qrate
