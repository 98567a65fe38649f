#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "qrate/model.hpp"
#include "qrate/ode.hpp"
#include "qrate/payoff.hpp"

namespace qrate {

/// One-step Monte Carlo estimate of the drift rate E[dY | X(t) = x0] / dt
/// of Y = V(X) e^{+-r t}, next to its Ito value.
struct DriftReport {
  double x0 = 0.0;
  double t = 0.0;
  double dt = 0.0;
  std::size_t n_samples = 0;
  double estimated_drift = 0.0;
  double standard_error = 0.0;
  double analytic_drift = 0.0;
  double z_score = 0.0;  ///< (estimated - analytic) / standard_error
  DiscountSign sign = DiscountSign::standard_minus;
  std::uint64_t seed = 0;
  double r = 0.0;
  double sigma = 0.0;

  /// sigma == 0 makes every sample identical; the z statistics are then
  /// infinite (or zero) rather than meaningful.
  bool standard_error_zero() const noexcept { return standard_error == 0.0; }
};

enum class Verdict { consistent_with_martingale, supermartingale_strict, violates_supermartingale };

struct MartingaleVerdict {
  Verdict classification;
  double z_threshold;
};

inline constexpr double kDefaultDriftStep = 1e-3;
inline constexpr std::size_t kDefaultDriftSamples = 100'000;
inline constexpr double kDefaultZThreshold = 3.0;
/// Step for the finite-difference derivatives inside analytic_drift.
inline constexpr double kDriftDerivativeStep = 1e-4;

/// e^{+-rt} (+-r V + r V' + (sigma^2/2) V'') with derivatives by central
/// differences. The sign of the r V term follows `sign`.
double analytic_drift(const Solution& v, double r, double sigma, double x, double t, DiscountSign sign,
                      double h = kDriftDerivativeStep);

/// Samples X(t + dt) = x0 + drift dt + sigma sqrt(dt) Z exactly. Samples
/// are drawn in fixed-size blocks, one stream per block, so the report
/// is identical for every worker count. Requires dt <= 1e-2 and
/// n_samples >= 1000.
DriftReport drift_estimate(const Solution& v, const ModelParams& p, double x0, double t, double dt,
                           std::size_t n_samples, std::uint64_t seed, DiscountSign sign,
                           unsigned workers = 0);

/// Drift-versus-zero test: |estimated / SE| <= threshold is consistent
/// with a martingale, below -threshold is a strict supermartingale.
MartingaleVerdict classify(const DriftReport& report, double z_threshold = kDefaultZThreshold);

struct IntegrabilityWitness {
  std::size_t n_samples = 0;
  double mean_abs = 0.0;  ///< estimate of E|Y(t)|
  double mean = 0.0;      ///< estimate of E[Y(t)]
  double standard_error = 0.0;
  std::optional<double> analytic_bound;  ///< |A| e^{|r| t} for sine evaluators
};

/// Monte Carlo E|Y(t)| with X(t) drawn from its exact marginal. Throws
/// NumericError naming the first offending sample on any non-finite value.
IntegrabilityWitness integrability_check(const Solution& v, const ModelParams& p, double t,
                                         std::size_t n_samples, std::uint64_t seed,
                                         DiscountSign sign = DiscountSign::standard_minus,
                                         unsigned workers = 0);

std::string_view to_string(Verdict verdict);

}  // namespace qrate
