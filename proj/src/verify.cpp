#include "qrate/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "qrate/error.hpp"
#include "qrate/parallel.hpp"
#include "qrate/random.hpp"

namespace qrate {

namespace {

constexpr std::size_t kBlockSize = 8192;

struct Moments {
  std::size_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  void merge(const Moments& o) {
    if (o.count == 0) return;
    if (count == 0) {
      *this = o;
      return;
    }
    const double n = static_cast<double>(count + o.count);
    const double delta = o.mean - mean;
    mean += delta * static_cast<double>(o.count) / n;
    m2 += o.m2 + delta * delta * static_cast<double>(count) * static_cast<double>(o.count) / n;
    count += o.count;
  }

  double standard_error() const {
    if (count < 2) return 0.0;
    return std::sqrt(m2 / static_cast<double>(count - 1) / static_cast<double>(count));
  }
};

struct BlockFailure {
  std::size_t index = std::numeric_limits<std::size_t>::max();
  double input = 0.0;
};

// Draws `n` samples in fixed blocks; block b uses stream (seed, b).
// draw(noise, failure_input) returns the sample value.
template <typename Draw>
std::vector<Moments> sample_blocks(std::size_t n, std::uint64_t seed, unsigned workers, Draw&& draw,
                                   std::vector<BlockFailure>& failures) {
  const std::size_t blocks = (n + kBlockSize - 1) / kBlockSize;
  std::vector<Moments> stats(blocks);
  failures.assign(blocks, {});
  parallel_for(blocks, workers, [&](std::size_t b) {
    NormalStream noise(seed, b);
    const std::size_t begin = b * kBlockSize;
    const std::size_t end = std::min(n, begin + kBlockSize);
    Moments m;
    for (std::size_t i = begin; i < end; ++i) {
      double input = 0.0;
      const double value = draw(noise, input);
      if (!std::isfinite(value)) {
        failures[b] = {i, input};
        return;
      }
      m.add(value);
    }
    stats[b] = m;
  });
  return stats;
}

Moments reduce(const std::vector<Moments>& blocks) {
  Moments total;
  for (const auto& m : blocks) total.merge(m);
  return total;
}

const BlockFailure* first_failure(const std::vector<BlockFailure>& failures) {
  for (const auto& f : failures) {
    if (f.index != std::numeric_limits<std::size_t>::max()) return &f;
  }
  return nullptr;
}

// Ito drift of V(X) e^{s r t} for dX = mu dt + sigma dW.
double ito_drift(const Solution& v, double r, double mu, double sigma, double x, double t,
                 DiscountSign sign, double h) {
  const double s = discount_exponent_sign(sign);
  const auto [delta, gamma, step] = delta_gamma(v, x, h);
  return std::exp(s * r * t) * (s * r * v(x) + mu * delta + 0.5 * sigma * sigma * gamma);
}

}  // namespace

double analytic_drift(const Solution& v, double r, double sigma, double x, double t, DiscountSign sign,
                      double h) {
  if (!std::isfinite(r)) throw ValidationError("r", "must be finite");
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw ValidationError("sigma", "must be non-negative");
  if (!(t >= 0.0)) throw ValidationError("t", "must be non-negative");
  return ito_drift(v, r, r, sigma, x, t, sign, h);
}

DriftReport drift_estimate(const Solution& v, const ModelParams& p, double x0, double t, double dt,
                           std::size_t n_samples, std::uint64_t seed, DiscountSign sign,
                           unsigned workers) {
  validate_params(p);
  if (!std::isfinite(x0)) throw ValidationError("x0", "must be finite");
  if (!(t >= 0.0) || !std::isfinite(t)) throw ValidationError("t", "must be non-negative");
  if (!(dt > 0.0)) throw ValidationError("dt", "must be positive");
  if (dt > 1e-2) throw ValidationError("dt", "must be at most 1e-2 for a one-step drift estimate");
  if (n_samples < 1000) throw ValidationError("n_samples", "must be at least 1000");

  const double s = discount_exponent_sign(sign);
  const double start = v(x0) * std::exp(s * p.r * t);
  const double growth = std::exp(s * p.r * (t + dt));
  const double mean_step = p.drift * dt;
  const double scale = p.sigma * std::sqrt(dt);

  std::vector<BlockFailure> failures;
  const auto blocks = sample_blocks(
      n_samples, seed, workers,
      [&](NormalStream& noise, double& input) {
        const double x = x0 + mean_step + scale * noise();
        input = x;
        return (v(x) * growth - start) / dt;
      },
      failures);
  if (const auto* f = first_failure(failures)) {
    std::ostringstream msg;
    msg << "non-finite drift sample " << f->index << " at x = " << f->input;
    throw NumericError(msg.str());
  }
  const Moments m = reduce(blocks);

  DriftReport report;
  report.x0 = x0;
  report.t = t;
  report.dt = dt;
  report.n_samples = n_samples;
  report.estimated_drift = m.mean;
  report.standard_error = m.standard_error();
  report.analytic_drift = ito_drift(v, p.r, p.drift, p.sigma, x0, t, sign, kDriftDerivativeStep);
  report.sign = sign;
  report.seed = seed;
  report.r = p.r;
  report.sigma = p.sigma;
  const double diff = report.estimated_drift - report.analytic_drift;
  report.z_score = report.standard_error > 0.0 ? diff / report.standard_error
                   : diff == 0.0                ? 0.0
                                                : std::copysign(std::numeric_limits<double>::infinity(), diff);
  return report;
}

MartingaleVerdict classify(const DriftReport& report, double z_threshold) {
  if (!(z_threshold > 0.0)) throw ValidationError("z_threshold", "must be positive");
  const double est = report.estimated_drift;
  double z;
  if (report.standard_error > 0.0) {
    z = est / report.standard_error;
  } else {
    z = est == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), est);
  }
  if (std::abs(z) <= z_threshold) return {Verdict::consistent_with_martingale, z_threshold};
  return {z < 0.0 ? Verdict::supermartingale_strict : Verdict::violates_supermartingale, z_threshold};
}

IntegrabilityWitness integrability_check(const Solution& v, const ModelParams& p, double t,
                                         std::size_t n_samples, std::uint64_t seed, DiscountSign sign,
                                         unsigned workers) {
  const GaussianLaw law = exact_marginal(p, t);
  if (n_samples < 1000) throw ValidationError("n_samples", "must be at least 1000");
  const double growth = std::exp(discount_exponent_sign(sign) * p.r * t);
  const double scale = std::sqrt(law.variance);

  std::vector<BlockFailure> failures;
  std::vector<Moments> signed_blocks;
  const auto abs_blocks = sample_blocks(
      n_samples, seed, workers,
      [&](NormalStream& noise, double& input) {
        const double x = law.mean + scale * noise();
        input = x;
        return std::abs(v(x) * growth);
      },
      failures);
  if (const auto* f = first_failure(failures)) {
    std::ostringstream msg;
    msg << "non-finite payoff sample " << f->index << " at x = " << f->input
        << "; E|Y(t)| cannot be certified finite";
    throw NumericError(msg.str());
  }
  // Same streams again for the signed mean; the draws are identical.
  signed_blocks = sample_blocks(
      n_samples, seed, workers,
      [&](NormalStream& noise, double& input) {
        const double x = law.mean + scale * noise();
        input = x;
        return v(x) * growth;
      },
      failures);

  const Moments abs_total = reduce(abs_blocks);
  const Moments signed_total = reduce(signed_blocks);
  IntegrabilityWitness w;
  w.n_samples = n_samples;
  w.mean_abs = abs_total.mean;
  w.mean = signed_total.mean;
  w.standard_error = abs_total.standard_error();
  if (const auto* sine = v.as_sine()) {
    w.analytic_bound = std::abs(sine->amplitude) * std::exp(std::abs(p.r) * t);
  }
  return w;
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::consistent_with_martingale: return "consistent_with_martingale";
    case Verdict::supermartingale_strict: return "supermartingale_strict";
    case Verdict::violates_supermartingale: return "violates_supermartingale";
  }
  return "unknown";
}

}  // namespace qrate
