#include "qrate/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "qrate/error.hpp"

namespace qrate {

namespace {

void require_sigma(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ValidationError("sigma", "must be positive");
}

void require_rate(double r) {
  if (!std::isfinite(r)) throw ValidationError("r", "must be finite");
}

}  // namespace

OdeProblem::OdeProblem(double r_, double sigma_, OdeForm form_) : r(r_), sigma(sigma_), form(form_) {
  require_rate(r);
  require_sigma(sigma);
}

CharacteristicRoots characteristic_roots_full(double r, double sigma) {
  require_rate(r);
  require_sigma(sigma);
  const double a = 0.5 * sigma * sigma;
  const double threshold = 2.0 * sigma * sigma;
  const double gap = r - threshold;
  constexpr double eps = std::numeric_limits<double>::epsilon();

  if (r == 0.0 || std::abs(gap) <= 8.0 * eps * std::max(std::abs(r), threshold)) {
    const double root = -r / (2.0 * a);
    return {RootCase::repeated_real, root, root};
  }
  const double disc = r * gap;  // r^2 - 4 a r
  if (disc < 0.0) {
    const double re = -r / (2.0 * a);
    const double im = std::sqrt(-disc) / (2.0 * a);
    return {RootCase::complex_conjugate, {re, im}, {re, -im}};
  }
  // Cancellation-free form of the quadratic formula.
  const double q = -0.5 * (r + std::copysign(std::sqrt(disc), r));
  double l1 = q / a;
  double l2 = r / q;
  if (l1 < l2) std::swap(l1, l2);
  return {RootCase::distinct_real, l1, l2};
}

CharacteristicRoots characteristic_roots_hedged(double r, double sigma) {
  require_rate(r);
  require_sigma(sigma);
  if (r < 0.0) throw ValidationError("r", "hedged form requires r >= 0");
  if (r == 0.0) return {RootCase::repeated_real, 0.0, 0.0};
  const double k = std::sqrt(r / (0.5 * sigma * sigma));
  return {RootCase::complex_conjugate, {0.0, k}, {0.0, -k}};
}

std::complex<double> characteristic_polynomial(OdeForm form, double r, double sigma,
                                               std::complex<double> lambda) {
  const double d = 0.5 * sigma * sigma;
  if (form == OdeForm::hedged) return r + d * lambda * lambda;
  return d * lambda * lambda + r * lambda + r;
}

std::complex<double> Solution::complex_value(double x) const {
  return std::visit(
      [x](const auto& s) -> std::complex<double> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Sine>) {
          return s.amplitude * std::sin(s.wavenumber * x);
        } else if constexpr (std::is_same_v<T, Exponential>) {
          if (s.roots.kind == RootCase::repeated_real) {
            return (s.a + s.b * x) * std::exp(s.roots.root1 * x);
          }
          return s.a * std::exp(s.roots.root1 * x) + s.b * std::exp(s.roots.root2 * x);
        } else {
          return s(x);
        }
      },
      repr_);
}

double Solution::operator()(double x) const { return complex_value(x).real(); }

Solution sine_solution(double amplitude, double r, double sigma) {
  require_sigma(sigma);
  if (!(r > 0.0) || !std::isfinite(r)) throw ValidationError("r", "must be positive");
  if (!std::isfinite(amplitude)) throw ValidationError("amplitude", "must be finite");
  return Solution(Solution::Sine{amplitude, std::sqrt(r / (0.5 * sigma * sigma))});
}

Solution general_solution(const CharacteristicRoots& roots, std::complex<double> a,
                          std::complex<double> b) {
  return Solution(Solution::Exponential{roots, a, b});
}

DeltaGamma delta_gamma(const Solution& v, double x, double h) {
  if (!std::isfinite(x)) throw ValidationError("x", "must be finite");
  if (!std::isfinite(h) || h < 1e-8 * std::max(1.0, std::abs(x))) {
    throw ValidationError("h", "step too small for central differences");
  }
  const double up = v(x + h);
  const double mid = v(x);
  const double down = v(x - h);
  return {(up - down) / (2.0 * h), (up - 2.0 * mid + down) / (h * h), h};
}

double residual(const Solution& v, const OdeProblem& problem, double x, double h) {
  const auto [delta, gamma, step] = delta_gamma(v, x, h);
  const double value = problem.r * v(x) + problem.diffusion() * gamma;
  return problem.form == OdeForm::full ? value + problem.r * delta : value;
}

std::string_view to_string(RootCase kind) {
  switch (kind) {
    case RootCase::complex_conjugate: return "complex_conjugate";
    case RootCase::distinct_real: return "distinct_real";
    case RootCase::repeated_real: return "repeated_real";
  }
  return "unknown";
}

std::string_view to_string(OdeForm form) { return form == OdeForm::full ? "full" : "hedged"; }

}  // namespace qrate
