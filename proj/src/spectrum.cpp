#include "qrate/spectrum.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "qrate/error.hpp"

namespace qrate {

namespace {

void require_positive(double value, const char* field) {
  if (!(value > 0.0) || !std::isfinite(value)) throw ValidationError(field, "must be positive");
}

constexpr double kQuadratureTolerance = 1e-10;

}  // namespace

double quantized_rate(std::int64_t n, double sigma, double strike) {
  require_positive(sigma, "sigma");
  require_positive(strike, "strike");
  if (n < 0) throw ValidationError("n", "must be non-negative");
  const double nn = static_cast<double>(n);
  constexpr double pi2 = std::numbers::pi * std::numbers::pi;
  return (sigma * sigma) / (2.0 * strike * strike) * (nn * nn) * pi2;
}

ModeSpec make_mode(std::int64_t n, double sigma, double strike) {
  ModeSpec m;
  m.n = n;
  m.sigma = sigma;
  m.strike = strike;
  m.rate = quantized_rate(n, sigma, strike);
  m.diffusion = 0.5 * sigma * sigma;
  m.wavenumber = static_cast<double>(n) * std::numbers::pi / strike;
  return m;
}

RateSpectrum rate_spectrum(std::int64_t n_max, double sigma, double strike) {
  if (n_max < 1) throw ValidationError("n_max", "must be at least 1");
  RateSpectrum s{sigma, strike, {}};
  s.modes.reserve(static_cast<std::size_t>(n_max));
  for (std::int64_t n = 1; n <= n_max; ++n) s.modes.push_back(make_mode(n, sigma, strike));
  return s;
}

ModeMatch mode_index(double r, double sigma, double strike, double rel_tol) {
  require_positive(r, "r");
  require_positive(sigma, "sigma");
  require_positive(strike, "strike");
  require_positive(rel_tol, "rel_tol");
  const double continuous = std::sqrt(2.0 * r * strike * strike / (sigma * sigma)) / std::numbers::pi;
  const auto n = std::max<std::int64_t>(1, std::llround(continuous));
  const bool admissible = std::abs(quantized_rate(n, sigma, strike) - r) <= rel_tol * r;
  return {n, admissible};
}

double boundary_residual(std::int64_t n, double sigma, double strike) {
  const double r = quantized_rate(n, sigma, strike);
  const double d = 0.5 * sigma * sigma;
  return std::abs(std::sin(std::sqrt(r / d) * strike));
}

double sine_square_integral(double wavenumber, double strike) {
  require_positive(strike, "strike");
  if (wavenumber == 0.0) return 0.0;
  return 0.5 * strike - std::sin(2.0 * wavenumber * strike) / (4.0 * wavenumber);
}

double sine_square_integral_quadrature(double wavenumber, double strike, double* error_estimate) {
  require_positive(strike, "strike");
  auto integrand = [wavenumber](double x) {
    const double s = std::sin(wavenumber * x);
    return s * s;
  };
  double error = 0.0;
  // Split into whole half-periods so each panel sees one smooth bump.
  const double half_period = wavenumber > 0.0 ? std::numbers::pi / wavenumber : strike;
  const auto panels = static_cast<std::size_t>(std::max(1.0, std::ceil(strike / half_period)));
  double total = 0.0;
  for (std::size_t i = 0; i < panels; ++i) {
    const double lo = strike * static_cast<double>(i) / static_cast<double>(panels);
    const double hi = strike * static_cast<double>(i + 1) / static_cast<double>(panels);
    double panel_error = 0.0;
    total += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        integrand, lo, hi, 15, kQuadratureTolerance, &panel_error);
    error += panel_error;
  }
  if (error_estimate) *error_estimate = error;
  return total;
}

NormalizationResult normalization_constant(double r, double sigma, double strike) {
  require_positive(r, "r");
  require_positive(sigma, "sigma");
  require_positive(strike, "strike");
  const double a = std::sqrt(r / (0.5 * sigma * sigma));
  NormalizationResult out;
  out.closed_form = sine_square_integral(a, strike);
  out.quadrature = sine_square_integral_quadrature(a, strike);
  if (!(out.closed_form > 0.0) || !(out.quadrature > 0.0)) {
    throw NumericError("normalization integral is not positive");
  }
  out.integral = out.closed_form;
  out.method = IntegralMethod::closed_form;
  out.estimated_error = std::abs(out.closed_form - out.quadrature);
  out.amplitude = 1.0 / std::sqrt(out.integral);
  return out;
}

PayoffSurface payoff_surface(const ModeSpec& mode, double amplitude, std::span<const double> x_grid,
                             std::span<const double> t_grid, DiscountSign sign) {
  if (!std::isfinite(amplitude)) throw ValidationError("amplitude", "must be finite");
  if (x_grid.empty()) throw ValidationError("x_grid", "must not be empty");
  if (t_grid.empty()) throw ValidationError("t_grid", "must not be empty");
  for (double t : t_grid) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw ValidationError("t_grid", "times must be non-negative");
  }
  PayoffSurface s;
  s.mode = mode;
  s.amplitude = amplitude;
  s.sign = sign;
  s.x.assign(x_grid.begin(), x_grid.end());
  s.t.assign(t_grid.begin(), t_grid.end());
  s.values.resize(s.x.size() * s.t.size());
  s.outside_strike_box.resize(s.x.size());
  const double exponent = discount_exponent_sign(sign) * mode.rate;
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    const double x = s.x[i];
    if (!std::isfinite(x)) throw ValidationError("x_grid", "must be finite");
    s.outside_strike_box[i] = x < 0.0 || x > mode.strike;
    const double shape = amplitude * std::sin(mode.wavenumber * x);
    for (std::size_t j = 0; j < s.t.size(); ++j) {
      s.values[i * s.t.size() + j] = shape * std::exp(exponent * s.t[j]);
    }
  }
  return s;
}

std::string_view to_string(IntegralMethod method) {
  return method == IntegralMethod::closed_form ? "closed_form" : "quadrature";
}

}  // namespace qrate
