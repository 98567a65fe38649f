#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "qrate/payoff.hpp"

namespace qrate {

/// One quantized mode: the rate at which sin(sqrt(r/D) x) vanishes at x = K.
struct ModeSpec {
  std::int64_t n = 1;
  double sigma = 0.0;
  double strike = 0.0;
  double rate = 0.0;        ///< r_n = sigma^2 / (2 K^2) * n^2 * pi^2
  double diffusion = 0.0;   ///< D = sigma^2 / 2
  double wavenumber = 0.0;  ///< n pi / K

  /// True for n == 0, where r = 0 and the solution is identically zero.
  bool degenerate() const noexcept { return n == 0; }
};

ModeSpec make_mode(std::int64_t n, double sigma, double strike);

/// r_n = (sigma^2 / (2 K^2)) n^2 pi^2. n == 0 returns 0.
double quantized_rate(std::int64_t n, double sigma, double strike);

struct RateSpectrum {
  double sigma = 0.0;
  double strike = 0.0;
  std::vector<ModeSpec> modes;  ///< n = 1 .. n_max
};

RateSpectrum rate_spectrum(std::int64_t n_max, double sigma, double strike);

struct ModeMatch {
  std::int64_t n;
  bool admissible;
};

/// Nearest mode index for a given rate, and whether that mode reproduces
/// the rate to `rel_tol`.
ModeMatch mode_index(double r, double sigma, double strike, double rel_tol);

/// |sin(sqrt(r_n / D) K)|; zero up to rounding for every mode.
double boundary_residual(std::int64_t n, double sigma, double strike);

enum class IntegralMethod { closed_form, quadrature };

struct NormalizationResult {
  double amplitude = 0.0;       ///< A = integral^{-1/2}
  double integral = 0.0;        ///< int_0^K sin^2(a x) dx
  IntegralMethod method = IntegralMethod::closed_form;
  double estimated_error = 0.0; ///< |closed form - quadrature|
  double closed_form = 0.0;
  double quadrature = 0.0;
};

/// int_0^K sin^2(a x) dx = K/2 - sin(2 a K) / (4 a).
double sine_square_integral(double wavenumber, double strike);

/// Adaptive Gauss-Kronrod evaluation of the same integral.
double sine_square_integral_quadrature(double wavenumber, double strike, double* error_estimate = nullptr);

/// Normalization amplitude for V = A sin(sqrt(r/D) x) on [0, K].
NormalizationResult normalization_constant(double r, double sigma, double strike);

/// Y(x, t) = A sin(a_n x) e^{+-r_n t} on a rectangular grid, row per x.
struct PayoffSurface {
  ModeSpec mode;
  double amplitude = 0.0;
  DiscountSign sign = DiscountSign::paper_literal_plus;
  std::vector<double> x;
  std::vector<double> t;
  std::vector<double> values;           ///< x.size() * t.size(), row-major by x
  std::vector<bool> outside_strike_box; ///< per x: not in [0, K]

  double at(std::size_t ix, std::size_t it) const { return values[ix * t.size() + it]; }
};

PayoffSurface payoff_surface(const ModeSpec& mode, double amplitude, std::span<const double> x_grid,
                             std::span<const double> t_grid,
                             DiscountSign sign = DiscountSign::paper_literal_plus);

std::string_view to_string(IntegralMethod method);

}  // namespace qrate
