#pragma once

#include <complex>
#include <functional>
#include <string_view>
#include <variant>

namespace qrate {

/// full:   r V + r V' + (sigma^2/2) V'' = 0
/// hedged: r V + D V'' = 0 with D = sigma^2/2 (the r V' term removed)
enum class OdeForm { full, hedged };

struct OdeProblem {
  double r = 0.0;
  double sigma = 0.0;
  OdeForm form = OdeForm::hedged;

  OdeProblem(double r, double sigma, OdeForm form);

  /// Diffusion constant sigma^2 / 2.
  double diffusion() const noexcept { return 0.5 * sigma * sigma; }
};

enum class RootCase { complex_conjugate, distinct_real, repeated_real };

/// Roots of the characteristic polynomial. For complex pairs root1 has
/// the positive imaginary part; for distinct real roots root1 > root2.
struct CharacteristicRoots {
  RootCase kind = RootCase::repeated_real;
  std::complex<double> root1;
  std::complex<double> root2;
};

/// (sigma^2/2) l^2 + r l + r = 0. Repeated roots are reported when
/// r == 0 or r agrees with 2 sigma^2 to a few ulps.
CharacteristicRoots characteristic_roots_full(double r, double sigma);

/// r + D l^2 = 0, i.e. l = +-i sqrt(r/D). Requires r >= 0.
CharacteristicRoots characteristic_roots_hedged(double r, double sigma);

/// Value of the characteristic polynomial of `form` at `lambda`.
std::complex<double> characteristic_polynomial(OdeForm form, double r, double sigma,
                                               std::complex<double> lambda);

/// A real-valued candidate solution V(x) of either ODE form.
class Solution {
 public:
  struct Sine {
    double amplitude;
    double wavenumber;
  };
  struct Exponential {
    CharacteristicRoots roots;
    std::complex<double> a;
    std::complex<double> b;
  };
  using Function = std::function<double(double)>;

  explicit Solution(Sine s) : repr_(s) {}
  explicit Solution(Exponential e) : repr_(std::move(e)) {}
  explicit Solution(Function f) : repr_(std::move(f)) {}

  double operator()(double x) const;

  /// Complex value before taking the real part; equals the real value
  /// for sine and function evaluators.
  std::complex<double> complex_value(double x) const;

  const Sine* as_sine() const noexcept { return std::get_if<Sine>(&repr_); }
  const Exponential* as_exponential() const noexcept { return std::get_if<Exponential>(&repr_); }

 private:
  std::variant<Sine, Exponential, Function> repr_;
};

/// V(x) = A sin(sqrt(r/D) x), the branch vanishing at x = 0.
Solution sine_solution(double amplitude, double r, double sigma);

/// V(x) = A e^{root1 x} + B e^{root2 x}, or (A + B x) e^{root x} for a
/// repeated root. Evaluates to the real part.
Solution general_solution(const CharacteristicRoots& roots, std::complex<double> a,
                          std::complex<double> b);

struct DeltaGamma {
  double delta;
  double gamma;
  double h;
};

/// Central differences with O(h^2) truncation error.
/// Rejects h < 1e-8 * max(1, |x|).
DeltaGamma delta_gamma(const Solution& v, double x, double h);

/// r V + r Delta + D Gamma (full) or r V + D Gamma (hedged) at x.
double residual(const Solution& v, const OdeProblem& problem, double x, double h);

std::string_view to_string(RootCase kind);
std::string_view to_string(OdeForm form);

}  // namespace qrate
