#include "qrate/qrate.h"

#include <algorithm>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "qrate/error.hpp"
#include "qrate/model.hpp"
#include "qrate/ode.hpp"
#include "qrate/payoff.hpp"
#include "qrate/spectrum.hpp"
#include "qrate/verify.hpp"
#include "qrate/version.hpp"

struct qr_paths {
  qrate::PathSet set;
};

struct qr_solution {
  qrate::Solution solution;
};

namespace {

thread_local std::string last_error;
thread_local std::string last_field;

struct NullArgument {
  const char* name;
};

struct OutOfRange {
  std::string what;
};

struct BufferTooSmall {};

qr_status fail(qr_status status, std::string message, std::string field = {}) {
  last_error = std::move(message);
  last_field = std::move(field);
  return status;
}

template <typename F>
qr_status guarded(F&& body) {
  try {
    body();
    return QR_OK;
  } catch (const NullArgument& e) {
    return fail(QR_ERR_NULL, std::string(e.name) + ": must not be NULL", e.name);
  } catch (const OutOfRange& e) {
    return fail(QR_ERR_RANGE, e.what);
  } catch (const BufferTooSmall&) {
    return fail(QR_ERR_BUFFER, "buffer too small");
  } catch (const qrate::ValidationError& e) {
    return fail(QR_ERR_VALIDATION, e.what(), e.field());
  } catch (const qrate::NumericError& e) {
    return fail(QR_ERR_NUMERIC, e.what());
  } catch (const std::bad_alloc&) {
    return fail(QR_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(QR_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(QR_ERR_INTERNAL, "unknown error");
  }
}

template <typename T>
T& deref(T* ptr, const char* name) {
  if (!ptr) throw NullArgument{name};
  return *ptr;
}

qrate::ModelParams to_params(const qr_model_params* p) {
  const auto& in = deref(p, "params");
  return qrate::ModelParams{in.x0, in.drift, in.r, in.sigma, in.no_arbitrage != 0};
}

qrate::DiscountSign to_sign(qr_sign sign) {
  switch (sign) {
    case QR_SIGN_PAPER_LITERAL_PLUS: return qrate::DiscountSign::paper_literal_plus;
    case QR_SIGN_STANDARD_MINUS: return qrate::DiscountSign::standard_minus;
  }
  throw qrate::ValidationError("sign", "unknown discount sign");
}

qrate::OdeForm to_form(qr_form form) {
  switch (form) {
    case QR_FORM_FULL: return qrate::OdeForm::full;
    case QR_FORM_HEDGED: return qrate::OdeForm::hedged;
  }
  throw qrate::ValidationError("form", "unknown ODE form");
}

qr_roots from_roots(const qrate::CharacteristicRoots& r) {
  qr_roots out{};
  out.kind = static_cast<qr_root_case>(static_cast<int>(r.kind));
  out.root1_re = r.root1.real();
  out.root1_im = r.root1.imag();
  out.root2_re = r.root2.real();
  out.root2_im = r.root2.imag();
  return out;
}

qrate::CharacteristicRoots to_roots(const qr_roots& r) {
  if (r.kind < QR_ROOTS_COMPLEX_CONJUGATE || r.kind > QR_ROOTS_REPEATED_REAL) {
    throw qrate::ValidationError("roots", "unknown root case");
  }
  return {static_cast<qrate::RootCase>(r.kind), {r.root1_re, r.root1_im}, {r.root2_re, r.root2_im}};
}

qr_mode from_mode(const qrate::ModeSpec& m) {
  return {m.n, m.sigma, m.strike, m.rate, m.diffusion, m.wavenumber, m.degenerate() ? 1 : 0};
}

qrate::ModeSpec to_mode(const qr_mode& m) {
  qrate::ModeSpec out;
  out.n = m.n;
  out.sigma = m.sigma;
  out.strike = m.strike;
  out.rate = m.rate;
  out.diffusion = m.diffusion;
  out.wavenumber = m.wavenumber;
  return out;
}

}  // namespace

extern "C" {

const char* qr_version(void) { return qrate::kVersion; }
const char* qr_last_error(void) { return last_error.c_str(); }
const char* qr_last_error_field(void) { return last_field.c_str(); }

/* model */

qr_status qr_params_risk_neutral(double x0, double r, double sigma, qr_model_params* out) {
  return guarded([&] { deref(out, "out") = qr_model_params{x0, r, r, sigma, 1}; });
}

qr_status qr_validate_params(const qr_model_params* p) {
  return guarded([&] { qrate::validate_params(to_params(p)); });
}

qr_status qr_exact_marginal(const qr_model_params* p, double t, double* mean, double* variance) {
  return guarded([&] {
    const auto law = qrate::exact_marginal(to_params(p), t);
    deref(mean, "mean") = law.mean;
    deref(variance, "variance") = law.variance;
  });
}

qr_status qr_paths_simulate(const qr_model_params* p, const double* times, size_t n_times, size_t n_paths,
                            uint64_t seed, unsigned workers, qr_paths** out) {
  return guarded([&] {
    auto& slot = deref(out, "out");
    if (!times) throw NullArgument{"times"};
    qrate::TimeGrid grid(std::vector<double>(times, times + n_times));
    slot = new qr_paths{qrate::simulate_paths(to_params(p), grid, n_paths, seed, workers)};
  });
}

qr_status qr_paths_simulate_uniform(const qr_model_params* p, double horizon, double step, size_t n_paths,
                                    uint64_t seed, unsigned workers, qr_paths** out) {
  return guarded([&] {
    auto& slot = deref(out, "out");
    slot = new qr_paths{
        qrate::simulate_paths(to_params(p), qrate::TimeGrid::uniform(horizon, step), n_paths, seed, workers)};
  });
}

void qr_paths_free(qr_paths* paths) { delete paths; }

size_t qr_paths_count(const qr_paths* paths) { return paths ? paths->set.n_paths() : 0; }

size_t qr_paths_times(const qr_paths* paths) { return paths ? paths->set.n_times() : 0; }

qr_status qr_paths_time(const qr_paths* paths, size_t step, double* t) {
  return guarded([&] {
    const auto& set = deref(paths, "paths").set;
    if (step >= set.n_times()) throw OutOfRange{"step index out of range"};
    deref(t, "t") = set.grid()[step];
  });
}

qr_status qr_paths_value(const qr_paths* paths, size_t path, size_t step, double* value) {
  return guarded([&] {
    const auto& set = deref(paths, "paths").set;
    if (path >= set.n_paths()) throw OutOfRange{"path index out of range"};
    if (step >= set.n_times()) throw OutOfRange{"step index out of range"};
    deref(value, "value") = set.value(path, step);
  });
}

qr_status qr_paths_first_hitting_time(const qr_paths* paths, size_t path, double level, int* hit,
                                      double* tau) {
  return guarded([&] {
    const auto& set = deref(paths, "paths").set;
    if (path >= set.n_paths()) throw OutOfRange{"path index out of range"};
    const auto result = qrate::first_hitting_time(set.path(path), set.grid(), level);
    deref(hit, "hit") = result ? 1 : 0;
    deref(tau, "tau") = result.value_or(0.0);
  });
}

qr_status qr_paths_to_csv(const qr_paths* paths, int precision, char* buf, size_t capacity,
                          size_t* needed) {
  return guarded([&] {
    const auto& set = deref(paths, "paths").set;
    if (precision < 1 || precision > 17) throw qrate::ValidationError("precision", "must be in [1, 17]");
    std::ostringstream os;
    qrate::write_csv(os, set, precision);
    const std::string text = os.str();
    deref(needed, "needed") = text.size() + 1;
    if (!buf || capacity < text.size() + 1) {
      throw BufferTooSmall{};
    }
    std::memcpy(buf, text.c_str(), text.size() + 1);
  });
}

qr_status qr_hitting_probability(const qr_model_params* p, double level, double t, double* prob) {
  return guarded([&] { deref(prob, "prob") = qrate::hitting_probability(to_params(p), level, t); });
}

qr_status qr_hitting_frequency_mc(const qr_model_params* p, double level, double horizon, double step,
                                  size_t n_paths, uint64_t seed, unsigned workers, qr_hitting_frequency* out) {
  return guarded([&] {
    auto& slot = deref(out, "out");
    const auto f = qrate::hitting_frequency(to_params(p), level, qrate::TimeGrid::uniform(horizon, step),
                                            n_paths, seed, workers);
    slot = {f.n_paths, f.hits, f.frequency, f.standard_error};
  });
}

/* payoff */

qr_status qr_call_payoff(double x, double strike, double* out) {
  return guarded([&] { deref(out, "out") = qrate::call_payoff(x, strike); });
}

qr_status qr_put_payoff(double x, double strike, double* out) {
  return guarded([&] { deref(out, "out") = qrate::put_payoff(x, strike); });
}

qr_status qr_moneyness_of(double x, double strike, double tol, qr_moneyness* out) {
  return guarded([&] {
    deref(out, "out") = static_cast<qr_moneyness>(static_cast<int>(qrate::moneyness(x, strike, tol).state));
  });
}

qr_status qr_discounted_value(double v, double r, double t, qr_sign sign, double* out) {
  return guarded([&] { deref(out, "out") = qrate::discounted_value(v, r, t, to_sign(sign)); });
}

/* ode */

qr_status qr_characteristic_roots(qr_form form, double r, double sigma, qr_roots* out) {
  return guarded([&] {
    auto& slot = deref(out, "out");
    slot = from_roots(to_form(form) == qrate::OdeForm::full ? qrate::characteristic_roots_full(r, sigma)
                                                            : qrate::characteristic_roots_hedged(r, sigma));
  });
}

qr_status qr_solution_sine(double amplitude, double r, double sigma, qr_solution** out) {
  return guarded([&] {
    auto& slot = deref(out, "out");
    slot = new qr_solution{qrate::sine_solution(amplitude, r, sigma)};
  });
}

qr_status qr_solution_general(const qr_roots* roots, double a_re, double a_im, double b_re, double b_im,
                              qr_solution** out) {
  return guarded([&] {
    auto& slot = deref(out, "out");
    slot = new qr_solution{
        qrate::general_solution(to_roots(deref(roots, "roots")), {a_re, a_im}, {b_re, b_im})};
  });
}

qr_status qr_solution_callback(double (*fn)(double x, void* user), void* user, qr_solution** out) {
  return guarded([&] {
    auto& slot = deref(out, "out");
    if (!fn) throw NullArgument{"fn"};
    slot = new qr_solution{qrate::Solution(qrate::Solution::Function([fn, user](double x) { return fn(x, user); }))};
  });
}

void qr_solution_free(qr_solution* v) { delete v; }

qr_status qr_solution_eval(const qr_solution* v, double x, double* out) {
  return guarded([&] { deref(out, "out") = deref(v, "solution").solution(x); });
}

qr_status qr_delta_gamma(const qr_solution* v, double x, double h, double* delta, double* gamma) {
  return guarded([&] {
    const auto dg = qrate::delta_gamma(deref(v, "solution").solution, x, h);
    deref(delta, "delta") = dg.delta;
    deref(gamma, "gamma") = dg.gamma;
  });
}

qr_status qr_residual(const qr_solution* v, qr_form form, double r, double sigma, double x, double h,
                      double* out) {
  return guarded([&] {
    const qrate::OdeProblem problem(r, sigma, to_form(form));
    deref(out, "out") = qrate::residual(deref(v, "solution").solution, problem, x, h);
  });
}

/* spectrum */

qr_status qr_quantized_rate(int64_t n, double sigma, double strike, double* rate, int* degenerate) {
  return guarded([&] {
    deref(rate, "rate") = qrate::quantized_rate(n, sigma, strike);
    if (degenerate) *degenerate = n == 0 ? 1 : 0;
  });
}

qr_status qr_mode_make(int64_t n, double sigma, double strike, qr_mode* out) {
  return guarded([&] { deref(out, "out") = from_mode(qrate::make_mode(n, sigma, strike)); });
}

qr_status qr_mode_index(double r, double sigma, double strike, double rel_tol, int64_t* n, int* admissible) {
  return guarded([&] {
    const auto m = qrate::mode_index(r, sigma, strike, rel_tol);
    deref(n, "n") = m.n;
    deref(admissible, "admissible") = m.admissible ? 1 : 0;
  });
}

qr_status qr_boundary_residual(int64_t n, double sigma, double strike, double* out) {
  return guarded([&] { deref(out, "out") = qrate::boundary_residual(n, sigma, strike); });
}

qr_status qr_normalization_constant(double r, double sigma, double strike, qr_normalization* out) {
  return guarded([&] {
    auto& slot = deref(out, "out");
    const auto n = qrate::normalization_constant(r, sigma, strike);
    slot = {n.amplitude, n.integral, static_cast<int>(n.method), n.estimated_error, n.closed_form, n.quadrature};
  });
}

qr_status qr_payoff_surface(const qr_mode* mode, double amplitude, const double* x, size_t n_x, const double* t,
                            size_t n_t, qr_sign sign, double* values, int* outside) {
  return guarded([&] {
    const auto& m = deref(mode, "mode");
    if (!x) throw NullArgument{"x"};
    if (!t) throw NullArgument{"t"};
    if (!values) throw NullArgument{"values"};
    const auto s = qrate::payoff_surface(to_mode(m), amplitude, {x, n_x}, {t, n_t}, to_sign(sign));
    std::copy(s.values.begin(), s.values.end(), values);
    if (outside) {
      for (size_t i = 0; i < n_x; ++i) outside[i] = s.outside_strike_box[i] ? 1 : 0;
    }
  });
}

/* verify */

qr_status qr_analytic_drift(const qr_solution* v, double r, double sigma, double x, double t, qr_sign sign,
                            double* out) {
  return guarded([&] {
    deref(out, "out") = qrate::analytic_drift(deref(v, "solution").solution, r, sigma, x, t, to_sign(sign));
  });
}

qr_status qr_drift_estimate(const qr_solution* v, const qr_model_params* p, double x0, double t, double dt,
                            size_t n_samples, uint64_t seed, qr_sign sign, unsigned workers,
                            qr_drift_report* out) {
  return guarded([&] {
    auto& slot = deref(out, "out");
    const auto r = qrate::drift_estimate(deref(v, "solution").solution, to_params(p), x0, t, dt, n_samples,
                                         seed, to_sign(sign), workers);
    slot = {r.x0,      r.t,         r.dt,       r.n_samples, r.estimated_drift, r.standard_error,
            r.analytic_drift, r.z_score, sign, r.seed, r.r, r.sigma};
  });
}

qr_status qr_classify(const qr_drift_report* report, double z_threshold, qr_verdict* out) {
  return guarded([&] {
    const auto& in = deref(report, "report");
    qrate::DriftReport r;
    r.estimated_drift = in.estimated_drift;
    r.standard_error = in.standard_error;
    deref(out, "out") = static_cast<qr_verdict>(static_cast<int>(qrate::classify(r, z_threshold).classification));
  });
}

qr_status qr_integrability_check(const qr_solution* v, const qr_model_params* p, double t, size_t n_samples,
                                 uint64_t seed, qr_sign sign, unsigned workers, qr_integrability* out) {
  return guarded([&] {
    auto& slot = deref(out, "out");
    const auto w = qrate::integrability_check(deref(v, "solution").solution, to_params(p), t, n_samples, seed,
                                              to_sign(sign), workers);
    slot = {w.n_samples, w.mean_abs, w.mean, w.standard_error, w.analytic_bound ? 1 : 0,
            w.analytic_bound.value_or(0.0)};
  });
}

}  // extern "C"
