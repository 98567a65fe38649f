#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "qrate/qrate.h"

namespace {

constexpr double kR1 = 0.19739208802178717;

qr_model_params risk_neutral(double x0, double r, double sigma) {
  qr_model_params p{};
  EXPECT_EQ(qr_params_risk_neutral(x0, r, sigma, &p), QR_OK);
  return p;
}

double square(double x, void*) { return x * x; }

double shifted(double x, void* user) { return x + *static_cast<double*>(user); }

}  // namespace

TEST(CApi, VersionAndErrorState) {
  EXPECT_STREQ(qr_version(), "1.0.0");
  qr_model_params p = risk_neutral(100.0, 0.05, -0.1);
  EXPECT_EQ(qr_validate_params(&p), QR_ERR_VALIDATION);
  EXPECT_STREQ(qr_last_error_field(), "sigma");
  EXPECT_NE(std::string(qr_last_error()).find("sigma"), std::string::npos);
  EXPECT_EQ(qr_validate_params(nullptr), QR_ERR_NULL);
}

TEST(CApi, ExactMarginal) {
  const auto p = risk_neutral(100.0, 0.05, 0.2);
  double mean = 0.0, var = 0.0;
  ASSERT_EQ(qr_exact_marginal(&p, 4.0, &mean, &var), QR_OK);
  EXPECT_NEAR(mean, 100.2, 1e-12);
  EXPECT_NEAR(var, 0.16, 1e-15);
  EXPECT_EQ(qr_exact_marginal(&p, -1.0, &mean, &var), QR_ERR_VALIDATION);
}

TEST(CApi, PathsLifecycleAndCsvBuffer) {
  const auto p = risk_neutral(0.0, 1.0, 0.0);
  const double times[] = {0.0, 0.5, 1.0};
  qr_paths* paths = nullptr;
  ASSERT_EQ(qr_paths_simulate(&p, times, 3, 2, 0, 1, &paths), QR_OK);
  EXPECT_EQ(qr_paths_count(paths), 2u);
  EXPECT_EQ(qr_paths_times(paths), 3u);
  double v = -1.0;
  ASSERT_EQ(qr_paths_value(paths, 1, 2, &v), QR_OK);
  EXPECT_EQ(v, 1.0);
  EXPECT_EQ(qr_paths_value(paths, 2, 0, &v), QR_ERR_RANGE);

  int hit = 0;
  double tau = 0.0;
  ASSERT_EQ(qr_paths_first_hitting_time(paths, 0, 0.5, &hit, &tau), QR_OK);
  EXPECT_EQ(hit, 1);
  EXPECT_EQ(tau, 0.5);
  ASSERT_EQ(qr_paths_first_hitting_time(paths, 0, 2.0, &hit, &tau), QR_OK);
  EXPECT_EQ(hit, 0);

  size_t needed = 0;
  EXPECT_EQ(qr_paths_to_csv(paths, 15, nullptr, 0, &needed), QR_ERR_BUFFER);
  std::string buf(needed, '\0');
  ASSERT_EQ(qr_paths_to_csv(paths, 15, buf.data(), buf.size(), &needed), QR_OK);
  EXPECT_STREQ(buf.c_str(), "t,path_0,path_1\n0,0,0\n0.5,0.5,0.5\n1,1,1\n");
  qr_paths_free(paths);
  qr_paths_free(nullptr);
}

TEST(CApi, SimulateRejectsZeroPathsAndBadGrid) {
  const auto p = risk_neutral(0.0, 0.0, 1.0);
  const double times[] = {0.0, 1.0};
  qr_paths* paths = nullptr;
  EXPECT_EQ(qr_paths_simulate(&p, times, 2, 0, 0, 1, &paths), QR_ERR_VALIDATION);
  EXPECT_STREQ(qr_last_error_field(), "n_paths");
  EXPECT_EQ(paths, nullptr);
  const double bad[] = {0.0, 1.0, 0.5};
  EXPECT_EQ(qr_paths_simulate(&p, bad, 3, 1, 0, 1, &paths), QR_ERR_VALIDATION);
}

TEST(CApi, Hitting) {
  const auto p = risk_neutral(0.0, 1.0, 1.0);
  double prob = 0.0;
  ASSERT_EQ(qr_hitting_probability(&p, 1.0, 1.0, &prob), QR_OK);
  EXPECT_NEAR(prob, 0.6681020012231706, 1e-14);
  qr_hitting_frequency f{};
  ASSERT_EQ(qr_hitting_frequency_mc(&p, 1.0, 1.0, 1e-2, 5000, 3, 0, &f), QR_OK);
  EXPECT_EQ(f.n_paths, 5000u);
  EXPECT_LE(std::abs(f.frequency - prob), 4.0 * f.standard_error + 0.05);
}

TEST(CApi, Payoffs) {
  double out = 0.0;
  ASSERT_EQ(qr_call_payoff(105.0, 100.0, &out), QR_OK);
  EXPECT_EQ(out, 5.0);
  ASSERT_EQ(qr_put_payoff(95.0, 100.0, &out), QR_OK);
  EXPECT_EQ(out, 5.0);
  EXPECT_EQ(qr_call_payoff(1.0, 0.0, &out), QR_ERR_VALIDATION);
  qr_moneyness m{};
  ASSERT_EQ(qr_moneyness_of(100.0, 100.0, 1e-9, &m), QR_OK);
  EXPECT_EQ(m, QR_AT_THE_MONEY);
  ASSERT_EQ(qr_discounted_value(5.0, 0.05, 1.0, QR_SIGN_STANDARD_MINUS, &out), QR_OK);
  EXPECT_NEAR(out, 4.756147122503570, 1e-14);
  EXPECT_EQ(qr_discounted_value(5.0, 0.05, 1.0, static_cast<qr_sign>(7), &out), QR_ERR_VALIDATION);
}

TEST(CApi, RootsAndSolutions) {
  qr_roots roots{};
  ASSERT_EQ(qr_characteristic_roots(QR_FORM_HEDGED, 0.02, 0.2, &roots), QR_OK);
  EXPECT_EQ(roots.kind, QR_ROOTS_COMPLEX_CONJUGATE);
  EXPECT_NEAR(roots.root1_im, 1.0, 1e-15);
  EXPECT_NEAR(roots.root2_im, -1.0, 1e-15);
  EXPECT_EQ(qr_characteristic_roots(QR_FORM_HEDGED, -0.1, 0.2, &roots), QR_ERR_VALIDATION);
  EXPECT_EQ(qr_characteristic_roots(QR_FORM_FULL, 0.1, 0.0, &roots), QR_ERR_VALIDATION);

  ASSERT_EQ(qr_characteristic_roots(QR_FORM_FULL, 0.02, 0.2, &roots), QR_OK);
  qr_solution* general = nullptr;
  ASSERT_EQ(qr_solution_general(&roots, 0.5, 0.0, 0.5, 0.0, &general), QR_OK);
  double value = 0.0;
  ASSERT_EQ(qr_solution_eval(general, 0.0, &value), QR_OK);
  EXPECT_DOUBLE_EQ(value, 1.0);
  double res = 1.0;
  ASSERT_EQ(qr_residual(general, QR_FORM_FULL, 0.02, 0.2, 0.5, 1e-3, &res), QR_OK);
  EXPECT_LT(std::abs(res), 1e-5);
  qr_solution_free(general);

  qr_solution* sine = nullptr;
  ASSERT_EQ(qr_solution_sine(1.0, kR1, 0.2, &sine), QR_OK);
  double delta = 0.0, gamma = 0.0;
  ASSERT_EQ(qr_delta_gamma(sine, 0.0, 1e-3, &delta, &gamma), QR_OK);
  EXPECT_NEAR(delta, std::numbers::pi, 1e-5);
  EXPECT_EQ(qr_delta_gamma(sine, 0.0, 1e-12, &delta, &gamma), QR_ERR_VALIDATION);
  EXPECT_STREQ(qr_last_error_field(), "h");
  qr_solution_free(sine);
}

TEST(CApi, CallbackSolution) {
  qr_solution* v = nullptr;
  ASSERT_EQ(qr_solution_callback(square, nullptr, &v), QR_OK);
  double delta = 0.0, gamma = 0.0;
  ASSERT_EQ(qr_delta_gamma(v, 3.0, 1e-2, &delta, &gamma), QR_OK);
  EXPECT_NEAR(delta, 6.0, 1e-12);
  EXPECT_NEAR(gamma, 2.0, 1e-9);
  qr_solution_free(v);

  double offset = 2.5;
  ASSERT_EQ(qr_solution_callback(shifted, &offset, &v), QR_OK);
  double value = 0.0;
  ASSERT_EQ(qr_solution_eval(v, 1.0, &value), QR_OK);
  EXPECT_EQ(value, 3.5);
  qr_solution_free(v);
  EXPECT_EQ(qr_solution_callback(nullptr, nullptr, &v), QR_ERR_NULL);
}

TEST(CApi, Spectrum) {
  double rate = 0.0;
  int degenerate = -1;
  ASSERT_EQ(qr_quantized_rate(1, 0.2, 1.0, &rate, &degenerate), QR_OK);
  EXPECT_NEAR(rate, kR1, 1e-15);
  EXPECT_EQ(degenerate, 0);
  ASSERT_EQ(qr_quantized_rate(0, 0.2, 1.0, &rate, &degenerate), QR_OK);
  EXPECT_EQ(rate, 0.0);
  EXPECT_EQ(degenerate, 1);

  int64_t n = 0;
  int admissible = 0;
  ASSERT_EQ(qr_mode_index(0.15, 0.2, 1.0, 1e-6, &n, &admissible), QR_OK);
  EXPECT_EQ(n, 1);
  EXPECT_EQ(admissible, 0);

  double residual = 1.0;
  ASSERT_EQ(qr_boundary_residual(3, 0.2, 1.0, &residual), QR_OK);
  EXPECT_LE(residual, 1e-9);

  qr_normalization norm{};
  ASSERT_EQ(qr_normalization_constant(0.1, 0.2, 1.0, &norm), QR_OK);
  EXPECT_NEAR(norm.amplitude, 1.2818488662270630, 1e-13);
  EXPECT_EQ(norm.method, 0);

  qr_mode mode{};
  ASSERT_EQ(qr_mode_make(1, 0.2, 1.0, &mode), QR_OK);
  const double xs[] = {0.0, 0.5, 1.5};
  const double ts[] = {0.0, 1.0};
  double values[6];
  int outside[3];
  ASSERT_EQ(qr_payoff_surface(&mode, std::sqrt(2.0), xs, 3, ts, 2, QR_SIGN_PAPER_LITERAL_PLUS, values, outside),
            QR_OK);
  EXPECT_EQ(values[0], 0.0);
  EXPECT_NEAR(values[3], 1.7228255046990568, 1e-14);
  EXPECT_EQ(outside[0], 0);
  EXPECT_EQ(outside[2], 1);
}

TEST(CApi, DriftAndClassification) {
  qr_solution* sine = nullptr;
  ASSERT_EQ(qr_solution_sine(1.0, kR1, 0.2, &sine), QR_OK);
  double analytic = 0.0;
  ASSERT_EQ(qr_analytic_drift(sine, kR1, 0.2, 0.0, 0.0, QR_SIGN_PAPER_LITERAL_PLUS, &analytic), QR_OK);
  EXPECT_NEAR(analytic, 0.6201255336059964, 1e-5);

  const auto p = risk_neutral(0.0, kR1, 0.2);
  qr_drift_report rep{};
  ASSERT_EQ(qr_drift_estimate(sine, &p, 0.0, 0.0, 1e-3, 100000, 2, QR_SIGN_PAPER_LITERAL_PLUS, 0, &rep), QR_OK);
  EXPECT_LE(std::abs(rep.estimated_drift - analytic), 3.0 * rep.standard_error + 1e-5);
  EXPECT_EQ(rep.sign, QR_SIGN_PAPER_LITERAL_PLUS);
  EXPECT_EQ(rep.n_samples, 100000u);
  qr_verdict verdict{};
  ASSERT_EQ(qr_classify(&rep, 3.0, &verdict), QR_OK);
  EXPECT_EQ(verdict, QR_VIOLATES_SUPERMARTINGALE);

  EXPECT_EQ(qr_drift_estimate(sine, &p, 0.0, 0.0, 0.5, 100000, 2, QR_SIGN_PAPER_LITERAL_PLUS, 0, &rep),
            QR_ERR_VALIDATION);
  EXPECT_STREQ(qr_last_error_field(), "dt");

  qr_integrability w{};
  ASSERT_EQ(qr_integrability_check(sine, &p, 1.0, 2000, 1, QR_SIGN_PAPER_LITERAL_PLUS, 0, &w), QR_OK);
  EXPECT_EQ(w.has_analytic_bound, 1);
  EXPECT_DOUBLE_EQ(w.analytic_bound, std::exp(kR1));
  qr_solution_free(sine);
}

TEST(CApi, NumericErrorCode) {
  qr_solution* v = nullptr;
  ASSERT_EQ(qr_solution_callback([](double, void*) { return std::nan(""); }, nullptr, &v), QR_OK);
  const auto p = risk_neutral(0.0, 0.0, 1.0);
  qr_integrability w{};
  EXPECT_EQ(qr_integrability_check(v, &p, 1.0, 2000, 1, QR_SIGN_STANDARD_MINUS, 1, &w), QR_ERR_NUMERIC);
  EXPECT_NE(std::string(qr_last_error()).find("sample 0"), std::string::npos);
  qr_solution_free(v);
}
