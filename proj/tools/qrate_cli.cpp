// qrate command-line front end. Talks to the library only through the C
// API in qrate/qrate.h.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "qrate/qrate.h"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;

struct ApiFailure {
  qr_status status;
  std::string message;
};

void check(qr_status status) {
  if (status != QR_OK) throw ApiFailure{status, qr_last_error()};
}

struct PathsDeleter {
  void operator()(qr_paths* p) const { qr_paths_free(p); }
};
struct SolutionDeleter {
  void operator()(qr_solution* v) const { qr_solution_free(v); }
};
using PathsHandle = std::unique_ptr<qr_paths, PathsDeleter>;
using SolutionHandle = std::unique_ptr<qr_solution, SolutionDeleter>;

struct Common {
  std::uint64_t seed = 0;
  std::string format = "csv";
  std::string out;
  int precision = 15;
  unsigned workers = 0;
};

std::string fmt(double v, int precision) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

const char* sign_name(qr_sign s) {
  return s == QR_SIGN_PAPER_LITERAL_PLUS ? "paper_literal_plus" : "standard_minus";
}

qr_sign parse_sign(const std::string& s) {
  if (s == "plus" || s == "paper_literal_plus") return QR_SIGN_PAPER_LITERAL_PLUS;
  return QR_SIGN_STANDARD_MINUS;
}

const char* root_case_name(qr_root_case k) {
  switch (k) {
    case QR_ROOTS_COMPLEX_CONJUGATE: return "complex_conjugate";
    case QR_ROOTS_DISTINCT_REAL: return "distinct_real";
    case QR_ROOTS_REPEATED_REAL: return "repeated_real";
  }
  return "unknown";
}

const char* verdict_name(qr_verdict v) {
  switch (v) {
    case QR_CONSISTENT_WITH_MARTINGALE: return "consistent_with_martingale";
    case QR_SUPERMARTINGALE_STRICT: return "supermartingale_strict";
    case QR_VIOLATES_SUPERMARTINGALE: return "violates_supermartingale";
  }
  return "unknown";
}

/// Provenance block shared by every artifact: tool, subcommand, and every
/// input binding needed to regenerate the output.
json provenance(const std::string& subcommand, const Common& c, json inputs) {
  json p;
  p["tool"] = "qrate";
  p["version"] = qr_version();
  p["subcommand"] = subcommand;
  p["seed"] = c.seed;
  for (auto& [k, v] : inputs.items()) p[k] = v;
  return p;
}

std::string csv_provenance(const json& prov) {
  std::string out;
  for (auto& [k, v] : prov.items()) {
    out += "# " + k + "=" + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
  }
  return out;
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty() || c.out == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream file(c.out, std::ios::binary | std::ios::trunc);
  if (!file) throw ApiFailure{QR_ERR_VALIDATION, "out: cannot open '" + c.out + "' for writing"};
  file << text;
}

std::string render_json(const json& j) { return j.dump(2) + "\n"; }

/// Single-record output: CSV is a header row plus one value row.
std::string render_record(const Common& c, const json& prov, const json& record) {
  if (c.format == "json") {
    json doc;
    doc["provenance"] = prov;
    for (auto& [k, v] : record.items()) doc[k] = v;
    return render_json(doc);
  }
  std::string header, row;
  for (auto& [k, v] : record.items()) {
    if (!header.empty()) {
      header += ',';
      row += ',';
    }
    header += k;
    if (v.is_number_float()) {
      row += fmt(v.get<double>(), c.precision);
    } else if (v.is_string()) {
      row += v.get<std::string>();
    } else if (v.is_null()) {
      row += "nan";
    } else {
      row += v.dump();
    }
  }
  return csv_provenance(prov) + header + "\n" + row + "\n";
}

qr_model_params model_params(double x0, double r, double sigma, const double* drift) {
  qr_model_params p{};
  check(qr_params_risk_neutral(x0, r, sigma, &p));
  if (drift) {
    p.drift = *drift;
    p.no_arbitrage = *drift == r ? 1 : 0;
  }
  return p;
}

// ---- subcommands -------------------------------------------------------

struct SimulateArgs {
  double x0 = 0.0, rate = 0.0, sigma = 0.0, horizon = 1.0, step = 0.01;
  std::optional<double> drift;
  std::size_t paths = 1;
};

std::string run_simulate(const Common& c, const SimulateArgs& a) {
  const double* drift = a.drift ? &*a.drift : nullptr;
  const auto params = model_params(a.x0, a.rate, a.sigma, drift);
  qr_paths* raw = nullptr;
  check(qr_paths_simulate_uniform(&params, a.horizon, a.step, a.paths, c.seed, c.workers, &raw));
  PathsHandle paths(raw);

  json inputs{{"x0", a.x0},         {"r", a.rate},      {"drift", params.drift}, {"sigma", a.sigma},
              {"horizon", a.horizon}, {"step", a.step}, {"n_paths", a.paths}};
  const json prov = provenance("simulate", c, inputs);
  if (c.format == "json") {
    const std::size_t n_times = qr_paths_times(paths.get());
    json t = json::array();
    for (std::size_t i = 0; i < n_times; ++i) {
      double v = 0.0;
      check(qr_paths_time(paths.get(), i, &v));
      t.push_back(v);
    }
    json rows = json::array();
    for (std::size_t p = 0; p < a.paths; ++p) {
      json row = json::array();
      for (std::size_t i = 0; i < n_times; ++i) {
        double v = 0.0;
        check(qr_paths_value(paths.get(), p, i, &v));
        row.push_back(v);
      }
      rows.push_back(std::move(row));
    }
    return render_json(json{{"provenance", prov}, {"t", t}, {"values", rows}});
  }
  std::size_t needed = 0;
  qr_paths_to_csv(paths.get(), c.precision, nullptr, 0, &needed);
  std::string buf(needed, '\0');
  check(qr_paths_to_csv(paths.get(), c.precision, buf.data(), buf.size(), &needed));
  buf.resize(needed - 1);
  return csv_provenance(prov) + buf;
}

struct HitArgs {
  double x0 = 0.0, rate = 0.0, sigma = 1.0, strike = 1.0, horizon = 1.0, step = 1e-3;
  std::size_t paths = 100000;
};

std::string run_hit(const Common& c, const HitArgs& a) {
  const auto params = model_params(a.x0, a.rate, a.sigma, nullptr);
  double prob = 0.0;
  check(qr_hitting_probability(&params, a.strike, a.horizon, &prob));
  qr_hitting_frequency freq{};
  check(qr_hitting_frequency_mc(&params, a.strike, a.horizon, a.step, a.paths, c.seed, c.workers, &freq));
  const json prov = provenance("hit", c,
                               {{"x0", a.x0}, {"r", a.rate}, {"sigma", a.sigma}, {"K", a.strike},
                                {"t", a.horizon}, {"step", a.step}, {"n_paths", a.paths}});
  json record{{"closed_form", prob},
              {"frequency", freq.frequency},
              {"standard_error", freq.standard_error},
              {"hits", freq.hits},
              {"n_paths", freq.n_paths},
              {"difference", freq.frequency - prob}};
  return render_record(c, prov, record);
}

struct SpectrumArgs {
  double sigma = 0.2, strike = 1.0;
  std::int64_t n_max = 10;
};

std::string run_spectrum(const Common& c, const SpectrumArgs& a) {
  if (a.n_max < 1) throw ApiFailure{QR_ERR_VALIDATION, "n_max: must be at least 1"};
  const json prov = provenance("spectrum", c, {{"sigma", a.sigma}, {"K", a.strike}, {"n_max", a.n_max}});
  json modes = json::array();
  std::string csv = csv_provenance(prov) + "n,r_n,wavenumber,A\n";
  for (std::int64_t n = 1; n <= a.n_max; ++n) {
    qr_mode mode{};
    check(qr_mode_make(n, a.sigma, a.strike, &mode));
    qr_normalization norm{};
    check(qr_normalization_constant(mode.rate, a.sigma, a.strike, &norm));
    modes.push_back({{"n", n}, {"r_n", mode.rate}, {"wavenumber", mode.wavenumber}, {"A", norm.amplitude}});
    csv += std::to_string(n) + "," + fmt(mode.rate, c.precision) + "," + fmt(mode.wavenumber, c.precision) +
           "," + fmt(norm.amplitude, c.precision) + "\n";
  }
  if (c.format == "json") return render_json(json{{"provenance", prov}, {"modes", modes}});
  return csv;
}

struct SolveArgs {
  double rate = 0.0, sigma = 0.2;
  bool hedged = false;
};

std::string run_solve(const Common& c, const SolveArgs& a) {
  qr_roots roots{};
  check(qr_characteristic_roots(a.hedged ? QR_FORM_HEDGED : QR_FORM_FULL, a.rate, a.sigma, &roots));
  const json prov = provenance("solve", c,
                               {{"form", a.hedged ? "hedged" : "full"}, {"r", a.rate}, {"sigma", a.sigma}});
  json record{{"case", root_case_name(roots.kind)}, {"root1_re", roots.root1_re}, {"root1_im", roots.root1_im},
              {"root2_re", roots.root2_re},          {"root2_im", roots.root2_im}};
  return render_record(c, prov, record);
}

struct NormalizeArgs {
  std::optional<double> rate;
  std::optional<std::int64_t> mode;
  double sigma = 0.2, strike = 1.0;
};

std::string run_normalize(const Common& c, const NormalizeArgs& a) {
  if (a.rate.has_value() == a.mode.has_value()) {
    throw ApiFailure{QR_ERR_VALIDATION, "r: give exactly one of --rate or --mode"};
  }
  double r = 0.0;
  if (a.mode) {
    check(qr_quantized_rate(*a.mode, a.sigma, a.strike, &r, nullptr));
  } else {
    r = *a.rate;
  }
  qr_normalization norm{};
  check(qr_normalization_constant(r, a.sigma, a.strike, &norm));
  json inputs{{"r", r}, {"sigma", a.sigma}, {"K", a.strike}};
  if (a.mode) inputs["n"] = *a.mode;
  const json prov = provenance("normalize", c, inputs);
  json record{{"A", norm.amplitude},
              {"integral", norm.integral},
              {"method", norm.method == 0 ? "closed_form" : "quadrature"},
              {"estimated_error", norm.estimated_error},
              {"closed_form", norm.closed_form},
              {"quadrature", norm.quadrature}};
  return render_record(c, prov, record);
}

struct SurfaceArgs {
  double sigma = 0.2, strike = 1.0, t_max = 1.0;
  std::int64_t mode = 1;
  std::optional<double> amplitude;
  std::optional<double> x_min, x_max;
  std::size_t x_points = 11, t_points = 5;
  std::string sign = "plus";
};

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  if (n == 1) {
    v[0] = lo;
    return v;
  }
  for (std::size_t i = 0; i < n; ++i) v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  v.back() = hi;
  return v;
}

std::string run_surface(const Common& c, const SurfaceArgs& a) {
  if (a.x_points == 0) throw ApiFailure{QR_ERR_VALIDATION, "x_points: must be at least 1"};
  if (a.t_points == 0) throw ApiFailure{QR_ERR_VALIDATION, "t_points: must be at least 1"};
  qr_mode mode{};
  check(qr_mode_make(a.mode, a.sigma, a.strike, &mode));
  double amplitude = 0.0;
  if (a.amplitude) {
    amplitude = *a.amplitude;
  } else {
    if (mode.degenerate) throw ApiFailure{QR_ERR_VALIDATION, "n: mode 0 is degenerate and cannot be normalized"};
    qr_normalization norm{};
    check(qr_normalization_constant(mode.rate, a.sigma, a.strike, &norm));
    amplitude = norm.amplitude;
  }
  const qr_sign sign = parse_sign(a.sign);
  const auto xs = linspace(a.x_min.value_or(0.0), a.x_max.value_or(a.strike), a.x_points);
  const auto ts = linspace(0.0, a.t_max, a.t_points);
  std::vector<double> values(xs.size() * ts.size());
  std::vector<int> outside(xs.size());
  check(qr_payoff_surface(&mode, amplitude, xs.data(), xs.size(), ts.data(), ts.size(), sign, values.data(),
                          outside.data()));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (outside[i]) std::cerr << "warning: x = " << xs[i] << " lies outside [0, K]; normalization does not apply\n";
  }

  json inputs{{"sigma", a.sigma}, {"K", a.strike},       {"n", a.mode},
              {"r_n", mode.rate}, {"A", amplitude},       {"sign", sign_name(sign)},
              {"x_min", xs.front()}, {"x_max", xs.back()}, {"x_points", a.x_points},
              {"t_max", a.t_max}, {"t_points", a.t_points}};
  const json prov = provenance("surface", c, inputs);
  if (c.format == "json") {
    json y = json::array();
    for (std::size_t i = 0; i < xs.size(); ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < ts.size(); ++j) row.push_back(values[i * ts.size() + j]);
      y.push_back(std::move(row));
    }
    json flags = json::array();
    for (int f : outside) flags.push_back(f != 0);
    return render_json(json{{"provenance", prov}, {"x", xs}, {"t", ts}, {"Y", y}, {"outside_strike_box", flags}});
  }
  std::string csv = csv_provenance(prov) + "x";
  for (double t : ts) csv += ",t=" + fmt(t, c.precision);
  csv += "\n";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    csv += fmt(xs[i], c.precision);
    for (std::size_t j = 0; j < ts.size(); ++j) csv += "," + fmt(values[i * ts.size() + j], c.precision);
    csv += "\n";
  }
  return csv;
}

struct DriftArgs {
  std::string solution = "full";
  double rate = 0.02, sigma = 0.2, strike = 1.0;
  std::optional<std::int64_t> mode;
  double amplitude = 1.0;
  double a_re = 0.5, a_im = 0.0, b_re = 0.5, b_im = 0.0;
  std::vector<double> x0{0.5};
  std::vector<double> times{0.0};
  double dt = 1e-3;
  std::size_t samples = 100000;
  double z = 3.0;
  std::string sign = "plus";
};

std::string run_drift(const Common& c, const DriftArgs& a) {
  double r = a.rate;
  if (a.mode) check(qr_quantized_rate(*a.mode, a.sigma, a.strike, &r, nullptr));
  qr_solution* raw = nullptr;
  json inputs{{"solution", a.solution}, {"r", r}, {"sigma", a.sigma}};
  if (a.solution == "sine") {
    check(qr_solution_sine(a.amplitude, r, a.sigma, &raw));
    inputs["A"] = a.amplitude;
    if (a.mode) {
      inputs["n"] = *a.mode;
      inputs["K"] = a.strike;
    }
  } else if (a.solution == "full") {
    qr_roots roots{};
    check(qr_characteristic_roots(QR_FORM_FULL, r, a.sigma, &roots));
    check(qr_solution_general(&roots, a.a_re, a.a_im, a.b_re, a.b_im, &raw));
    inputs["A_re"] = a.a_re;
    inputs["A_im"] = a.a_im;
    inputs["B_re"] = a.b_re;
    inputs["B_im"] = a.b_im;
  } else {
    throw ApiFailure{QR_ERR_VALIDATION, "solution: expected 'sine' or 'full'"};
  }
  SolutionHandle v(raw);
  const qr_sign sign = parse_sign(a.sign);
  const auto params = model_params(0.0, r, a.sigma, nullptr);
  inputs["sign"] = sign_name(sign);
  inputs["dt"] = a.dt;
  inputs["n_samples"] = a.samples;
  inputs["z_threshold"] = a.z;
  inputs["x0"] = a.x0;
  inputs["t"] = a.times;
  const json prov = provenance("drift-check", c, inputs);

  const char* columns[] = {"x0", "t", "dt", "n_samples", "estimated_drift", "standard_error",
                           "analytic_drift", "z_score", "sign", "seed", "classification"};
  json reports = json::array();
  std::string csv = csv_provenance(prov);
  for (std::size_t i = 0; i < std::size(columns); ++i) csv += (i ? "," : "") + std::string(columns[i]);
  csv += "\n";
  // Probe i draws from seed + i so batch probes are independent.
  std::uint64_t probe = 0;
  for (double t : a.times) {
    for (double x0 : a.x0) {
      qr_drift_report rep{};
      check(qr_drift_estimate(v.get(), &params, x0, t, a.dt, a.samples, c.seed + probe++, sign, c.workers, &rep));
      qr_verdict verdict{};
      check(qr_classify(&rep, a.z, &verdict));
      reports.push_back({{"x0", rep.x0},
                         {"t", rep.t},
                         {"dt", rep.dt},
                         {"n_samples", rep.n_samples},
                         {"estimated_drift", number(rep.estimated_drift)},
                         {"standard_error", number(rep.standard_error)},
                         {"analytic_drift", number(rep.analytic_drift)},
                         {"z_score", number(rep.z_score)},
                         {"sign", sign_name(rep.sign)},
                         {"seed", rep.seed},
                         {"classification", verdict_name(verdict)},
                         {"z_threshold", a.z}});
      csv += fmt(rep.x0, c.precision) + "," + fmt(rep.t, c.precision) + "," + fmt(rep.dt, c.precision) + "," +
             std::to_string(rep.n_samples) + "," + fmt(rep.estimated_drift, c.precision) + "," +
             fmt(rep.standard_error, c.precision) + "," + fmt(rep.analytic_drift, c.precision) + "," +
             fmt(rep.z_score, c.precision) + "," + sign_name(rep.sign) + "," + std::to_string(rep.seed) + "," +
             verdict_name(verdict) + "\n";
    }
  }
  if (c.format == "json") {
    json doc{{"provenance", prov}};
    if (reports.size() == 1) {
      for (auto& [k, val] : reports[0].items()) doc[k] = val;
    } else {
      doc["reports"] = reports;
    }
    return render_json(doc);
  }
  return csv;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "Master seed for random streams")->capture_default_str();
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  sub->add_option("--out", c.out, "Output path (default: standard output)");
  sub->add_option("--precision", c.precision, "Significant digits in CSV output")
      ->check(CLI::Range(1, 17))
      ->capture_default_str();
  sub->add_option("--workers", c.workers, "Worker threads (0 = all); does not change results");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qrate: Bachelier dynamics, drift verification and quantized rate spectra"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(qr_version()));

  Common common;

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Simulate exact-increment price paths (CSV: t,path_0,...)");
  simulate->add_option("--x0", sim.x0, "Initial price")->capture_default_str();
  simulate->add_option("--rate", sim.rate, "Risk-free rate r")->capture_default_str();
  simulate->add_option("--drift", sim.drift, "Drift mu (default: r)");
  simulate->add_option("--sigma", sim.sigma, "Volatility")->capture_default_str();
  simulate->add_option("--horizon", sim.horizon, "Final time T")->capture_default_str();
  simulate->add_option("--step", sim.step, "Grid step")->capture_default_str();
  simulate->add_option("--paths", sim.paths, "Number of paths")->capture_default_str();
  add_common(simulate, common);

  HitArgs hit;
  auto* hitcmd = app.add_subcommand("hit", "Closed-form first-passage probability vs Monte Carlo frequency");
  hitcmd->add_option("--x0", hit.x0, "Initial price")->capture_default_str();
  hitcmd->add_option("--rate", hit.rate, "Risk-free rate r")->capture_default_str();
  hitcmd->add_option("--sigma", hit.sigma, "Volatility")->capture_default_str();
  hitcmd->add_option("--strike", hit.strike, "Level K")->capture_default_str();
  hitcmd->add_option("--horizon", hit.horizon, "Time t")->capture_default_str();
  hitcmd->add_option("--step", hit.step, "Monitoring grid step")->capture_default_str();
  hitcmd->add_option("--paths", hit.paths, "Number of paths")->capture_default_str();
  add_common(hitcmd, common);

  SpectrumArgs spec;
  auto* spectrum = app.add_subcommand("spectrum", "Quantized rate spectrum (CSV: n,r_n,wavenumber,A)");
  spectrum->add_option("--sigma", spec.sigma, "Volatility")->capture_default_str();
  spectrum->add_option("--strike", spec.strike, "Strike K")->capture_default_str();
  spectrum->add_option("--n-max", spec.n_max, "Highest mode index")->capture_default_str();
  add_common(spectrum, common);

  SolveArgs solve;
  auto* solvecmd = app.add_subcommand("solve", "Characteristic roots of the full or hedged payoff ODE");
  solvecmd->add_option("--rate", solve.rate, "Rate r")->capture_default_str();
  solvecmd->add_option("--sigma", solve.sigma, "Volatility")->capture_default_str();
  auto* hedged = solvecmd->add_flag("--hedged", solve.hedged, "Delta-hedged form r V + D V'' = 0");
  solvecmd->add_flag("--full", "Full form r V + r V' + D V'' = 0 (default)")->excludes(hedged);
  add_common(solvecmd, common);

  NormalizeArgs norm;
  auto* normalize = app.add_subcommand("normalize", "Normalization constant of the sine solution on [0, K]");
  normalize->add_option("--rate", norm.rate, "Rate r");
  normalize->add_option("--mode", norm.mode, "Use the quantized rate of mode n");
  normalize->add_option("--sigma", norm.sigma, "Volatility")->capture_default_str();
  normalize->add_option("--strike", norm.strike, "Strike K")->capture_default_str();
  add_common(normalize, common);

  SurfaceArgs surf;
  auto* surface = app.add_subcommand("surface", "Discounted payoff surface Y(x, t) of a quantized mode");
  surface->add_option("--sigma", surf.sigma, "Volatility")->capture_default_str();
  surface->add_option("--strike", surf.strike, "Strike K")->capture_default_str();
  surface->add_option("--mode", surf.mode, "Mode index n")->capture_default_str();
  surface->add_option("--amplitude", surf.amplitude, "Amplitude A (default: normalized)");
  surface->add_option("--x-min", surf.x_min, "Smallest price (default 0)");
  surface->add_option("--x-max", surf.x_max, "Largest price (default K)");
  surface->add_option("--x-points", surf.x_points, "Price grid points")->capture_default_str();
  surface->add_option("--t-max", surf.t_max, "Final time")->capture_default_str();
  surface->add_option("--t-points", surf.t_points, "Time grid points")->capture_default_str();
  surface->add_option("--sign", surf.sign, "Exponent convention")
      ->check(CLI::IsMember({"plus", "minus", "paper_literal_plus", "standard_minus"}))
      ->capture_default_str();
  add_common(surface, common);

  DriftArgs drift;
  auto* driftcmd = app.add_subcommand("drift-check", "Monte Carlo drift of Y = V(X) e^{+-rt} and classification");
  driftcmd->add_option("--solution", drift.solution, "Candidate V: full (Eq. roots) or sine")
      ->check(CLI::IsMember({"full", "sine"}))
      ->capture_default_str();
  driftcmd->add_option("--rate", drift.rate, "Rate r")->capture_default_str();
  driftcmd->add_option("--mode", drift.mode, "Use the quantized rate of mode n (sine)");
  driftcmd->add_option("--strike", drift.strike, "Strike K for --mode")->capture_default_str();
  driftcmd->add_option("--sigma", drift.sigma, "Volatility")->capture_default_str();
  driftcmd->add_option("--amplitude", drift.amplitude, "Sine amplitude")->capture_default_str();
  driftcmd->add_option("--a-re", drift.a_re, "Re A (full)")->capture_default_str();
  driftcmd->add_option("--a-im", drift.a_im, "Im A (full)")->capture_default_str();
  driftcmd->add_option("--b-re", drift.b_re, "Re B (full)")->capture_default_str();
  driftcmd->add_option("--b-im", drift.b_im, "Im B (full)")->capture_default_str();
  driftcmd->add_option("--x0", drift.x0, "Probe price(s)")->capture_default_str();
  driftcmd->add_option("--time", drift.times, "Probe time(s)")->capture_default_str();
  driftcmd->add_option("--dt", drift.dt, "One-step horizon")->capture_default_str();
  driftcmd->add_option("--samples", drift.samples, "Samples per probe")->capture_default_str();
  driftcmd->add_option("--z", drift.z, "z threshold")->capture_default_str();
  driftcmd->add_option("--sign", drift.sign, "Exponent convention")
      ->check(CLI::IsMember({"plus", "minus", "paper_literal_plus", "standard_minus"}))
      ->capture_default_str();
  add_common(driftcmd, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << "\n" << app.help();
    return kExitUsage;
  }

  try {
    std::string text;
    if (*simulate) text = run_simulate(common, sim);
    else if (*hitcmd) text = run_hit(common, hit);
    else if (*spectrum) text = run_spectrum(common, spec);
    else if (*solvecmd) text = run_solve(common, solve);
    else if (*normalize) text = run_normalize(common, norm);
    else if (*surface) text = run_surface(common, surf);
    else if (*driftcmd) text = run_drift(common, drift);
    emit(common, text);
  } catch (const ApiFailure& e) {
    std::cerr << "error: " << e.message << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}
