#include "szf/verify.hpp"

#include "szf/specfun.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

namespace szf {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kTwoPi = 2.0 * kPi;

struct StopWatch {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  long ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start)
        .count();
  }
};

std::string key_with(const char* stem, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s[%.6g]", stem, value);
  return buf;
}

// Log of a value-or-log EvalResult, in the branch the producer used.
Cplx as_log(const EvalResult& e) { return e.log_scale ? e.value : std::log(e.value); }

}  // namespace

std::string report_json(const VerificationReport& report) {
  nlohmann::ordered_json j;
  j["check_name"] = report.check_name;
  j["passed"] = report.passed;
  j["observed"] = report.observed;
  j["thresholds"] = report.thresholds;
  j["samples"] = report.samples;
  j["runtime_ms"] = report.runtime_ms;
  return j.dump(2);
}

std::string reports_json(const std::vector<VerificationReport>& reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const VerificationReport& r : reports)
    arr.push_back(nlohmann::ordered_json::parse(report_json(r)));
  return arr.dump(2);
}

VerificationReport verify_t1p(long grid_size) {
  if (grid_size < 1000) throw ConfigError("verify_t1p: grid below 1000 points");
  StopWatch watch;
  VerificationReport report;
  report.check_name = "t1p";
  report.samples = grid_size;

  // Arc boundaries and their floors; the global floor is the final delta.
  const double edges[4] = {kPi / 4.0, kPi / 3.0, kPi / 2.0, kPi};
  const double floors[4] = {0.008, std::sqrt(2.0) / 4.0, 0.41, 0.008};
  double arc_min[4] = {1e300, 1e300, 1e300, 1e300};
  double global_min = 1e300, argmin = 0.0;

  for (long j = 0; j < grid_size; ++j) {
    const double theta = (j + 0.5) * kPi / grid_size;
    const double sigma = 0.5 * std::cos(theta);
    const double t = 0.5 * std::sin(theta);
    const double decay = std::exp(-kTwoPi * t);
    const Cplx z(decay * std::cos(kTwoPi * sigma), decay * std::sin(kTwoPi * sigma));
    const double value = t + std::log(std::abs(1.0 - z)) / kPi;
    int arc = 0;
    while (theta >= edges[arc]) ++arc;
    arc_min[arc] = std::min(arc_min[arc], value);
    if (value < global_min) {
      global_min = value;
      argmin = theta;
    }
  }

  report.observed["global_min"] = global_min;
  report.observed["argmin_theta"] = argmin;
  report.thresholds["delta"] = 0.007;
  report.passed = global_min > 0.007;
  for (int a = 0; a < 4; ++a) {
    char okey[16], tkey[16];
    std::snprintf(okey, sizeof okey, "arc%d_min", a + 1);
    std::snprintf(tkey, sizeof tkey, "arc%d_floor", a + 1);
    report.observed[okey] = arc_min[a];
    report.thresholds[tkey] = floors[a];
    report.passed = report.passed && arc_min[a] > floors[a];
  }
  report.runtime_ms = watch.ms();
  return report;
}

VerificationReport verify_x_asymptotic(const std::vector<double>& t_values,
                                       const std::vector<double>& sigma_values, int genus) {
  for (double t : t_values)
    if (t < 1.0) throw ConfigError("verify_x_asymptotic: t values must be >= 1");
  if (t_values.size() < 3) throw ConfigError("verify_x_asymptotic: at least 3 t values required");
  if (sigma_values.empty()) throw ConfigError("verify_x_asymptotic: no sigma values");
  StopWatch watch;
  VerificationReport report;
  report.check_name = "x_asymptotic";
  report.thresholds["slope_low"] = -kTwoPi * 1.15;
  report.thresholds["slope_high"] = -kTwoPi * 0.85;

  std::vector<double> ts = t_values;
  std::sort(ts.begin(), ts.end());
  long skipped = 0;
  bool all_pass = true;

  for (double sigma : sigma_values) {
    std::vector<double> xs, ys;
    bool monotone = true;
    double prev = 1e300;
    for (double t : ts) {
      ++report.samples;
      const Cplx exact = big_f({sigma - 0.5, t}, genus).value;
      const Cplx asym = as_log(x_asymptotic({sigma, t}, genus));
      const Cplx d = exact - asym;
      // Phase may differ by full turns between the two representations.
      const double r = std::hypot(d.real(), std::remainder(d.imag(), kTwoPi));
      if (r < 1e-300) {
        ++skipped;
        continue;
      }
      if (r >= prev) monotone = false;
      prev = r;
      xs.push_back(t);
      ys.push_back(std::log(r));
    }
    if (xs.size() < 3)
      throw ConfigError("verify_x_asymptotic: too few resolvable residuals to fit");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      mx += xs[i];
      my += ys[i];
    }
    mx /= xs.size();
    my /= ys.size();
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      num += (xs[i] - mx) * (ys[i] - my);
      den += (xs[i] - mx) * (xs[i] - mx);
    }
    const double slope = num / den;
    report.observed[key_with("slope", sigma)] = slope;
    report.observed[key_with("monotone", sigma)] = monotone ? 1.0 : 0.0;
    all_pass = all_pass && monotone && slope >= -kTwoPi * 1.15 && slope <= -kTwoPi * 0.85;
  }
  report.observed["skipped"] = static_cast<double>(skipped);
  report.passed = all_pass;
  report.runtime_ms = watch.ms();
  return report;
}

VerificationReport verify_growth(const ZetaEvaluator& zeta, const std::vector<double>& sigma_list,
                                 const std::vector<double>& ray_angles,
                                 const std::vector<double>& radii) {
  if (sigma_list.empty() || ray_angles.empty() || radii.size() < 2)
    throw ConfigError("verify_growth: need sigmas, rays and at least two radii");
  const double eps = 0.2;
  for (double angle : ray_angles) {
    double th = std::fmod(angle, kTwoPi);
    if (th < 0.0) th += kTwoPi;
    const bool upper = th >= kPi / 2.0 + eps - 1e-12 && th <= kPi - eps + 1e-12;
    const bool lower = th >= kPi + eps - 1e-12 && th <= 1.5 * kPi - eps + 1e-12;
    if (!upper && !lower) {
      char msg[96];
      std::snprintf(msg, sizeof msg, "verify_growth: ray angle %g outside the admissible sector",
                    angle);
      throw ConfigError(msg);
    }
  }
  std::vector<double> rs = radii;
  std::sort(rs.begin(), rs.end());
  for (double angle : ray_angles)
    for (double r : rs)
      if (r * std::cos(angle) > -zeta.margin())
        throw ConfigError("verify_growth: ray sample in the gap strip");

  StopWatch watch;
  VerificationReport report;
  report.check_name = "growth";
  double right_max_ratio = 0.0;
  for (double sigma : sigma_list) {
    ++report.samples;
    const EvalResult e = zeta.z_product({sigma, 0.0});
    const double lhs = std::abs(e.value - Cplx(1.0, 0.0));
    const double rhs = 4.0 * std::exp(-sigma * std::log(zeta.min_norm()));
    right_max_ratio = std::max(right_max_ratio, lhs / rhs);
  }

  bool monotone = true;
  double final_min = 1e300;
  for (double angle : ray_angles) {
    double prev = -1e300;
    for (double r : rs) {
      ++report.samples;
      const double lm = zeta.z_continued({r * std::cos(angle), r * std::sin(angle)}).log_modulus();
      if (lm <= prev) monotone = false;
      prev = lm;
    }
    final_min = std::min(final_min, prev);
  }

  report.observed["right_max_ratio"] = right_max_ratio;
  report.observed["left_final_min"] = final_min;
  report.observed["left_monotone"] = monotone ? 1.0 : 0.0;
  report.thresholds["right_ratio_max"] = 1.0;
  report.thresholds["left_final_floor"] = 100.0;
  report.passed = right_max_ratio <= 1.0 && monotone && final_min > 100.0;
  report.runtime_ms = watch.ms();
  return report;
}

VerificationReport verify_trivial_zeros(const ZetaEvaluator& zeta, const std::vector<int>& n_list,
                                        int prediction_genus) {
  if (n_list.empty()) throw ConfigError("verify_trivial_zeros: empty n list");
  for (int n : n_list)
    if (n < 1) throw ConfigError("verify_trivial_zeros: n must be >= 1");
  StopWatch watch;
  VerificationReport report;
  report.check_name = "trivial_zeros";
  report.thresholds["phase_residual_max"] = 0.05 * kTwoPi;
  bool all = true;
  double max_residual = 0.0;
  for (int n : n_list) {
    const WindingReport w = zeta.winding_number({{-static_cast<double>(n), 0.0}, 0.5, 64});
    const long predicted = static_cast<long>(2 * prediction_genus - 2) * (2l * n + 1);
    const double residual = std::abs(w.phase_total - kTwoPi * w.winding);
    report.observed[key_with("winding", n)] = static_cast<double>(w.winding);
    report.observed[key_with("predicted", n)] = static_cast<double>(predicted);
    report.samples += w.samples_used;
    max_residual = std::max(max_residual, residual);
    all = all && w.winding == predicted && residual < 0.05 * kTwoPi;
  }
  report.observed["max_phase_residual"] = max_residual;
  report.passed = all;
  report.runtime_ms = watch.ms();
  return report;
}

VerificationReport verify_involution(const InvolutionGrid& grid, int genus) {
  if (grid.sigma_count < 2 || grid.t_count < 2)
    throw ConfigError("verify_involution: grid needs at least 2x2 points");
  if (!(grid.sigma_max > grid.sigma_min) || !(grid.t_max > grid.t_min))
    throw ConfigError("verify_involution: empty grid ranges");
  StopWatch watch;
  VerificationReport report;
  report.check_name = "involution";
  double max_dev = 0.0, arg_sigma = 0.0, arg_t = 0.0;
  for (int i = 0; i < grid.sigma_count; ++i) {
    const double sigma =
        grid.sigma_min + i * (grid.sigma_max - grid.sigma_min) / (grid.sigma_count - 1);
    for (int j = 0; j < grid.t_count; ++j) {
      const double t = grid.t_min + j * (grid.t_max - grid.t_min) / (grid.t_count - 1);
      ++report.samples;
      const EvalResult a = x_factor({sigma, t}, genus);
      const EvalResult b = x_factor({1.0 - sigma, -t}, genus);
      Cplx product;
      if (a.log_scale || b.log_scale)
        product = std::exp(as_log(a) + as_log(b));
      else
        product = a.value * b.value;
      const double dev = std::abs(product - Cplx(1.0, 0.0));
      if (dev > max_dev) {
        max_dev = dev;
        arg_sigma = sigma;
        arg_t = t;
      }
    }
  }
  report.observed["max_deviation"] = max_dev;
  report.observed["argmax_sigma"] = arg_sigma;
  report.observed["argmax_t"] = arg_t;
  report.thresholds["deviation_max"] = 1e-9;
  report.passed = max_dev < 1e-9;
  report.runtime_ms = watch.ms();
  return report;
}

std::vector<VerificationReport> run_all(const VerifyConfig& config) {
  GroupPresentation group = load_group(config.group_path);
  LengthSpectrum spectrum;
  if (!config.spectrum_path.empty()) {
    spectrum = load_spectrum(config.spectrum_path);
  } else {
    SpectrumOptions sopts;
    sopts.threads = config.threads;
    spectrum = build_spectrum(group, config.max_word_length, sopts);
  }
  ZetaEvaluator zeta(std::move(spectrum), group.genus);
  const int prediction_genus = config.genus_override > 0 ? config.genus_override : group.genus;

  if (config.growth_radius_samples < 2)
    throw ConfigError("run_all: growth_radius_samples must be at least 2");
  std::vector<double> radii(config.growth_radius_samples);
  for (int i = 0; i < config.growth_radius_samples; ++i)
    radii[i] = 5.0 + 10.0 * i / (config.growth_radius_samples - 1);

  std::vector<VerificationReport> reports;
  reports.push_back(verify_t1p(config.t1p_grid));
  reports.push_back(verify_x_asymptotic(config.asym_t, config.asym_sigma, group.genus));
  reports.push_back(verify_growth(zeta, config.growth_sigma, config.growth_rays, radii));
  reports.push_back(verify_trivial_zeros(zeta, config.zeros_n, prediction_genus));
  reports.push_back(verify_involution(config.involution_grid, group.genus));
  std::sort(reports.begin(), reports.end(),
            [](const VerificationReport& a, const VerificationReport& b) {
              return a.check_name < b.check_name;
            });
  return reports;
}

}  // namespace szf
