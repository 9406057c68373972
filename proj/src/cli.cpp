#include "szf/cli.hpp"

#include "szf/geodesics.hpp"
#include "szf/specfun.hpp"
#include "szf/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <unistd.h>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace szf {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string format_point(ComplexPoint s) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", s.sigma, s.t);
  return buf;
}

/** null when the value cannot be represented (log-scale overflow or an exact
 * zero's -inf log). */
ordered_json finite_or_null(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

ordered_json eval_record(ComplexPoint s, const EvalResult& e) {
  ordered_json rec;
  rec["s"] = format_point(s);
  if (e.log_scale) {
    rec["value_re"] = nullptr;
    rec["value_im"] = nullptr;
  } else {
    rec["value_re"] = e.value.real();
    rec["value_im"] = e.value.imag();
  }
  rec["log_modulus"] = finite_or_null(e.log_modulus());
  rec["error_bound"] = e.abs_error_bound;
  rec["method"] = to_string(e.method);
  return rec;
}

ordered_json winding_record(const ContourSpec& contour, const WindingReport& w) {
  ordered_json rec;
  rec["center"] = format_point(contour.center);
  rec["radius"] = contour.radius;
  rec["winding"] = w.winding;
  rec["max_phase_step"] = w.max_phase_step;
  rec["samples_used"] = w.samples_used;
  rec["phase_total"] = w.phase_total;
  if (w.predicted)
    rec["predicted"] = *w.predicted;
  else
    rec["predicted"] = nullptr;
  return rec;
}

void write_output(const std::string& path, const std::string& payload) {
  if (path == "-") {
    std::cout << payload;
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file: " + path);
  out << payload;
}

OrientationMode parse_orientation(const std::string& text) {
  if (text == "oriented") return OrientationMode::oriented;
  if (text == "unoriented") return OrientationMode::unoriented;
  throw ParseError("orientation must be 'oriented' or 'unoriented', got '" + text + "'");
}

/** Pulls --config <file> / --config=<file> out of the argument list. */
std::string peel_config(std::vector<std::string>& args) {
  std::string path;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw ParseError("--config requires a file argument");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  args.swap(rest);
  return path;
}

void apply_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config file not found: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError("config file " + path + ": " + e.what());
  }
  if (!j.is_object()) throw ParseError("config file " + path + ": expected a JSON object");
  for (auto& [key, value] : j.items()) {
    try {
      if (key == "group")
        cfg.group_path = value.get<std::string>();
      else if (key == "out")
        cfg.output_path = value.get<std::string>();
      else if (key == "max_word_length")
        cfg.max_word_length = value.get<int>();
      else if (key == "k_cutoff")
        cfg.k_cutoff = value.get<int>();
      else if (key == "margin")
        cfg.margin = value.get<double>();
      else if (key == "orientation")
        cfg.orientation = parse_orientation(value.get<std::string>());
      else if (key == "threads")
        cfg.threads = value.get<int>();
      else if (key == "genus_override")
        cfg.genus_override = value.get<int>();
      else if (key == "grid")
        cfg.grid = value.get<long>();
      else if (key == "keep_length")
        cfg.keep_length = value.get<double>();
      else if (key == "check")
        cfg.verify_check = value.get<std::string>();
      else if (key == "s") {
        cfg.eval_points.clear();
        if (value.is_array())
          for (auto& item : value) cfg.eval_points.push_back(parse_complex(item.get<std::string>()));
        else
          cfg.eval_points.push_back(parse_complex(value.get<std::string>()));
      } else if (key == "center")
        cfg.contour.center = parse_complex(value.get<std::string>());
      else if (key == "radius")
        cfg.contour.radius = value.get<double>();
      else if (key == "samples")
        cfg.contour.initial_samples = value.get<int>();
      else
        throw ParseError("config file " + path + ": unknown key '" + key + "'");
    } catch (const json::exception& e) {
      throw ParseError("config file " + path + ", key '" + key + "': " + e.what());
    }
  }
}

std::vector<double> growth_radii(int samples) {
  std::vector<double> radii(samples);
  for (int i = 0; i < samples; ++i) radii[i] = 5.0 + 10.0 * i / (samples - 1);
  return radii;
}

}  // namespace

ComplexPoint parse_complex(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  auto fail = [&]() -> ComplexPoint {
    throw ParseError("malformed complex literal '" + text +
                     "': expected <a>, <b>i or <a>+<b>i (only 'i' marks the imaginary part)");
  };
  if (s.empty()) return fail();
  const char* p = s.c_str();
  char* end = nullptr;
  const double first = std::strtod(p, &end);
  if (end == p || !std::isfinite(first)) return fail();
  if (*end == '\0') return {first, 0.0};
  if (*end == 'i' && end[1] == '\0') return {0.0, first};
  if (*end != '+' && *end != '-') return fail();
  const char* q = end;
  const double second = std::strtod(q, &end);
  if (end == q) {
    // "<a>+i" / "<a>-i" with an implicit unit coefficient.
    if (q[1] == 'i' && q[2] == '\0') return {first, q[0] == '+' ? 1.0 : -1.0};
    return fail();
  }
  if (!std::isfinite(second) || *end != 'i' || end[1] != '\0') return fail();
  return {first, second};
}

std::string default_group_path() {
  char buf[4096];
  const ssize_t n = ::readlink("/proc/self/exe", buf, sizeof buf - 1);
  if (n <= 0) return "data/bolza.json";
  buf[n] = '\0';
  const std::string exe(buf);
  const auto slash = exe.find_last_of('/');
  const std::string dir = slash == std::string::npos ? "." : exe.substr(0, slash);
  return dir + "/data/bolza.json";
}

RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig cfg;
  std::vector<std::string> rest = args;
  const std::string config_path = peel_config(rest);
  if (!config_path.empty()) apply_config_file(config_path, cfg);

  CLI::App app{"Numerical laboratory for the Selberg zeta function of a compact hyperbolic surface"};
  app.name("szf");
  std::string config_dummy;
  app.add_option("--config", config_dummy, "JSON file supplying defaults for the flags below");
  app.require_subcommand(0, 1);

  std::vector<std::string> point_args;
  std::string center_arg, orientation_arg;
  bool group_given = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option_function<std::string>(
           "--group", [&](const std::string& v) { cfg.group_path = v, group_given = true; },
           "Group file (JSON); default: bundled Bolza, or $SZF_GROUP");
    sub->add_option("--out", cfg.output_path, "Output file, '-' for stdout");
    sub->add_option("--threads", cfg.threads, "Worker threads, 0 = available parallelism");
  };
  auto add_zeta = [&](CLI::App* sub) {
    sub->add_option("--max-word-len", cfg.max_word_length, "Spectrum enumeration cutoff");
    sub->add_option("--k-cutoff", cfg.k_cutoff, "Inner product truncation, 0 = automatic");
    sub->add_option("--margin", cfg.margin, "Half-width of the non-computable strip");
    sub->add_option("--orientation", orientation_arg, "oriented | unoriented");
  };

  CLI::App* spectrum = app.add_subcommand("spectrum", "Enumerate the length spectrum to CSV");
  add_common(spectrum);
  spectrum->add_option("--max-word-len", cfg.max_word_length, "Enumeration cutoff");
  spectrum->add_option("--keep-length", cfg.keep_length,
                       "Retain classes up to this length, 0 = completeness radius");

  CLI::App* eval = app.add_subcommand("eval", "Evaluate Z(s) at one or more points");
  add_common(eval);
  add_zeta(eval);
  eval->add_option("--s", point_args, "Evaluation point, e.g. \"2.0+3.0i\"");

  CLI::App* winding = app.add_subcommand("winding", "Winding number of Z along a circle");
  add_common(winding);
  add_zeta(winding);
  winding->add_option("--center", center_arg, "Contour center, e.g. \"-1\"");
  winding->add_option("--radius", cfg.contour.radius, "Contour radius");
  winding->add_option("--samples", cfg.contour.initial_samples, "Initial contour samples");

  CLI::App* verify = app.add_subcommand("verify", "Run named numerical certificates");
  add_common(verify);
  std::string check_arg;
  verify->add_option("check", check_arg, "t1p | asymptotic | growth | zeros | involution | all")
      ->check(CLI::IsMember({"t1p", "asymptotic", "growth", "zeros", "involution", "all"}));
  verify->add_option("--grid", cfg.grid, "Grid size (t1p points / involution per axis)");
  verify->add_option("--genus-override", cfg.genus_override,
                     "Genus used for predicted counts, 0 = group genus");
  verify->add_option("--max-word-len", cfg.max_word_length, "Spectrum enumeration cutoff");

  std::vector<char*> argv;
  std::string progname = "szf";
  argv.push_back(progname.data());
  for (std::string& a : rest) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    cfg.command = "help";
    return cfg;
  } catch (const CLI::ParseError& e) {
    throw ParseError(e.what());
  }

  if (spectrum->parsed())
    cfg.command = "spectrum";
  else if (eval->parsed())
    cfg.command = "eval";
  else if (winding->parsed())
    cfg.command = "winding";
  else if (verify->parsed())
    cfg.command = "verify";
  else
    throw ParseError("missing command: spectrum | eval | winding | verify (see --help)");

  if (!orientation_arg.empty()) cfg.orientation = parse_orientation(orientation_arg);
  if (!point_args.empty()) {
    // --s on the command line replaces any point list from the config file.
    cfg.eval_points.clear();
    for (const std::string& p : point_args) cfg.eval_points.push_back(parse_complex(p));
  }
  if (!center_arg.empty()) cfg.contour.center = parse_complex(center_arg);
  if (!check_arg.empty()) cfg.verify_check = check_arg;

  if (cfg.group_path.empty()) {
    const char* env = std::getenv("SZF_GROUP");
    cfg.group_path = env && *env ? env : default_group_path();
  }
  (void)group_given;

  std::vector<std::string> problems;
  if (cfg.max_word_length < 1 || cfg.max_word_length > 40)
    problems.push_back("--max-word-len outside [1, 40]");
  if (cfg.k_cutoff < 0) problems.push_back("--k-cutoff must be >= 0 (0 = automatic)");
  if (!(cfg.margin > 0.0) || cfg.margin > 0.5) problems.push_back("--margin outside (0, 0.5]");
  if (cfg.threads < 0) problems.push_back("--threads must be >= 0");
  if (cfg.grid < 0) problems.push_back("--grid must be >= 0");
  if (cfg.genus_override != 0 && (cfg.genus_override < 2 || cfg.genus_override > 13))
    problems.push_back("--genus-override outside [2, 13]");
  if (cfg.keep_length < 0.0) problems.push_back("--keep-length must be >= 0");
  if (cfg.command == "eval" && cfg.eval_points.empty())
    problems.push_back("eval requires at least one --s point");
  if (cfg.command == "winding" && !(cfg.contour.radius > 0.0))
    problems.push_back("winding requires --radius > 0");
  if (cfg.command == "winding" && cfg.contour.initial_samples < 64)
    problems.push_back("--samples must be at least 64");
  if (!problems.empty()) {
    std::string msg = "invalid arguments:";
    for (const std::string& p : problems) msg += "\n  " + p;
    throw ParseError(msg);
  }

  std::ifstream probe(cfg.group_path);
  if (!probe) throw ConfigError("group file not found: " + cfg.group_path);
  return cfg;
}

int run(const RunConfig& config) {
  if (config.command == "help") return 0;

  GroupPresentation group = load_group(config.group_path);

  if (config.command == "spectrum") {
    SpectrumOptions sopts;
    sopts.keep_length = config.keep_length;
    sopts.threads = config.threads;
    const LengthSpectrum spectrum = build_spectrum(group, config.max_word_length, sopts);
    save_spectrum(spectrum, config.output_path);
    return 0;
  }

  if (config.command == "eval" || config.command == "winding") {
    SpectrumOptions sopts;
    sopts.threads = config.threads;
    LengthSpectrum spectrum = build_spectrum(group, config.max_word_length, sopts);
    ZetaOptions zopts;
    zopts.k_cutoff = config.k_cutoff;
    zopts.margin = config.margin;
    zopts.orientation = config.orientation;
    const ZetaEvaluator zeta(std::move(spectrum), group.genus, zopts);

    if (config.command == "eval") {
      if (config.eval_points.size() == 1) {
        const ComplexPoint s = config.eval_points.front();
        write_output(config.output_path, eval_record(s, zeta.z_anywhere(s)).dump(2) + "\n");
      } else {
        ordered_json arr = ordered_json::array();
        for (ComplexPoint s : config.eval_points) arr.push_back(eval_record(s, zeta.z_anywhere(s)));
        write_output(config.output_path, arr.dump(2) + "\n");
      }
      return 0;
    }

    const WindingReport w = zeta.winding_number(config.contour);
    write_output(config.output_path, winding_record(config.contour, w).dump(2) + "\n");
    return 0;
  }

  // verify
  VerifyConfig vc;
  vc.group_path = config.group_path;
  vc.max_word_length = config.max_word_length;
  vc.genus_override = config.genus_override;
  vc.threads = config.threads;
  if (config.grid > 0) {
    vc.t1p_grid = config.grid;
    vc.involution_grid.sigma_count = static_cast<int>(config.grid);
    vc.involution_grid.t_count = static_cast<int>(config.grid);
  }

  const std::string& check = config.verify_check;
  if (check == "all") {
    const std::vector<VerificationReport> reports = run_all(vc);
    write_output(config.output_path, reports_json(reports) + "\n");
    for (const VerificationReport& r : reports)
      if (!r.passed) return 1;
    return 0;
  }

  VerificationReport report;
  if (check == "t1p") {
    report = verify_t1p(vc.t1p_grid);
  } else if (check == "asymptotic") {
    report = verify_x_asymptotic(vc.asym_t, vc.asym_sigma, group.genus);
  } else if (check == "involution") {
    report = verify_involution(vc.involution_grid, group.genus);
  } else {
    SpectrumOptions sopts;
    sopts.threads = config.threads;
    LengthSpectrum spectrum = build_spectrum(group, vc.max_word_length, sopts);
    const ZetaEvaluator zeta(std::move(spectrum), group.genus);
    if (check == "growth")
      report = verify_growth(zeta, vc.growth_sigma, vc.growth_rays,
                             growth_radii(vc.growth_radius_samples));
    else
      report = verify_trivial_zeros(zeta, vc.zeros_n,
                                    vc.genus_override > 0 ? vc.genus_override : group.genus);
  }
  write_output(config.output_path, report_json(report) + "\n");
  return report.passed ? 0 : 1;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  try {
    const RunConfig config = parse_args(args);
    return run(config);
  } catch (const Error& e) {
    std::cerr << "szf: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "szf: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace szf
