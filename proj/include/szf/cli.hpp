#pragma once

#include "szf/types.hpp"
#include "szf/zeta.hpp"

#include <string>
#include <vector>

namespace szf {

/** Parses "<a>", "<b>i" or "<a>+<b>i" (also with '-'), whitespace allowed.
 * Only 'i' marks the imaginary part. */
ComplexPoint parse_complex(const std::string& text);

struct RunConfig {
  std::string command;  // spectrum | eval | winding | verify | help
  std::string verify_check = "all";
  std::string group_path;  // resolved and checked for existence
  std::string output_path = "-";
  int max_word_length = 10;
  int k_cutoff = 0;
  double margin = 0.05;
  OrientationMode orientation = OrientationMode::oriented;
  int threads = 0;
  int genus_override = 0;
  long grid = 0;  // 0: per-check default
  double keep_length = 0.0;
  std::vector<ComplexPoint> eval_points;
  ContourSpec contour{{0.0, 0.0}, 0.5, 64};
};

/** Bundled group file next to the executable; used when neither a flag, a
 * config file entry nor SZF_GROUP names one. */
std::string default_group_path();

/** Validates argv into a RunConfig.  A config file named by --config supplies
 * defaults that explicit flags override.  --help prints usage and yields
 * command "help". */
RunConfig parse_args(const std::vector<std::string>& args);

/** Executes the configured command.  0 success, 1 verification failure. */
int run(const RunConfig& config);

/** Full pipeline with exit-code mapping: 0 ok, 1 failed verification,
 * 2 configuration or compute error (diagnostics on stderr). */
int run_cli(int argc, char** argv);

}  // namespace szf
