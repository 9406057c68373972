#pragma once

#include "szf/types.hpp"
#include "szf/zeta.hpp"

#include <map>
#include <string>
#include <vector>

namespace szf {

/** One named numerical certificate.  passed is a pure function of observed vs
 * thresholds; everything except runtime_ms reproduces bit-for-bit for a fixed
 * grid. */
struct VerificationReport {
  std::string check_name;
  bool passed = false;
  std::map<std::string, double> observed;
  std::map<std::string, double> thresholds;
  long samples = 0;
  long runtime_ms = 0;
};

/** Schema: {check_name, passed, observed:{...}, thresholds:{...}, samples,
 * runtime_ms}; keys in fixed order. */
std::string report_json(const VerificationReport& report);
std::string reports_json(const std::vector<VerificationReport>& reports);

/** Minimum of t + (1/pi) log|1 - e^(2 i pi s)| over |s| = 1/2, t >= 0, on a
 * midpoint grid in the angle.  Passes when the global minimum clears 0.007 and
 * the four arc minima clear 0.008, sqrt(2)/4, 0.41, 0.008. */
VerificationReport verify_t1p(long grid_size);

/** Log-residual between X and its main asymptotic term, fitted against t for
 * each sigma.  Passes when every fitted slope lies within 15% of -2*pi and the
 * residuals decrease strictly in t.  Residuals too small to resolve are
 * skipped and counted. */
VerificationReport verify_x_asymptotic(const std::vector<double>& t_values,
                                       const std::vector<double>& sigma_values, int genus);

/** Right side: |z_product(sigma) - 1| <= 4 min_norm^-sigma for each sigma.
 * Left side: log|z_continued| strictly increasing in radius along each ray
 * and above 100 at the largest radius.  Rays must keep 0.2 away from the
 * imaginary axis and the negative real axis. */
VerificationReport verify_growth(const ZetaEvaluator& zeta, const std::vector<double>& sigma_list,
                                 const std::vector<double>& ray_angles,
                                 const std::vector<double>& radii);

/** Windings on |s+n| = 1/2 against (2g-2)(2n+1).  prediction_genus feeds only
 * the predicted count; the measurement always uses the evaluator's group. */
VerificationReport verify_trivial_zeros(const ZetaEvaluator& zeta, const std::vector<int>& n_list,
                                        int prediction_genus);

struct InvolutionGrid {
  double sigma_min = -3.0;
  double sigma_max = 4.0;
  double t_min = 0.1;
  double t_max = 5.0;
  int sigma_count = 20;
  int t_count = 20;
};

/** Max over the grid of |X(s) X(1-s) - 1|; passes below 1e-9. */
VerificationReport verify_involution(const InvolutionGrid& grid, int genus);

struct VerifyConfig {
  std::string group_path;
  /** When set, the spectrum is loaded from this CSV instead of being built. */
  std::string spectrum_path;
  int max_word_length = 10;
  /** 0: predictions use the group's genus; otherwise this value (the
   * evaluation side always uses the group). */
  int genus_override = 0;
  long t1p_grid = 100000;
  InvolutionGrid involution_grid{};
  std::vector<double> asym_t = {1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0};
  std::vector<double> asym_sigma = {0.5};
  std::vector<double> growth_sigma = {3, 4, 5, 6, 7, 8, 9, 10};
  std::vector<double> growth_rays = {2.0943951023931953, 2.356194490192345,
                                     4.1887902047863905};  // 2pi/3, 3pi/4, 4pi/3
  int growth_radius_samples = 64;  // radii spread evenly over [5, 15]
  std::vector<int> zeros_n = {1, 2, 3};
  int threads = 0;
};

/** Runs every check with the config's grids and returns the reports sorted by
 * check_name.  Aggregate pass is the conjunction. */
std::vector<VerificationReport> run_all(const VerifyConfig& config);

}  // namespace szf
