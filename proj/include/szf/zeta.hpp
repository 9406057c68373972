#pragma once

#include "szf/geodesics.hpp"
#include "szf/types.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace szf {

enum class OrientationMode { oriented, unoriented };

struct ZetaOptions {
  /** Inner truncation of the product over k. 0 picks the smallest k with
   * min_norm^-(sigma+k) below 1e-17 at each evaluation point, capped at 40. */
  int k_cutoff = 0;
  /** Half-width of the non-computable strip: the product needs
   * sigma >= 1 + margin, the continuation sigma <= -margin. */
  double margin = 0.05;
  /** Bookkeeping convention for class multiplicities; the product itself runs
   * over distinct primitive length lines and is unaffected. */
  OrientationMode orientation = OrientationMode::oriented;
};

struct ContourSpec {
  ComplexPoint center;
  double radius = 0.0;
  int initial_samples = 64;
};

struct WindingReport {
  long winding = 0;
  double max_phase_step = 0.0;  // largest accepted step, always < pi/2
  long samples_used = 0;
  /** Accumulated phase in radians; |phase_total - 2*pi*winding| < 0.05*2*pi
   * is asserted before the report is returned. */
  double phase_total = 0.0;
  /** (2g-2)(2n+1), present when the contour is |s+n| = 1/2 for integer n >= 1. */
  std::optional<long> predicted;
};

/** Evaluates Z(s) from a length spectrum: truncated double product over
 * primitive classes and shifts k on the right of the strip, the functional
 * equation Z(s) = X(s) Z(1-s) on the left.  Immutable after construction;
 * evaluations at distinct points are independent. */
class ZetaEvaluator {
 public:
  ZetaEvaluator(LengthSpectrum spectrum, int genus, ZetaOptions opts = {});

  int genus() const { return genus_; }
  double margin() const { return opts_.margin; }
  const ZetaOptions& options() const { return opts_; }
  const LengthSpectrum& spectrum() const { return spectrum_; }
  double min_norm() const { return spectrum_.min_norm; }
  /** Distinct primitive length lines feeding the product. */
  std::size_t line_count() const { return lines_.size(); }
  /** Class multiplicity under the active orientation convention: the stored
   * count when oriented, halved (rounded up) when unoriented. */
  long effective_multiplicity(std::size_t line) const;

  /** Truncated Euler product, sigma >= 1 + margin. */
  EvalResult z_product(ComplexPoint s) const;
  /** X(s) Z(1-s) in log form, sigma <= -margin; exact zero at negative
   * integers on the real axis. */
  EvalResult z_continued(ComplexPoint s) const;
  /** Dispatch to whichever side covers s; refuses the strip. */
  EvalResult z_anywhere(ComplexPoint s) const;
  /** Phase-increment winding of Z along a circle.  Steps are bisected until
   * all are below pi/2, capped at 2^18 evaluations. */
  WindingReport winding_number(const ContourSpec& contour) const;
  /** ((2pi)^s Gamma_2(s) Gamma_2(s+1))^(2g-2) Z(s), sigma >= 1 + margin. */
  EvalResult xi_completed(ComplexPoint s) const;

 private:
  struct Line {
    double length = 0.0;  // log of the norm
    long multiplicity = 1;
  };

  int pick_k(double sigma) const;
  Cplx log_product(ComplexPoint s, double* log_bound) const;

  LengthSpectrum spectrum_;
  std::vector<Line> lines_;
  int genus_ = 2;
  ZetaOptions opts_;
  double tail_window_count_ = 0.0;  // primitive lines in the last unit window
  double max_line_length_ = 0.0;
};

/** Laplace eigenvalue 1/4 + t^2 attached to a zero at 1/2 + it. */
double eigenvalue_from_zero(double t_j);

}  // namespace szf
