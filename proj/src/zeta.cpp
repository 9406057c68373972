#include "szf/zeta.hpp"

#include "kahan.hpp"
#include "szf/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>
#include <vector>

namespace szf {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kTwoPi = 2.0 * kPi;
constexpr long kSampleCap = 1l << 18;

// Principal log of Gamma_2 with the error bound moved to the log domain.
Cplx log_gamma2(Cplx s, double* log_bound) {
  EvalResult g = gamma2(s);
  if (g.log_scale) {
    *log_bound = g.abs_error_bound;
    return g.value;
  }
  *log_bound = g.abs_error_bound / std::max(std::abs(g.value), 1e-300);
  return std::log(g.value);
}

}  // namespace

ZetaEvaluator::ZetaEvaluator(LengthSpectrum spectrum, int genus, ZetaOptions opts)
    : spectrum_(std::move(spectrum)), genus_(genus), opts_(opts) {
  if (genus_ < 2) throw ConfigError("zeta: genus must be at least 2");
  if (opts_.k_cutoff < 0) throw ConfigError("zeta: k_cutoff must be positive (0 = automatic)");
  if (!(opts_.margin > 0.0)) throw ConfigError("zeta: margin must be positive");
  if (spectrum_.classes.empty()) throw ConfigError("zeta: empty spectrum");
  double prev = 0.0;
  for (const GeodesicClass& c : spectrum_.classes) {
    if (!(c.norm > 1.0)) throw ConfigError("zeta: spectrum class with norm <= 1");
    if (c.norm < prev) throw ConfigError("zeta: spectrum classes not sorted by norm");
    prev = c.norm;
    if (c.primitive) lines_.push_back({c.length, c.multiplicity});
  }
  if (lines_.empty()) throw ConfigError("zeta: spectrum has no primitive classes");
  if (!(spectrum_.min_norm > 1.0)) throw ConfigError("zeta: min_norm must exceed 1");

  max_line_length_ = lines_.back().length;
  for (const Line& line : lines_)
    if (line.length >= max_line_length_ - 1.0) tail_window_count_ += 1.0;
}

long ZetaEvaluator::effective_multiplicity(std::size_t line) const {
  long m = lines_.at(line).multiplicity;
  return opts_.orientation == OrientationMode::oriented ? m : (m + 1) / 2;
}

int ZetaEvaluator::pick_k(double sigma) const {
  // Smallest k with exp(-(sigma+k) * systole) < 1e-17.
  const double systole = lines_.front().length;
  const double target = 17.0 * std::log(10.0);
  int k = 1;
  while (k < 40 && (sigma + k) * systole <= target) ++k;
  return k;
}

Cplx ZetaEvaluator::log_product(ComplexPoint s, double* log_bound) const {
  const Cplx sc = s.value();
  const int K = opts_.k_cutoff > 0 ? opts_.k_cutoff : pick_k(s.sigma);
  CSum acc;
  double inner_tail = 0.0;
  for (const Line& line : lines_) {
    const double l = line.length;
    const double decay = std::exp(-l);
    const double geom = decay / (1.0 - decay);
    Cplx u = std::exp(-sc * l);
    double au = std::exp(-s.sigma * l);
    bool truncated = false;
    for (int k = 0; k <= K; ++k) {
      if (au < 1e-18) {
        // log(1-u) is -u to 1e-36 here; the rest of the k sum is geometric.
        acc.add(-u);
        inner_tail += au * geom;
        truncated = true;
        break;
      }
      acc.add(std::log(1.0 - u));
      u *= decay;
      au *= decay;
    }
    if (!truncated) inner_tail += au * geom;  // au = exp(-(sigma+K+1) l) here
  }
  // Classes beyond the spectrum cutoff: model each unit length window past the
  // end as holding twice the count of the last observed window, then double
  // once more for safety.  Converges since 2 e^-sigma < 1 for sigma > 1.
  const double q = 2.0 * std::exp(-s.sigma);
  const double outer_tail = 2.0 * tail_window_count_ *
                            std::exp(-s.sigma * (max_line_length_ - 1.0)) * q / (1.0 - q);
  *log_bound = inner_tail + outer_tail + 2e-15 * (1.0 + std::abs(acc.sum));
  return acc.sum;
}

EvalResult ZetaEvaluator::z_product(ComplexPoint s) const {
  if (!(s.sigma >= 1.0 + opts_.margin))
    throw RegionError("z_product: outside convergence region (sigma >= 1 + margin required)");
  double bound = 0.0;
  const Cplx lz = log_product(s, &bound);
  if (std::abs(lz.real()) > 700.0) return {lz, bound, EvalMethod::product, true};
  const Cplx v = std::exp(lz);
  return {v, std::abs(v) * std::expm1(bound), EvalMethod::product, false};
}

EvalResult ZetaEvaluator::z_continued(ComplexPoint s) const {
  if (!(s.sigma <= -opts_.margin))
    throw RegionError("z_continued: outside continued region (sigma <= -margin required)");
  if (s.t == 0.0) {
    const double n = std::round(s.sigma);
    if (std::abs(s.sigma - n) < 1e-12) {
      // X carries a zero of order (2g-2)(2|n|+1) at s = n <= -1.
      return {Cplx(0.0, 0.0), 0.0, EvalMethod::continuation, false};
    }
  }
  const EvalResult f = big_f({s.sigma - 0.5, s.t}, genus_);
  double zb = 0.0;
  const Cplx lzp = log_product(s.reflected(), &zb);
  const Cplx lz = f.value + lzp;
  const double bound = f.abs_error_bound + zb + 1e-15 * (1.0 + std::abs(lz));
  if (std::abs(lz.real()) > 700.0) return {lz, bound, EvalMethod::continuation, true};
  const Cplx v = std::exp(lz);
  return {v, std::abs(v) * std::expm1(bound), EvalMethod::continuation, false};
}

EvalResult ZetaEvaluator::z_anywhere(ComplexPoint s) const {
  if (s.sigma >= 1.0 + opts_.margin) return z_product(s);
  if (s.sigma <= -opts_.margin) return z_continued(s);
  char msg[128];
  std::snprintf(msg, sizeof msg,
                "z_anywhere: strip not computable (no formula covers %g < sigma < %g)",
                -opts_.margin, 1.0 + opts_.margin);
  throw RegionError(msg);
}

WindingReport ZetaEvaluator::winding_number(const ContourSpec& contour) const {
  if (!(contour.radius > 0.0)) throw ConfigError("winding: radius must be positive");
  if (contour.initial_samples < 64) throw ConfigError("winding: initial_samples must be at least 64");

  const Cplx c = contour.center.value();
  long evals = 0;
  auto phase_at = [&](double theta) {
    const Cplx p = c + contour.radius * Cplx(std::cos(theta), std::sin(theta));
    const EvalResult e = z_anywhere({p.real(), p.imag()});
    ++evals;
    if (!e.log_scale && e.value == Cplx(0.0, 0.0))
      throw DomainError("winding: contour passes through a zero");
    return e.log_scale ? e.value.imag() : std::arg(e.value);
  };

  std::vector<std::pair<double, double>> pts;  // theta, phase; theta ascending
  pts.reserve(contour.initial_samples + 1);
  for (int i = 0; i <= contour.initial_samples; ++i)
    pts.emplace_back(kTwoPi * i / contour.initial_samples, 0.0);
  for (auto& p : pts) p.second = phase_at(p.first);

  // Bisect every step of pi/2 or more until none remain.
  for (;;) {
    std::vector<std::pair<double, double>> next;
    next.reserve(pts.size() * 2);
    bool split = false;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      next.push_back(pts[i]);
      if (std::abs(std::remainder(pts[i + 1].second - pts[i].second, kTwoPi)) >= kPi / 2.0) {
        if (evals >= kSampleCap)
          throw ConvergenceError("winding: phase steps still >= pi/2 after 2^18 samples");
        const double mid = 0.5 * (pts[i].first + pts[i + 1].first);
        next.emplace_back(mid, phase_at(mid));
        split = true;
      }
    }
    next.push_back(pts.back());
    pts.swap(next);
    if (!split) break;
  }

  WindingReport report;
  double total = 0.0, max_step = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double d = std::remainder(pts[i + 1].second - pts[i].second, kTwoPi);
    total += d;
    max_step = std::max(max_step, std::abs(d));
  }
  report.winding = std::lround(total / kTwoPi);
  report.max_phase_step = max_step;
  report.samples_used = evals;
  report.phase_total = total;
  const double residual = std::abs(total - kTwoPi * report.winding);
  if (!(residual < 0.05 * kTwoPi)) {
    char msg[96];
    std::snprintf(msg, sizeof msg, "winding: phase total %.6f off the nearest multiple of 2pi by %.3f",
                  total, residual);
    throw ConvergenceError(msg);
  }

  if (std::abs(contour.center.t) <= 1e-9 && std::abs(contour.radius - 0.5) <= 1e-9) {
    const double n = std::round(-contour.center.sigma);
    if (n >= 1.0 && std::abs(contour.center.sigma + n) <= 1e-9)
      report.predicted = static_cast<long>(2 * genus_ - 2) * (2 * static_cast<long>(n) + 1);
  }
  return report;
}

EvalResult ZetaEvaluator::xi_completed(ComplexPoint s) const {
  if (!(s.sigma >= 1.0 + opts_.margin))
    throw RegionError("xi_completed: outside convergence region (sigma >= 1 + margin required)");
  const Cplx sc = s.value();
  double b1 = 0.0, b2 = 0.0, zb = 0.0;
  const Cplx lg1 = log_gamma2(sc, &b1);
  const Cplx lg2 = log_gamma2(sc + 1.0, &b2);
  const Cplx lz = log_product(s, &zb);
  const double e = 2.0 * genus_ - 2.0;
  const Cplx lxi = e * (sc * std::log(kTwoPi) + lg1 + lg2) + lz;
  const double bound = e * (b1 + b2) + zb + 1e-15 * (1.0 + std::abs(lxi));
  if (std::abs(lxi.real()) > 700.0) return {lxi, bound, EvalMethod::product, true};
  const Cplx v = std::exp(lxi);
  return {v, std::abs(v) * std::expm1(bound), EvalMethod::product, false};
}

double eigenvalue_from_zero(double t_j) { return 0.25 + t_j * t_j; }

}  // namespace szf
