#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace szf {

using Cplx = std::complex<double>;

/** Point s = sigma + i t of the complex plane. */
struct ComplexPoint {
  double sigma = 0.0;
  double t = 0.0;

  ComplexPoint() = default;
  ComplexPoint(double sigma_, double t_) : sigma(sigma_), t(t_) {}
  explicit ComplexPoint(Cplx z) : sigma(z.real()), t(z.imag()) {}

  Cplx value() const { return {sigma, t}; }
  ComplexPoint conj() const { return {sigma, -t}; }
  ComplexPoint reflected() const { return {1.0 - sigma, -t}; }
};

enum class EvalMethod { series, continuation, reflection, asymptotic, product, quadrature };

const char* to_string(EvalMethod m);

/** Numerical value together with a rigorous-in-spirit error bound.
 *
 * When log_scale is set, `value` holds the principal logarithm of the result
 * (used when the result itself would overflow a double) and abs_error_bound
 * bounds the error of that logarithm.  Otherwise abs_error_bound bounds
 * |computed - exact| of `value` directly. */
struct EvalResult {
  Cplx value{0.0, 0.0};
  double abs_error_bound = 0.0;
  EvalMethod method = EvalMethod::series;
  bool log_scale = false;

  /** Re log of the result; -inf for an exact zero. */
  double log_modulus() const;
  /** The plain value; exponentiates when log_scale (may overflow to inf). */
  Cplx as_value() const;
};

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
/** Malformed files, literals or words. */
struct ParseError : Error { using Error::Error; };
/** Poles, branch cuts, non-hyperbolic traces. */
struct DomainError : Error { using Error::Error; };
/** Point outside a computable region. */
struct RegionError : Error { using Error::Error; };
/** Inconsistent options or parameters. */
struct ConfigError : Error { using Error::Error; };
/** Memory or sample budget exceeded. */
struct ResourceError : Error { using Error::Error; };
/** An iteration failed its own convergence check. */
struct ConvergenceError : Error { using Error::Error; };

namespace tol {
/** An element is hyperbolic iff |trace| > 2 + hyperbolic. */
inline constexpr double hyperbolic = 1e-9;
/** Trace gap separating conjugacy-class clusters. */
inline constexpr double trace_cluster = 1e-9;
/** Accepted residual for determinants and the surface relation. */
inline constexpr double group_residual = 1e-9;
/** Default distance kept away from the critical strip edges. */
inline constexpr double strip_margin = 0.05;
}  // namespace tol

}  // namespace szf
