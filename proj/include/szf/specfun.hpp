#pragma once

#include "szf/types.hpp"

namespace szf {

inline constexpr double euler_gamma = 0.5772156649015328606065121;

/** Dilogarithm Li2, principal branch with the cut along [1, infinity).
 * Direct series for small |z|; otherwise routed through the inversion,
 * reflection and Landen identities toward the series disc, with a
 * log-argument series fallback near the two points exp(+-i*pi/3) whose whole
 * transformation orbit stays on the unit circle. */
EvalResult li2(Cplx z);

/** F(s): the closed-form antiderivative of 4*pi*(genus-1) * v * tan(pi*v)
 * from 0 to s, analytic off the real axis.  Real s is evaluated by downward
 * continuity from the upper half-plane; the lower half-plane mirrors the
 * upper by conjugation.  Odd in s, so exp(F(w)+F(-w)) = 1 identically. */
EvalResult big_f(ComplexPoint s, int genus);

/** Functional-equation factor X(s) = exp(F(s - 1/2)).  Switches the result
 * to log scale when |Re F| would overflow exp.  Non-positive integers are
 * zeros; positive integers are poles and rejected. */
EvalResult x_factor(ComplexPoint s, int genus);

/** Leading exponential of X for t >= 1:
 * exp(2*pi*i*(genus-1)*(s-1/2)^2 + pi*i*(genus-1)/6), with a calibrated
 * bound on the discarded remainder. */
EvalResult x_asymptotic(ComplexPoint s, int genus);

/** Double gamma Gamma_2 via the Weierstrass-type product for 1/Gamma_2(w+1)
 * truncated at `trunc` factors with an Euler-Maclaurin tail; an internal
 * doubling run guards convergence. */
EvalResult gamma2(Cplx s, long trunc = 100000);

}  // namespace szf
