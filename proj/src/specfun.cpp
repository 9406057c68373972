#include "szf/specfun.hpp"

#include "kahan.hpp"

#include <array>
#include <cmath>
#include <cstdio>

namespace szf {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kPi2_6 = 1.64493406684822643647241516664602519;  // pi^2/6

struct SeriesOut {
  Cplx sum;
  double err;
};

// Direct defining series; callers guarantee |z| <= 0.8.
SeriesOut li2_series(Cplx z) {
  const double az = std::abs(z);
  Cplx term = z;
  Cplx sum = z;
  double mag = az;
  int n = 1;
  while (true) {
    ++n;
    term *= z;
    sum += term / static_cast<double>(n * n);
    mag *= az;
    double next = mag * az / static_cast<double>((n + 1) * (n + 1));
    if (next < 1e-18 || n >= 4000) break;
  }
  double tail = mag * az / static_cast<double>((n + 1) * (n + 1)) / std::max(0.2, 1.0 - az);
  return {sum, 2.0 * tail + 4e-16 * std::abs(sum)};
}

// Series in u = -log(1-z): Li2(z) = sum_k B_k/(k+1)! u^{k+1}.  Converges for
// |u| < 2*pi; used only near the two unit-circle points whose transformation
// orbit never enters the series disc, where |u| stays below 1.7.
SeriesOut li2_log_series(Cplx u) {
  static const std::array<double, 30> coeff = [] {
    const double bern[30] = {1.0,
                             -0.5,
                             1.0 / 6,
                             0.0,
                             -1.0 / 30,
                             0.0,
                             1.0 / 42,
                             0.0,
                             -1.0 / 30,
                             0.0,
                             5.0 / 66,
                             0.0,
                             -691.0 / 2730,
                             0.0,
                             7.0 / 6,
                             0.0,
                             -3617.0 / 510,
                             0.0,
                             43867.0 / 798,
                             0.0,
                             -174611.0 / 330,
                             0.0,
                             854513.0 / 138,
                             0.0,
                             -236364091.0 / 2730,
                             0.0,
                             8553103.0 / 6,
                             0.0,
                             -23749461029.0 / 870,
                             0.0};
    std::array<double, 30> c{};
    double fact = 1.0;  // (k+1)!
    for (int k = 0; k < 30; ++k) {
      fact *= (k + 1);
      c[k] = bern[k] / fact;
    }
    return c;
  }();

  Cplx up = u;
  Cplx sum = 0.0;
  for (int k = 0; k < 30; ++k) {
    if (coeff[k] != 0.0) sum += coeff[k] * up;
    up *= u;
  }
  double au = std::abs(u);
  double tail = 1.5e-25 * std::pow(au, 31.0);
  return {sum, 2.0 * tail + 4e-16 * std::abs(sum)};
}

inline Cplx sq(Cplx v) { return v * v; }

}  // namespace

EvalResult li2(Cplx z) {
  if (z == Cplx(0.0, 0.0)) return {Cplx(0.0, 0.0), 0.0, EvalMethod::series, false};
  if (z.imag() == 0.0 && z.real() >= 1.0)
    throw DomainError("li2: argument lies on the branch cut [1, infinity)");

  const double R = 0.8;
  const double m_id = std::abs(z);
  const double m_refl = std::abs(1.0 - z);
  const double m_inv = 1.0 / m_id;
  const double m_landen = m_id / m_refl;

  if (m_id <= R) {
    auto s = li2_series(z);
    return {s.sum, s.err, EvalMethod::series, false};
  }
  if (m_landen <= R && m_landen <= m_inv && m_landen <= m_refl) {
    // Landen: Li2(z) = -Li2(z/(z-1)) - log^2(1-z)/2
    auto s = li2_series(z / (z - 1.0));
    Cplx v = -s.sum - 0.5 * sq(std::log(1.0 - z));
    return {v, s.err + 4e-16 * (1.0 + std::abs(v)), EvalMethod::continuation, false};
  }
  if (m_refl <= R && m_refl <= m_inv) {
    // Reflection: Li2(z) = pi^2/6 - log(z) log(1-z) - Li2(1-z)
    auto s = li2_series(1.0 - z);
    Cplx v = kPi2_6 - std::log(z) * std::log(1.0 - z) - s.sum;
    return {v, s.err + 4e-16 * (1.0 + std::abs(v)), EvalMethod::reflection, false};
  }
  if (m_inv <= R) {
    // Inversion: Li2(z) = -Li2(1/z) - pi^2/6 - log^2(-z)/2
    auto s = li2_series(1.0 / z);
    Cplx v = -s.sum - kPi2_6 - 0.5 * sq(std::log(-z));
    return {v, s.err + 4e-16 * (1.0 + std::abs(v)), EvalMethod::continuation, false};
  }

  // Annulus around the unit circle: try the two composite transformations.
  const double m_rr = 1.0 / m_refl;          // 1/(1-z)
  const double m_l2 = m_refl / m_id;         // (z-1)/z == 1 - 1/z
  if (m_rr <= R && m_rr <= m_l2) {
    // Reflection, then inversion applied to Li2(1-z).
    auto s = li2_series(1.0 / (1.0 - z));
    Cplx li2_refl = -s.sum - kPi2_6 - 0.5 * sq(std::log(z - 1.0));
    Cplx v = kPi2_6 - std::log(z) * std::log(1.0 - z) - li2_refl;
    return {v, s.err + 8e-16 * (1.0 + std::abs(v)), EvalMethod::continuation, false};
  }
  if (m_l2 <= R) {
    // Inversion, then reflection applied to Li2(1/z).
    Cplx w = 1.0 / z;
    auto s = li2_series(1.0 - w);
    Cplx li2_w = kPi2_6 - std::log(w) * std::log(1.0 - w) - s.sum;
    Cplx v = -li2_w - kPi2_6 - 0.5 * sq(std::log(-z));
    return {v, s.err + 8e-16 * (1.0 + std::abs(v)), EvalMethod::continuation, false};
  }

  // Neighbourhood of exp(+-i*pi/3): the whole six-element orbit has modulus
  // near 1, so no identity reaches the series disc.  |u| < 1.7 here.
  Cplx u = -std::log(1.0 - z);
  auto s = li2_log_series(u);
  return {s.sum, s.err, EvalMethod::continuation, false};
}

namespace {

// True iff sigma is within absolute 1e-12 of n + 1/2 for integer n.
bool near_half_odd(double sigma) {
  double frac = sigma - std::floor(sigma);
  return std::abs(frac - 0.5) < 1e-12;
}

}  // namespace

EvalResult big_f(ComplexPoint s, int genus) {
  if (genus < 2) throw ConfigError("big_f: genus must be at least 2");
  if (s.t == 0.0 && near_half_odd(s.sigma))
    throw DomainError("big_f: tan(pi*v) pole at half-odd integer " + std::to_string(s.sigma));
  if (s.t < 0.0) {
    EvalResult r = big_f(s.conj(), genus);
    r.value = std::conj(r.value);
    r.method = EvalMethod::reflection;
    return r;
  }

  // Real axis taken as the limit from above; the tiny imaginary nudge fixes
  // the branch of log(1+z) and Li2(-z) without moving the double value.
  const Cplx ss(s.sigma, s.t == 0.0 ? 1e-300 : s.t);
  const double A = 4.0 * kPi * (genus - 1);

  const double decay = std::exp(-2.0 * kPi * ss.imag());
  const Cplx z = decay * Cplx(std::cos(2.0 * kPi * ss.real()), std::sin(2.0 * kPi * ss.real()));

  EvalResult d = li2(-z);
  const Cplx L = std::log(1.0 + z);
  const Cplx F = A * (Cplx(0.0, 0.5) * ss * ss - ss * L / kPi +
                      Cplx(0.0, 0.5 / (kPi * kPi)) * d.value + Cplx(0.0, 1.0 / 24.0));
  double scale = std::abs(ss) * std::abs(ss) * 0.5 + std::abs(ss) * std::abs(L) / kPi + 0.1;
  double err = A * (d.abs_error_bound / (2.0 * kPi * kPi) + 4e-16 * scale) + 4e-16 * std::abs(F);
  return {F, err, EvalMethod::continuation, false};
}

EvalResult x_factor(ComplexPoint s, int genus) {
  if (genus < 2) throw ConfigError("x_factor: genus must be at least 2");
  if (s.t == 0.0) {
    double n = std::round(s.sigma);
    if (std::abs(s.sigma - n) < 1e-12) {
      if (n >= 1.0)
        throw DomainError("x_factor: pole at positive integer s = " + std::to_string((long)n));
      // Trivial zero of order (2g-2)(2n+1) at s = -n (order 2g-1 at s = 0).
      return {Cplx(0.0, 0.0), 0.0, EvalMethod::continuation, false};
    }
  }
  EvalResult F = big_f({s.sigma - 0.5, s.t}, genus);
  if (std::abs(F.value.real()) > 700.0) return {F.value, F.abs_error_bound, F.method, true};
  Cplx v = std::exp(F.value);
  return {v, std::abs(v) * std::expm1(F.abs_error_bound), F.method, false};
}

EvalResult x_asymptotic(ComplexPoint s, int genus) {
  if (genus < 2) throw ConfigError("x_asymptotic: genus must be at least 2");
  if (s.t < 1.0)
    throw RegionError("x_asymptotic: outside asymptotic region (t >= 1 required)");
  const Cplx w(s.sigma - 0.5, s.t);
  const Cplx main = Cplx(0.0, 2.0 * kPi * (genus - 1)) * w * w + Cplx(0.0, kPi * (genus - 1) / 6.0);
  const double d = std::abs(s.sigma - 0.5);
  // Remainder shape t + (sigma-1/2)^2 + |sigma-1/2| t, all damped by
  // exp(-2*pi*t); the constant 10 is calibrated against the exact F with a
  // factor-2 margin over the measured supremum.
  const double bound = 10.0 * (genus - 1) * (s.t + d * d + d * s.t) * std::exp(-2.0 * kPi * s.t);
  if (std::abs(main.real()) > 700.0) return {main, bound, EvalMethod::asymptotic, true};
  Cplx v = std::exp(main);
  return {v, std::abs(v) * std::expm1(bound), EvalMethod::asymptotic, false};
}

namespace {

// log of the product form of 1/Gamma_2(w+1) truncated at N factors, with an
// Euler-Maclaurin correction for the discarded tail; *bound receives the
// magnitude of the last correction term plus an accumulation allowance.
Cplx log_recip_gamma2(Cplx w, long N, double* bound) {
  const Cplx w2 = w * w;
  const Cplx w3 = w2 * w;
  CSum acc;

  // Below n0 the cancellation in n*log(1+w/n) + w^2/(2n) - w is mild.
  const long n0 = std::min<long>(N, std::max<long>(16, static_cast<long>(4.0 * std::abs(w)) + 1));
  for (long n = 1; n <= n0; ++n) {
    double dn = static_cast<double>(n);
    acc.add(dn * std::log(1.0 + w / dn) + w2 / (2.0 * dn) - w);
  }
  // Beyond n0, the same summand via its own series sum_{k>=3} (-1)^{k+1} w^k/(k n^{k-1}).
  for (long n = n0 + 1; n <= N; ++n) {
    double dn = static_cast<double>(n);
    Cplx x = w / dn;
    Cplx xk = x * x * x;
    Cplx inner(0.0, 0.0);
    double axk = std::abs(xk);
    for (int k = 3; k < 64; ++k) {
      inner += ((k & 1) ? 1.0 : -1.0) * xk / static_cast<double>(k);
      xk *= x;
      axk *= std::abs(x);
      // The summand carries a factor n, so cut on the contribution n*|x|^{k+1},
      // not on |x|^{k+1} alone; otherwise the dropped tails grow with n and the
      // N vs 2N agreement check picks up their sum.
      if (axk * dn < 1e-21) break;
    }
    acc.add(dn * inner);
  }
  // Tail over n > N through the (N+1)^-2 order.
  const double Np = static_cast<double>(N) + 1.0;
  const Cplx correction = (w3 / 6.0 - w3 * w / 8.0) / (Np * Np);
  acc.add(w3 / (3.0 * Np) + correction);
  *bound = std::abs(correction) + 2e-15 * (1.0 + std::abs(acc.sum));

  const double log2pi = std::log(2.0 * kPi);
  return w / 2.0 * log2pi - (euler_gamma + 1.0) / 2.0 * w2 - w / 2.0 + acc.sum;
}

}  // namespace

EvalResult gamma2(Cplx s, long trunc) {
  if (trunc < 10) throw ConfigError("gamma2: truncation below 10 factors");
  if (s.imag() == 0.0) {
    double n = std::round(s.real());
    if (std::abs(s.real() - n) < 1e-12 && n <= 0.0)
      throw DomainError("gamma2: pole at non-positive integer s = " + std::to_string((long)n));
  }
  const Cplx w = s - 1.0;
  double b1 = 0.0, b2 = 0.0;
  const Cplx l1 = log_recip_gamma2(w, trunc, &b1);
  const Cplx l2 = log_recip_gamma2(w, 2 * trunc, &b2);
  if (std::abs(l1 - l2) > std::max(b1, 1e-12 * (1.0 + std::abs(l1)))) {
    char msg[96];
    std::snprintf(msg, sizeof msg, "gamma2: non-converged product (doubling check moved by %.3e)",
                  std::abs(l1 - l2));
    throw ConvergenceError(msg);
  }
  const Cplx lg = -l1;  // log Gamma_2(s)
  if (std::abs(lg.real()) > 700.0) return {lg, b1, EvalMethod::product, true};
  Cplx v = std::exp(lg);
  return {v, std::abs(v) * std::expm1(b1), EvalMethod::product, false};
}

}  // namespace szf
