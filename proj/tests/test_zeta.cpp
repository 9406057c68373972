#include "szf/zeta.hpp"

#include <cmath>
#include <random>

#include <doctest.h>

using namespace szf;

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;

const GroupPresentation& bolza() {
  static GroupPresentation g = load_group(SZF_SOURCE_DATA_DIR "/bolza.json");
  return g;
}

const LengthSpectrum& spec10() {
  static LengthSpectrum s = build_spectrum(bolza(), 10);
  return s;
}

const ZetaEvaluator& zeta10() {
  static ZetaEvaluator z(spec10(), bolza().genus);
  return z;
}

}  // namespace

TEST_CASE("constructor validates its inputs") {
  CHECK_THROWS_AS(ZetaEvaluator(spec10(), 1), ConfigError);
  ZetaOptions bad_k;
  bad_k.k_cutoff = -1;
  CHECK_THROWS_AS(ZetaEvaluator(spec10(), 2, bad_k), ConfigError);
  ZetaOptions bad_m;
  bad_m.margin = 0.0;
  CHECK_THROWS_AS(ZetaEvaluator(spec10(), 2, bad_m), ConfigError);
  CHECK_THROWS_AS(ZetaEvaluator(LengthSpectrum{}, 2), ConfigError);

  LengthSpectrum unsorted = spec10();
  std::swap(unsorted.classes.front(), unsorted.classes.back());
  CHECK_THROWS_AS(ZetaEvaluator(unsorted, 2), ConfigError);

  LengthSpectrum imprimitive = spec10();
  for (auto& c : imprimitive.classes) c.primitive = false;
  CHECK_THROWS_AS(ZetaEvaluator(imprimitive, 2), ConfigError);
}

TEST_CASE("evaluator exposes the spectrum it was built from") {
  const ZetaEvaluator& z = zeta10();
  CHECK(z.genus() == 2);
  CHECK(z.margin() == 0.05);
  CHECK(z.min_norm() == spec10().min_norm);
  CHECK(z.line_count() > 100);
  CHECK(z.line_count() < spec10().classes.size());
  CHECK(z.spectrum().classes.size() == spec10().classes.size());
}

TEST_CASE("product side approaches 1 at the right-growth rate") {
  const ZetaEvaluator& z = zeta10();
  for (int sigma = 3; sigma <= 10; ++sigma) {
    auto e = z.z_product({static_cast<double>(sigma), 0.0});
    REQUIRE(!e.log_scale);
    double lhs = std::abs(e.value - Cplx(1.0, 0.0));
    double rhs = 4.0 * std::pow(z.min_norm(), -sigma);
    CAPTURE(sigma);
    CHECK(lhs <= rhs);
  }
}

TEST_CASE("product values at conjugate points are conjugate") {
  const ZetaEvaluator& z = zeta10();
  auto a = z.z_product({3.0, 1.7});
  auto b = z.z_product({3.0, -1.7});
  CHECK(std::abs(b.value - std::conj(a.value)) < 1e-14);
  auto c = z.z_continued({-3.0, 0.4});
  auto d = z.z_continued({-3.0, -0.4});
  CHECK(std::abs(d.value - std::conj(c.value)) < 1e-12 * std::abs(c.value));
}

TEST_CASE("truncation error bound survives a deeper inner cutoff") {
  ZetaOptions deep;
  deep.k_cutoff = 40;
  ZetaEvaluator wide(spec10(), bolza().genus, deep);
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> us(1.5, 6.0), ut(-5.0, 5.0);
  for (int i = 0; i < 20; ++i) {
    ComplexPoint s{us(rng), ut(rng)};
    auto base = zeta10().z_product(s);
    auto more = wide.z_product(s);
    CAPTURE(s.sigma);
    CAPTURE(s.t);
    CHECK(std::abs(base.value - more.value) <= base.abs_error_bound);
  }
}

TEST_CASE("left side blows up along the negative axis") {
  const ZetaEvaluator& z = zeta10();
  double prev = -1e300;
  for (int n = 3; n <= 6; ++n) {
    double mn = 1e300;
    for (int i = 0; i < 64; ++i) {
      double th = kTwoPi * i / 64;
      ComplexPoint p{-static_cast<double>(n) + 0.25 * std::cos(th), 0.25 * std::sin(th)};
      mn = std::min(mn, z.z_continued(p).log_modulus());
    }
    CAPTURE(n);
    CHECK(mn > prev);
    prev = mn;
  }
  // On |s+5| = 1/2 the modulus already clears three decades.
  double mn = 1e300;
  for (int i = 0; i < 256; ++i) {
    double th = kTwoPi * i / 256;
    ComplexPoint p{-5.0 + 0.5 * std::cos(th), 0.5 * std::sin(th)};
    mn = std::min(mn, z.z_continued(p).log_modulus());
  }
  CHECK(mn > std::log(1e3));
}

TEST_CASE("continuation is exactly zero at negative integers") {
  auto e = zeta10().z_continued({-1.0, 0.0});
  CHECK(e.value == Cplx(0.0, 0.0));
  CHECK(!e.log_scale);
  CHECK(e.log_modulus() == -std::numeric_limits<double>::infinity());
  CHECK(zeta10().z_continued({-4.0, 0.0}).value == Cplx(0.0, 0.0));
}

TEST_CASE("strip refusal and dispatch") {
  const ZetaEvaluator& z = zeta10();
  CHECK_THROWS_AS(z.z_product({1.02, 0.0}), RegionError);
  CHECK_THROWS_AS(z.z_continued({0.2, 1.0}), RegionError);
  CHECK_THROWS_AS(z.z_anywhere({0.5, 14.0}), RegionError);
  try {
    z.z_anywhere({0.5, 14.0});
  } catch (const RegionError& e) {
    CHECK(std::string(e.what()).find("strip not computable") != std::string::npos);
  }
  CHECK(z.z_anywhere({2.0, 0.0}).method == EvalMethod::product);
  CHECK(z.z_anywhere({-2.5, 0.3}).method == EvalMethod::continuation);
}

TEST_CASE("winding counts match the trivial-zero multiplicities") {
  const ZetaEvaluator& z = zeta10();
  for (int n = 1; n <= 3; ++n) {
    auto w = z.winding_number({{-static_cast<double>(n), 0.0}, 0.5, 64});
    long want = 2l * (2 * n + 1);  // (2g-2)(2n+1) with g = 2
    CAPTURE(n);
    CHECK(w.winding == want);
    REQUIRE(w.predicted.has_value());
    CHECK(*w.predicted == want);
    CHECK(w.max_phase_step < 1.5707963267948966);
    CHECK(std::abs(w.phase_total - kTwoPi * w.winding) < 0.05 * kTwoPi);
  }
}

TEST_CASE("winding vanishes on a zero-free disc") {
  const ZetaEvaluator& z = zeta10();
  double mn = 1e300;
  for (int i = 0; i < 64; ++i)
    for (int j = 1; j <= 4; ++j) {
      double th = kTwoPi * i / 64, r = 0.2 * j / 4;
      ComplexPoint p{-1.5 + r * std::cos(th), 10.0 + r * std::sin(th)};
      mn = std::min(mn, z.z_anywhere(p).log_modulus());
    }
  CHECK(mn > 0.0);  // no zero can hide where |Z| > 1
  auto w = z.winding_number({{-1.5, 10.0}, 0.2, 64});
  CHECK(w.winding == 0);
  CHECK(!w.predicted.has_value());
}

TEST_CASE("winding input validation") {
  const ZetaEvaluator& z = zeta10();
  CHECK_THROWS_AS(z.winding_number({{-1.0, 0.0}, -0.5, 64}), ConfigError);
  CHECK_THROWS_AS(z.winding_number({{-1.0, 0.0}, 0.5, 8}), ConfigError);
  // A contour through the zero at -1 hits the exact-zero fast path.
  CHECK_THROWS_AS(z.winding_number({{-1.5, 0.0}, 0.5, 64}), DomainError);
}

TEST_CASE("completed function multiplies in the double-gamma prefactor") {
  const ZetaEvaluator& z = zeta10();
  auto xi = z.xi_completed({3.0, 0.0});
  auto zp = z.z_product({3.0, 0.0});
  double ratio = (xi.value / zp.value).real();
  CHECK(ratio == doctest::Approx(15382.22709720487).epsilon(1e-9));
  CHECK_THROWS_AS(z.xi_completed({0.5, 0.0}), RegionError);
}

TEST_CASE("orientation convention halves only the bookkeeping multiplicity") {
  ZetaOptions unor;
  unor.orientation = OrientationMode::unoriented;
  ZetaEvaluator half(spec10(), bolza().genus, unor);
  const ZetaEvaluator& full = zeta10();
  REQUIRE(half.line_count() == full.line_count());
  CHECK(half.effective_multiplicity(0) == 4);  // systole line stores 8
  CHECK(full.effective_multiplicity(0) == 8);
  // The product ignores multiplicities either way.
  auto a = full.z_product({2.0, 0.5});
  auto b = half.z_product({2.0, 0.5});
  CHECK(a.value == b.value);
}

TEST_CASE("eigenvalue map from critical-line ordinates") {
  CHECK(eigenvalue_from_zero(0.0) == 0.25);
  CHECK(eigenvalue_from_zero(2.0) == 4.25);
  CHECK(eigenvalue_from_zero(-2.0) == 4.25);
}
