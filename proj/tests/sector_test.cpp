#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "sectorlab/sector.hpp"

using namespace sectorlab;
using std::numbers::pi;

TEST_CASE("sector map point values") {
  const SectorSpec pw(FunctionPair::power(2), 1.0);
  CHECK(sector_map(pw, {0.0, 0.0}).real() ==
        doctest::Approx(std::pow(0.1, 0.25)).epsilon(1e-12));
  CHECK(sector_map(pw, {1.0, 0.0}) == complexd{0.0, 0.0});

  const SectorSpec sm(FunctionPair::exp_type(1.0), 1.5, 8);
  CHECK(sector_map(sm, {1.0, 0.0}) == complexd{0.0, 0.0});

  const SectorSpec tr(FunctionPair::power(2), 1.0, std::nullopt, {0.01, -0.02});
  CHECK(sector_map(tr, {1.0, 0.0}) == complexd{0.01, -0.02});
}

TEST_CASE("containment round trips") {
  const SectorSpec pw(FunctionPair::power(2), 1.0);
  CHECK(contains(pw, sector_map(pw, {0.5, 0.0})));
  CHECK(!contains(pw, {-0.01, 0.0}));

  const SectorSpec ex(FunctionPair::exp_type(1.0), 1.5);
  CHECK(contains(ex, sector_map(ex, {-0.9, 0.0})));

  std::mt19937 rng(5);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double r = 0.99 * std::sqrt(U(rng));
    const double phi = 2.0 * pi * U(rng);
    const complexd tau = std::polar(r, phi);
    CHECK(contains(pw, sector_map(pw, tau)));
    CHECK(contains(ex, sector_map(ex, tau)));
  }

  const SectorSpec sm(FunctionPair::power(2), 1.0, 4);
  CHECK_THROWS_AS(contains(sm, {0.1, 0.0}), unsupported_operation);
}

TEST_CASE("power-pair boundary trace is an exact cone") {
  const SectorSpec spec(FunctionPair::power(2), 1.0);
  const BoundaryTrace tr = boundary_trace(spec, 0.01, 0.1, 10);
  REQUIRE(tr.size() == 10);
  // exact per-point identity: |y|/x = tan(alpha (pi - theta) / (4m))
  for (std::size_t i = 0; i < tr.size(); ++i) {
    const double expected = std::tan((pi - tr.thetas[i]) / 8.0);
    CHECK(std::abs(tr.y(i)) / tr.x(i) == doctest::Approx(expected).epsilon(1e-12));
  }
  // the cone aperture tan(pi/8) is attained in the vertex limit
  const BoundaryTrace tiny = boundary_trace(spec, 1e-7, 3e-6, 6);
  for (std::size_t i = 0; i < tiny.size(); ++i)
    CHECK(std::abs(tiny.y(i)) / tiny.x(i) ==
          doctest::Approx(std::tan(pi / 8.0)).epsilon(5e-6));
}

TEST_CASE("trace size contract and x-window") {
  const SectorSpec spec(FunctionPair::exp_type(1.0), 1.0);
  const BoundaryTrace two = boundary_trace(spec, 0.1, 0.2, 2);
  CHECK(two.size() == 2);

  const BoundaryTrace tr = boundary_trace(spec, std::exp(-20.0), std::exp(-10.0), 20);
  for (std::size_t i = 0; i < tr.size(); ++i) {
    CHECK(tr.x(i) > 0.04);
    CHECK(tr.x(i) < 0.11);
  }
}

TEST_CASE("asymptotic fits") {
  // power pair: exact cone, exponent 1
  const SectorSpec pw(FunctionPair::power(2), 1.0);
  const PowerFit cone = asymptotic_fit(boundary_trace(pw, 1e-6, 1e-3, 40));
  CHECK(std::abs(cone.exponent - 1.0) < 1e-3);
  CHECK(cone.coefficient == doctest::Approx(std::tan(pi / 8.0)).epsilon(0.01));

  // exp pair a=1 over theta in [e^-20, e^-5] (x ~ [0.05, 0.13]): exponent
  // a+1 = 2 within 10%
  const SectorSpec ex(FunctionPair::exp_type(1.0), 1.0);
  const PowerFit f1 =
      asymptotic_fit(boundary_trace(ex, std::exp(-20.0), std::exp(-5.0), 60));
  CHECK(std::abs(f1.exponent - 2.0) < 0.2);

  // coefficient ratio between alpha = 2 and alpha = 1 over the same theta
  // window is ~2 (15%)
  const SectorSpec ex2(FunctionPair::exp_type(1.0), 2.0);
  const PowerFit f2 =
      asymptotic_fit(boundary_trace(ex2, std::exp(-20.0), std::exp(-5.0), 60));
  CHECK(f2.coefficient / f1.coefficient == doctest::Approx(2.0).epsilon(0.15));

  CHECK_THROWS_AS(asymptotic_fit(boundary_trace(pw, 0.1, 0.2, 3)),
                  std::invalid_argument);
}

TEST_CASE("double-exponential profile") {
  // alpha = 1 makes c_{alpha,x} = 1 and a single-point fit is exact
  const SectorSpec de(FunctionPair::double_exp(0.5, 1.7e-4), 1.0);
  BoundaryTrace one = boundary_trace(de, 0.5, 0.6, 2);
  one.thetas.resize(1);
  one.points.resize(1);
  one.underflow.resize(1);
  const DoubleExpProfile p1 = doubleexp_profile_check(de, one);
  CHECK(p1.points_used == 1);
  CHECK(p1.max_deviation == 0.0);

  // Across a decade of x the measured |y| does NOT stay comparable to the
  // printed profile: its factor e^{-e^{1/x^a}} equals the boundary parameter
  // theta (up to eps) while the true |y| carries the x^{a+1} e^{-1/x^a}
  // scale times an O(1) angle, so the ratio spread grows like e^{1/x^a}.
  // The spread is recorded, not hidden.
  const BoundaryTrace tr = boundary_trace(de, 1e-280, 3.0, 120);
  const DoubleExpProfile p = doubleexp_profile_check(de, tr);
  CHECK(p.points_used > 40);
  CHECK(p.max_ratio / p.min_ratio > 3.0);

  // against the single-exponential profile x^{a+1} e^{-1/x^a} the cusp part
  // of the trace (theta <= 0.6, a decade of x) IS comparable
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (std::size_t i = 0; i < tr.size(); ++i) {
    if (tr.underflow[i] || tr.thetas[i] > 0.6) continue;
    const double x = tr.x(i);
    if (!(x > 0) || !(std::abs(tr.y(i)) > 0)) continue;
    const double inv = std::pow(x, -0.5);
    if (inv > 700.0 || std::exp(inv) > 700.0) continue;
    const double prof = std::pow(x, 1.5) * std::exp(-inv);
    const double ratio = std::abs(tr.y(i)) / prof;
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  CHECK(hi / lo < 3.0);
  CHECK(lo > 1.0);  // the observed constant is ~pi at the cusp
}

TEST_CASE("increment domination") {
  std::vector<double> thetas = log_space(1e-3, pi, 50);

  const SectorSpec pw(FunctionPair::power(2), 1.5, 8);
  const SectorSpec ex(FunctionPair::exp_type(1.0), 1.5, 4);
  double scale_pw = 0.0, scale_ex = 0.0;
  for (double th : thetas) {
    const complexd tau = std::exp(complexd(0.0, th));
    scale_pw = std::max(scale_pw, std::abs(sector_map(pw.with_nu(std::nullopt), tau)));
    scale_ex = std::max(scale_ex, std::abs(sector_map(ex.with_nu(std::nullopt), tau)));
  }
  CHECK(increment_domination(pw, thetas) >= -1e-12 * scale_pw);
  CHECK(increment_domination(ex, thetas) >= -1e-12 * scale_ex);

  // far from the cusp the smoothing shrinks the sector strictly
  const std::vector<double> far = {pi};
  CHECK(increment_domination(pw, far) > 1e-4);
}

TEST_CASE("trace csv export") {
  const SectorSpec spec(FunctionPair::power(2), 1.0);
  std::string csv;
  write_csv(boundary_trace(spec, 0.01, 0.1, 3), csv);
  CHECK(csv.rfind("theta,x,y,underflow_flag\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}
