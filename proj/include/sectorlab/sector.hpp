#pragma once

// Cusped sectors S_alpha = { F*(eps (1-tau)^alpha) : tau in the closed disc }
// and their smoothed approximants
//   F*_{alpha nu}(1-tau) = F*_alpha(1-tau+1/nu) - F*_alpha(1/nu),
// plus membership tests and the boundary asymptotics of the sector lemma.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sectorlab/errors.hpp"
#include "sectorlab/fit.hpp"
#include "sectorlab/funcpair.hpp"

namespace sectorlab {

inline std::vector<double> log_space(double lo, double hi, int n) {
  if (!(lo > 0 && hi > lo && n >= 2))
    throw std::invalid_argument("log_space: need 0 < lo < hi and n >= 2");
  std::vector<double> v(n);
  const double l0 = std::log(lo), l1 = std::log(hi);
  for (int i = 0; i < n; ++i) v[i] = std::exp(l0 + (l1 - l0) * i / (n - 1));
  return v;
}

struct SectorSpec {
  FunctionPair pair;
  double alpha = 1.5;
  std::optional<int> nu;  // absent = unsmoothed
  complexd translate{0.0, 0.0};

  SectorSpec(FunctionPair p, double alpha_, std::optional<int> nu_ = std::nullopt,
             complexd translate_ = {0.0, 0.0})
      : pair(p), alpha(alpha_), nu(nu_), translate(translate_) {
    if (!(alpha > 0)) throw std::invalid_argument("SectorSpec: alpha must be > 0");
    if (nu && *nu < 1) throw std::invalid_argument("SectorSpec: nu must be >= 1");
  }

  SectorSpec with_nu(std::optional<int> nu_) const {
    SectorSpec s = *this;
    s.nu = nu_;
    return s;
  }

  SectorSpec with_translate(complexd t) const {
    SectorSpec s = *this;
    s.translate = t;
    return s;
  }
};

// F*_alpha(1-tau) (+ translate), smoothed when nu is present. The vertex
// tau = 1 maps exactly to the translate.
inline complexd sector_map(const SectorSpec& spec, complexd tau) {
  if (std::abs(tau) > 1.0 + 1e-12)
    throw std::invalid_argument("sector_map: |tau| must be <= 1");
  if (tau == complexd{1.0, 0.0}) return spec.translate;
  const complexd w = 1.0 - tau;
  if (!spec.nu) {
    const complexd arg = spec.pair.epsilon * std::pow(w, spec.alpha);
    return spec.pair.eval(Which::Fstar, 0, arg) + spec.translate;
  }
  const double s = 1.0 / static_cast<double>(*spec.nu);
  const complexd arg = spec.pair.epsilon * std::pow(w + s, spec.alpha);
  const complexd ref = spec.pair.epsilon * std::pow(complexd(s, 0.0), spec.alpha);
  return spec.pair.eval(Which::Fstar, 0, arg) - spec.pair.eval(Which::Fstar, 0, ref) +
         spec.translate;
}

// Membership via the inverse parametrization, unsmoothed specs only. F is
// many-to-one, so membership additionally requires z to sit on the F*-branch
// (round-trip consistency), the "range region" precondition.
inline bool contains(const SectorSpec& spec, complexd z) {
  if (spec.nu)
    throw unsupported_operation("contains: smoothed sectors have no closed inverse");
  const complexd z0 = z - spec.translate;
  complexd f, back;
  try {
    f = spec.pair.eval(Which::F, 0, z0);
    back = spec.pair.eval(Which::Fstar, 0, f);
  } catch (const domain_error&) {
    return false;
  }
  if (std::abs(back - z0) > 1e-9 * std::abs(z0)) return false;
  const complexd w = std::pow(f / spec.pair.epsilon, 1.0 / spec.alpha);
  return std::abs(1.0 - w) < 1.0;
}

struct BoundaryTrace {
  const SectorSpec* spec = nullptr;  // non-owning, for downstream checks
  std::vector<double> thetas;
  std::vector<complexd> points;
  std::vector<bool> underflow;

  std::size_t size() const { return thetas.size(); }
  double x(std::size_t i) const { return points[i].real(); }
  double y(std::size_t i) const { return points[i].imag(); }
};

// Log-spaced boundary samples z_j = sector_map(1 - e^{i theta_j}).
inline BoundaryTrace boundary_trace(const SectorSpec& spec, double theta_min,
                                    double theta_max, int n) {
  if (!(theta_min > 0 && theta_min < theta_max && theta_max <= std::numbers::pi))
    throw std::invalid_argument("boundary_trace: need 0 < theta_min < theta_max <= pi");
  if (n < 2) throw std::invalid_argument("boundary_trace: need n >= 2");
  BoundaryTrace tr;
  tr.thetas.resize(n);
  tr.points.resize(n);
  tr.underflow.resize(n);
  const double l0 = std::log(theta_min), l1 = std::log(theta_max);
  for (int i = 0; i < n; ++i) {
    const double th = std::exp(l0 + (l1 - l0) * i / (n - 1));
    tr.thetas[i] = th;
    const complexd tau = std::exp(complexd(0.0, th));
    const complexd w = 1.0 - tau;
    const complexd arg = spec.pair.epsilon *
                         std::pow(w + (spec.nu ? 1.0 / *spec.nu : 0.0), spec.alpha);
    bool uf = (arg == complexd{0.0, 0.0});
    if (uf) {
      tr.points[i] = spec.translate;
    } else {
      tr.points[i] = sector_map(spec, tau);
      uf = spec.pair.underflowed(Which::Fstar, arg);
    }
    tr.underflow[i] = uf;
  }
  return tr;
}

inline void write_csv(const BoundaryTrace& tr, std::string& out) {
  char buf[128];
  out += "theta,x,y,underflow_flag\n";
  for (std::size_t i = 0; i < tr.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%d\n", tr.thetas[i],
                  tr.x(i), tr.y(i), tr.underflow[i] ? 1 : 0);
    out += buf;
  }
}

struct PowerFit {
  double exponent = 0.0;
  double coefficient = 0.0;
  double r_squared = 0.0;
};

// Least-squares regression of log|y| against log x; for a profile
// |y| ~ C x^p this returns exponent p and coefficient C.
inline PowerFit asymptotic_fit(const BoundaryTrace& tr) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < tr.size(); ++i) {
    if (tr.underflow[i]) continue;
    if (tr.x(i) > 0 && std::abs(tr.y(i)) > 0) {
      xs.push_back(tr.x(i));
      ys.push_back(std::abs(tr.y(i)));
    }
  }
  if (xs.size() < 5)
    throw std::invalid_argument("asymptotic_fit: need >= 5 usable points");
  const LinearFit f = loglog_fit(xs, ys);
  return {f.slope, std::exp(f.intercept), f.r_squared};
}

struct DoubleExpProfile {
  double K = 0.0;             // best-fit comparability constant
  double max_deviation = 0.0; // max |ratio_j - K|
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  int points_used = 0;
};

// Compares |y| on a DoubleExp trace against the profile
// c_{alpha,x} x^{a+1} e^{-1/x^a} e^{-e^{1/x^a}},  c_{alpha,x} = 1 + log(alpha)/log(-log x).
inline DoubleExpProfile doubleexp_profile_check(const SectorSpec& spec,
                                                const BoundaryTrace& tr) {
  if (spec.pair.kind != PairKind::DoubleExp)
    throw std::invalid_argument("doubleexp_profile_check: needs a DoubleExp pair");
  const double a = spec.pair.a;
  std::vector<double> ratios;
  for (std::size_t i = 0; i < tr.size(); ++i) {
    if (tr.underflow[i]) continue;
    const double x = tr.x(i), ay = std::abs(tr.y(i));
    if (!(x > 0) || !(x < 1.0) || !(ay > 0)) continue;
    const double inv = std::pow(x, -a);
    if (inv > 700.0 || std::exp(inv) > 700.0) continue;  // profile underflows
    const double c_ax = 1.0 + std::log(spec.alpha) / std::log(-std::log(x));
    const double profile =
        c_ax * std::pow(x, a + 1.0) * std::exp(-inv) * std::exp(-std::exp(inv));
    if (!(profile > 0)) continue;
    ratios.push_back(ay / profile);
  }
  if (ratios.empty())
    throw std::runtime_error("doubleexp_profile_check: all points underflowed");
  DoubleExpProfile r;
  r.points_used = static_cast<int>(ratios.size());
  double sum = 0.0;
  r.min_ratio = ratios.front();
  r.max_ratio = ratios.front();
  for (double v : ratios) {
    sum += v;
    r.min_ratio = std::min(r.min_ratio, v);
    r.max_ratio = std::max(r.max_ratio, v);
  }
  r.K = sum / ratios.size();
  for (double v : ratios) r.max_deviation = std::max(r.max_deviation, std::abs(v - r.K));
  return r;
}

// Min over theta of |F*_alpha(1-e^{i theta})| - |F*_{alpha nu}(1-e^{i theta})|.
// The increment chain predicts this is >= 0 up to rounding.
inline double increment_domination(const SectorSpec& spec,
                                   std::span<const double> thetas) {
  if (!spec.nu)
    throw std::invalid_argument("increment_domination: spec must carry nu");
  const SectorSpec plain = spec.with_nu(std::nullopt).with_translate({0.0, 0.0});
  const SectorSpec smooth = spec.with_translate({0.0, 0.0});
  double min_slack = std::numeric_limits<double>::infinity();
  for (double th : thetas) {
    const complexd tau = std::exp(complexd(0.0, th));
    const double slack = std::abs(sector_map(plain, tau)) - std::abs(sector_map(smooth, tau));
    min_slack = std::min(min_slack, slack);
  }
  return min_slack;
}

}  // namespace sectorlab
