#pragma once

// Levi-form analysis: discrete subharmonicity checks on rectangles, the
// conical bump h~ = h - eta chi_{S_a1 \ S_a} Re F with its estimate chain,
// and the finite-type threshold oracles.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "sectorlab/errors.hpp"
#include "sectorlab/funcpair.hpp"
#include "sectorlab/hypersurface.hpp"
#include "sectorlab/sector.hpp"

namespace sectorlab {

struct Region {
  double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;

  double dist_to_origin() const {
    const double dx = std::max({x0, 0.0, -x1});
    const double dy = std::max({y0, 0.0, -y1});
    return std::hypot(dx, dy);
  }
};

struct LeviReport {
  Region region;
  int n = 0;
  double step_x = 0.0, step_y = 0.0;
  double scale = 0.0;          // max |h| over the grid
  double min_laplacian = 0.0;  // min of the 5-point stencil over interior nodes
  complexd argmin{0.0, 0.0};
  int violation_count = 0;
  std::vector<complexd> violation_points;  // capped
  double stencil_consistency = 0.0;        // worst probe |stencil-closed|/|closed|
  // estimate-chain constants, filled by the cone-bump flow
  double levi_domination_min = 0.0;
  double cutoff_d1_bound = 0.0;
  double cutoff_d2_bound = 0.0;
};

// 5-point stencil Laplacian over an n x n grid on the region. Violations are
// interior nodes with stencil value < -violation_tol * scale.
inline LeviReport laplacian_grid(const HypersurfaceModel& model, Region region,
                                 int n, double r, double violation_tol = 1e-8) {
  if (!(region.x1 > region.x0 && region.y1 > region.y0))
    throw std::invalid_argument("laplacian_grid: empty region");
  if (n < 5) throw std::invalid_argument("laplacian_grid: need n >= 5");
  LeviReport rep;
  rep.region = region;
  rep.n = n;
  rep.step_x = (region.x1 - region.x0) / (n - 1);
  rep.step_y = (region.y1 - region.y0) / (n - 1);
  const double step = std::max(rep.step_x, rep.step_y);
  if (region.dist_to_origin() < 2.0 * step)
    throw std::invalid_argument(
        "laplacian_grid: region must avoid the origin by at least 2 grid steps");

  std::vector<double> h(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const complexd z(region.x0 + i * rep.step_x, region.y0 + j * rep.step_y);
      h[static_cast<std::size_t>(i) * n + j] = model.value(z, r);
      rep.scale = std::max(rep.scale, std::abs(h[static_cast<std::size_t>(i) * n + j]));
    }

  // probe: the stencil must reproduce the closed-form Laplacian to 1%
  // wherever the latter is appreciable
  double worst_probe = 0.0;
  for (int pi = 1; pi <= 3; ++pi)
    for (int pj = 1; pj <= 3; ++pj) {
      const int i = pi * (n - 1) / 4, j = pj * (n - 1) / 4;
      if (i < 1 || j < 1 || i > n - 2 || j > n - 2) continue;
      const complexd z(region.x0 + i * rep.step_x, region.y0 + j * rep.step_y);
      const double closed = model.laplacian(z, r);
      const double sten =
          (h[(i + 1) * static_cast<std::size_t>(n) + j] +
           h[(i - 1) * static_cast<std::size_t>(n) + j] - 2.0 * h[i * static_cast<std::size_t>(n) + j]) /
              (rep.step_x * rep.step_x) +
          (h[i * static_cast<std::size_t>(n) + j + 1] + h[i * static_cast<std::size_t>(n) + j - 1] -
           2.0 * h[i * static_cast<std::size_t>(n) + j]) /
              (rep.step_y * rep.step_y);
      if (std::abs(closed) > 1e-6 * std::max(rep.scale, 1e-300))
        worst_probe = std::max(worst_probe, std::abs(sten - closed) / std::abs(closed));
    }
  rep.stencil_consistency = worst_probe;
  if (worst_probe > 0.01)
    throw std::invalid_argument(
        "laplacian_grid: stencil disagrees with closed-form Laplacian by > 1%; refine the grid");

  rep.min_laplacian = std::numeric_limits<double>::infinity();
  const double tol_abs = violation_tol * rep.scale;
  for (int i = 1; i < n - 1; ++i)
    for (int j = 1; j < n - 1; ++j) {
      const double sten =
          (h[(i + 1) * static_cast<std::size_t>(n) + j] +
           h[(i - 1) * static_cast<std::size_t>(n) + j] - 2.0 * h[i * static_cast<std::size_t>(n) + j]) /
              (rep.step_x * rep.step_x) +
          (h[i * static_cast<std::size_t>(n) + j + 1] + h[i * static_cast<std::size_t>(n) + j - 1] -
           2.0 * h[i * static_cast<std::size_t>(n) + j]) /
              (rep.step_y * rep.step_y);
      const complexd z(region.x0 + i * rep.step_x, region.y0 + j * rep.step_y);
      if (sten < rep.min_laplacian) {
        rep.min_laplacian = sten;
        rep.argmin = z;
      }
      if (sten < -tol_abs) {
        ++rep.violation_count;
        if (rep.violation_points.size() < 16) rep.violation_points.push_back(z);
      }
    }
  return rep;
}

// Samples of the annular cone alpha*pi/2 < |arg F| < alpha1*pi/2, generated by
// inverting arg F at log-spaced x.
inline std::vector<complexd> annular_cone_samples(const FunctionPair& pair,
                                                  double alpha, double alpha1,
                                                  double x_lo, double x_hi,
                                                  int nx = 24, int nphi = 12) {
  std::vector<complexd> out;
  const double A = alpha * std::numbers::pi / 2.0;
  const double A1 = alpha1 * std::numbers::pi / 2.0;
  for (double x : log_space(x_lo, x_hi, nx)) {
    for (int i = 0; i < nphi; ++i) {
      const double phi = A + (A1 - A) * (i + 0.5) / nphi;
      double psi = 0.0;
      if (pair.kind == PairKind::Power) {
        psi = phi / (2.0 * pair.m);
      } else {
        // solve r^{-b} sin(b psi) = phi with r = x / cos(psi)
        const double b = pair.a;
        psi = 0.0;
        for (int it = 0; it < 60; ++it) {
          const double rb = std::pow(x / std::cos(psi), b);
          const double s = std::min(1.0, phi * rb);
          const double next = std::asin(s) / b;
          if (std::abs(next - psi) < 1e-15) {
            psi = next;
            break;
          }
          psi = next;
        }
      }
      for (double sign : {1.0, -1.0}) {
        const complexd z = x * complexd(1.0, sign * std::tan(psi));
        const complexd F = pair.eval(Which::F, 0, z);
        if (std::abs(F) == 0.0) continue;
        const double c = F.real() / std::abs(F);
        if (c < std::cos(A) && c > std::cos(A1)) out.push_back(z);
      }
    }
  }
  return out;
}

// (2.1bis): min over samples of Re F / |F|; expected >= cos(alpha1 pi / 2).
inline double check_cone_comparability(const FunctionPair& pair, double /*alpha1*/,
                                       std::span<const complexd> samples) {
  double mn = std::numeric_limits<double>::infinity();
  for (complexd z : samples) {
    const complexd F = pair.eval(Which::F, 0, z);
    const double aF = std::abs(F);
    if (aF == 0.0) continue;
    mn = std::min(mn, F.real() / aF);
  }
  return mn;
}

// Levi domination constant: min over samples of (dz dzbar h) |F| / |dz F|^2.
// A strictly positive min certifies dzdzbar h >~ |dz F|^2 / |F| on the cone.
inline double check_levi_domination(const HypersurfaceModel& model,
                                  const FunctionPair& pair, double /*alpha*/,
                                  double /*alpha1*/,
                                  std::span<const complexd> samples, double r) {
  double mn = std::numeric_limits<double>::infinity();
  for (complexd z : samples) {
    const double ddbar = 0.25 * model.laplacian(z, r);
    const double aF = std::abs(pair.eval(Which::F, 0, z));
    const double d1F = std::abs(pair.eval(Which::F, 1, z));
    if (d1F == 0.0) continue;
    mn = std::min(mn, ddbar * aF / (d1F * d1F));
  }
  return mn;
}

struct ConeBumpSpec {
  FunctionPair pair;
  double alpha = 0.5;
  double alpha1 = 0.8;
  double eta = 0.0;
  // sampling window for the annular-cone checks
  double x_lo = 0.02;
  double x_hi = 0.06;

  ConeBumpSpec(FunctionPair p, double alpha_, double alpha1_, double eta_ = 0.0)
      : pair(p), alpha(alpha_), alpha1(alpha1_), eta(eta_) {
    if (!(alpha > 0 && alpha < alpha1 && alpha1 < 1.0))
      throw std::invalid_argument("ConeBumpSpec: need 0 < alpha < alpha1 < 1");
    if (!(eta >= 0)) throw std::invalid_argument("ConeBumpSpec: eta must be >= 0");
  }
};

struct BuildBumpResult {
  HypersurfaceModel bumped;
  double levi_domination_min = 0.0;  // Levi domination constant on the sampled cone
  double cutoff_d1_bound = 0.0;     // sup |dz chi| |F| / |dz F|
  double cutoff_d2_bound = 0.0;     // sup |dzdzbar chi| |F|^2 / |dz F|^2
};

inline BuildBumpResult build_bump(const HypersurfaceModel& model,
                                  const ConeBumpSpec& spec) {
  const auto samples = annular_cone_samples(spec.pair, spec.alpha, spec.alpha1,
                                            spec.x_lo, spec.x_hi);
  const double dom =
      check_levi_domination(model, spec.pair, spec.alpha, spec.alpha1, samples, 0.0);
  if (spec.eta > 0.0 && !(dom > 0.0))
    throw std::invalid_argument(
        "build_bump: Levi domination fails on the annular cone; no admissible bump");

  double bd1 = 0.0, bd2 = 0.0;
  for (complexd z : samples) {
    const ConeCutoffEval c = cone_cutoff_eval(spec.pair, spec.alpha, spec.alpha1, z);
    const double aF = std::abs(spec.pair.eval(Which::F, 0, z));
    const double d1F = std::abs(spec.pair.eval(Which::F, 1, z));
    if (d1F == 0.0 || aF == 0.0) continue;
    bd1 = std::max(bd1, std::abs(c.dz_chi) * aF / d1F);
    bd2 = std::max(bd2, std::abs(c.dzdzbar_chi) * aF * aF / (d1F * d1F));
  }
  return BuildBumpResult{
      HypersurfaceModel::cone_bumped(model, spec.pair, spec.alpha, spec.alpha1,
                                     spec.eta),
      dom, bd1, bd2};
}

// Largest eta whose bump keeps the stencil Laplacian >= -1e-10 * scale on the
// grid; 0 when no bump is admissible there.
inline double max_admissible_eta(const HypersurfaceModel& model,
                                 const ConeBumpSpec& cone, Region region, int n,
                                 double rel_tol = 1e-3) {
  const auto min_lap_and_scale = [&](double eta, double& scale) {
    const HypersurfaceModel bumped = HypersurfaceModel::cone_bumped(
        model, cone.pair, cone.alpha, cone.alpha1, eta);
    const double sx = (region.x1 - region.x0) / (n - 1);
    const double sy = (region.y1 - region.y0) / (n - 1);
    std::vector<double> h(static_cast<std::size_t>(n) * n);
    scale = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const complexd z(region.x0 + i * sx, region.y0 + j * sy);
        h[static_cast<std::size_t>(i) * n + j] = bumped.value(z, 0.0);
        scale = std::max(scale, std::abs(h[static_cast<std::size_t>(i) * n + j]));
      }
    double mn = std::numeric_limits<double>::infinity();
    for (int i = 1; i < n - 1; ++i)
      for (int j = 1; j < n - 1; ++j) {
        const double sten =
            (h[(i + 1) * static_cast<std::size_t>(n) + j] +
             h[(i - 1) * static_cast<std::size_t>(n) + j] -
             2.0 * h[i * static_cast<std::size_t>(n) + j]) /
                (sx * sx) +
            (h[i * static_cast<std::size_t>(n) + j + 1] +
             h[i * static_cast<std::size_t>(n) + j - 1] -
             2.0 * h[i * static_cast<std::size_t>(n) + j]) /
                (sy * sy);
        mn = std::min(mn, sten);
      }
    return mn;
  };

  const auto admissible = [&](double eta) {
    double scale = 0.0;
    const double mn = min_lap_and_scale(eta, scale);
    return mn >= -1e-10 * std::max(scale, 1e-300);
  };

  if (!admissible(0.0)) return 0.0;
  double lo = 0.0, hi = 1e-6;
  while (admissible(hi)) {
    lo = hi;
    hi *= 4.0;
    if (hi > 1e9) return lo;
  }
  while (hi - lo > rel_tol * std::max(hi, 1e-12)) {
    const double mid = 0.5 * (lo + hi);
    (admissible(mid) ? lo : hi) = mid;
  }
  return lo;
}

struct FiniteTypeThresholds {
  double c_sector = std::numeric_limits<double>::quiet_NaN();
  double c_subharmonic = std::numeric_limits<double>::quiet_NaN();
  bool sector_flip_found = false;
  bool subharmonic_flip_found = false;
};

namespace detail {

template <typename Pred>
double bisect_flip(Pred&& pred, double c_true, double c_false, double tol) {
  while (std::abs(c_true - c_false) > tol) {
    const double mid = 0.5 * (c_true + c_false);
    (pred(mid) ? c_true : c_false) = mid;
  }
  return 0.5 * (c_true + c_false);
}

}  // namespace detail

// Bisection oracles for the finite-type example: the critical c for
// negativity of h on the sampled sector S_alpha and for subharmonicity on a
// punctured disc. Both orientations of c are swept; the reference values in
// the threshold table are positive, while h as written flips at negative c
// (reported as found).
inline FiniteTypeThresholds finite_type_thresholds(int m, int p, double alpha,
                                                   double tol = 1e-6) {
  FiniteTypeThresholds out;

  // sector samples: boundary + interior rays of S_alpha for F* = z^{1/2m}
  const SectorSpec spec(FunctionPair::power(m, 0.1), alpha);
  const auto thetas = log_space(1e-4, std::numbers::pi, 120);
  std::vector<complexd> sector_pts;
  for (double th : thetas)
    for (double sign : {1.0, -1.0})
      for (double sigma : {0.25, 0.5, 0.75, 1.0}) {
        const complexd tau = 1.0 - sigma * (1.0 - std::exp(complexd(0.0, sign * th)));
        sector_pts.push_back(sector_map(spec, tau));
      }

  const auto sector_negative = [&](double c) {
    const HypersurfaceModel h = HypersurfaceModel::finite_type(m, p, c);
    for (complexd z : sector_pts)
      if (!(h.value(z, 0.0) < 0.0)) return false;
    return true;
  };

  // punctured-disc samples for the subharmonicity oracle (closed-form Laplacian)
  std::vector<complexd> disc_pts;
  for (int i = 0; i < 40; ++i)
    for (int j = 0; j < 128; ++j) {
      const double rho = 0.05 + 0.45 * i / 39.0;
      const double psi = 2.0 * std::numbers::pi * (j + 0.5) / 128.0;
      disc_pts.push_back(std::polar(rho, psi));
    }
  const auto subharmonic = [&](double c) {
    const HypersurfaceModel h = HypersurfaceModel::finite_type(m, p, c);
    for (complexd z : disc_pts)
      if (h.laplacian(z, 0.0) < 0.0) return false;
    return true;
  };

  for (double orient : {-1.0, 1.0}) {
    // scan for a flip on this side
    double prev = 0.0;
    bool prev_ok_sec = sector_negative(0.0), prev_ok_sub = subharmonic(0.0);
    for (double mag = 0.5; mag <= 64.0; mag *= 2.0) {
      const double c = orient * mag;
      if (!out.sector_flip_found) {
        const bool ok = sector_negative(c);
        if (ok != prev_ok_sec) {
          out.c_sector = ok ? detail::bisect_flip(sector_negative, c, prev, tol)
                            : detail::bisect_flip(sector_negative, prev, c, tol);
          out.sector_flip_found = true;
        }
      }
      if (!out.subharmonic_flip_found) {
        const bool ok = subharmonic(c);
        if (ok != prev_ok_sub) {
          out.c_subharmonic = ok ? detail::bisect_flip(subharmonic, c, prev, tol)
                                 : detail::bisect_flip(subharmonic, prev, c, tol);
          out.subharmonic_flip_found = true;
        }
      }
      prev = c;
      prev_ok_sec = sector_negative(c);
      prev_ok_sub = subharmonic(c);
    }
    if (out.sector_flip_found && out.subharmonic_flip_found) break;
  }
  return out;
}

}  // namespace sectorlab
