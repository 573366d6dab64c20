#pragma once

// Bishop equation over cusped and smoothed sectors:
//   u - T1( h(z(.), 0, u) - eta * chi ) = 0
// solved by damped Picard iteration, plus the
// propagation mechanics: bump response, smoothing sweep in nu, translation
// sweep of the vertex.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sectorlab/circle.hpp"
#include "sectorlab/cutoff.hpp"
#include "sectorlab/errors.hpp"
#include "sectorlab/hypersurface.hpp"
#include "sectorlab/sector.hpp"

namespace sectorlab {

// Cut-off bump eta * chi(theta) supported near tau = -1; the support must
// keep away from the vertex (distance >= pi/4 from theta = 0).
struct BumpSpec {
  double eta = 0.0;
  double center = std::numbers::pi;
  double width = 0.5;  // half-width of the support

  BumpSpec() = default;
  BumpSpec(double eta_, double center_, double width_)
      : eta(eta_), center(center_), width(width_) {
    validate();
  }

  void validate() const {
    if (!(eta >= 0)) throw std::invalid_argument("BumpSpec: eta must be >= 0");
    if (!(width > 0)) throw std::invalid_argument("BumpSpec: width must be > 0");
    if (angular_distance(center, 0.0) - width < std::numbers::pi / 4.0)
      throw std::invalid_argument(
          "BumpSpec: support must stay at distance >= pi/4 from the vertex");
  }

  static double angular_distance(double a, double b) {
    double d = std::fmod(std::abs(a - b), 2.0 * std::numbers::pi);
    if (d > std::numbers::pi) d = 2.0 * std::numbers::pi - d;
    return d;
  }

  double chi(double theta) const {
    return CutoffProfile::value(2.0 * angular_distance(theta, center) / width);
  }

  BumpSpec with_eta(double e) const {
    BumpSpec b = *this;
    b.eta = e;
    return b;
  }
};

// (1/2pi) integral of chi(theta) / (1 - cos theta) over the bump support:
// the proof's response constant at tau = 1.
inline double bump_kernel_integral(const BumpSpec& bump) {
  const auto f = [&](double th) { return bump.chi(th) / (1.0 - std::cos(th)); };
  std::function<double(double, double, double, double, double, int)> adapt =
      [&](double a, double b, double fa, double fb, double fm, int depth) {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        const double flm = f(lm), frm = f(rm);
        const double s = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        const double sl = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const double sr = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        if (depth >= 40 || std::abs(sl + sr - s) < 1e-14 * (1.0 + std::abs(sl + sr)))
          return sl + sr + (sl + sr - s) / 15.0;
        return adapt(a, m, fa, fm, flm, depth + 1) +
               adapt(m, b, fm, fb, frm, depth + 1);
      };
  const double a = bump.center - bump.width, b = bump.center + bump.width;
  const double r = adapt(a, b, f(a), f(b), f(0.5 * (a + b)), 0);
  return r / (2.0 * std::numbers::pi);
}

struct SolveOptions {
  int n = 4096;
  double tol = 1e-11;
  int max_iter = 200;
  double damping = 1.0;
  double r_shift = 0.0;
};

struct AttachedDisc {
  SectorSpec spec;
  BumpSpec bump;
  double r_shift = 0.0;
  BoundarySamples u;
  BoundarySamples v;  // attachment value minus its value at tau = 1
  double s_at_vertex = 0.0;
  int picard_iters = 0;
  double residual = 0.0;
  double defect = 0.0;
  double dv_dt_at_1 = 0.0;
  std::vector<double> sup_changes;
};

inline AttachedDisc solve(const HypersurfaceModel& model, const SectorSpec& spec,
                          const BumpSpec& bump, const SolveOptions& opts = {}) {
  bump.validate();
  const CircleGrid grid(opts.n);
  const int n = grid.n;

  std::vector<complexd> z(n);
  std::vector<double> chi(n);
  for (int j = 0; j < n; ++j) {
    z[j] = sector_map(spec, std::exp(complexd(0.0, grid.theta(j))));
    chi[j] = bump.chi(grid.theta(j));
  }

  std::vector<double> u(n, 0.0);
  std::vector<double> data(n);
  std::vector<double> sup_changes;
  const auto fill_data = [&]() {
    for (int j = 0; j < n; ++j)
      data[j] = model.value(z[j], opts.r_shift + u[j]) - bump.eta * chi[j];
  };

  int iters = 0;
  bool converged = false;
  for (int it = 1; it <= opts.max_iter; ++it) {
    iters = it;
    fill_data();
    const BoundarySamples t1 = hilbert_T1(BoundarySamples(grid, data));
    double change = 0.0;
    for (int j = 0; j < n; ++j) {
      const double next = opts.damping * t1.value(j) + (1.0 - opts.damping) * u[j];
      change = std::max(change, std::abs(next - u[j]));
      u[j] = next;
    }
    sup_changes.push_back(change);
    if (change < opts.tol) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    const std::size_t k = sup_changes.size();
    const double factor =
        k >= 2 && sup_changes[k - 2] > 0 ? sup_changes[k - 1] / sup_changes[k - 2]
                                         : std::numeric_limits<double>::infinity();
    throw convergence_error("bishop::solve: Picard did not converge", factor);
  }

  fill_data();
  BoundarySamples u_s(grid, u);
  const BoundarySamples t1 = hilbert_T1(BoundarySamples(grid, data));
  double residual = 0.0;
  for (int j = 0; j < n; ++j)
    residual = std::max(residual, std::abs(u[j] - t1.value(j)));

  // u(1) = 0 by the T1 normalization and chi vanishes near the vertex, so the
  // attachment constant is h evaluated at the vertex image.
  const double s0 = model.value(sector_map(spec, complexd{1.0, 0.0}), opts.r_shift);
  std::vector<double> vvals(n);
  for (int j = 0; j < n; ++j) vvals[j] = data[j] - s0;
  BoundarySamples v_s(grid, vvals);

  const double defect = analyticity_defect(u_s, v_s);
  const double dv = radial_derivative_at_1(v_s);

  return AttachedDisc{spec,      bump, opts.r_shift, std::move(u_s), std::move(v_s),
                      s0,        iters, residual,     defect,         dv,
                      std::move(sup_changes)};
}

struct BumpResponse {
  double d2v_deta_dt = 0.0;  // finite-difference d/deta of dv/dt at tau=1
  double predicted = 0.0;    // (1/2pi) int chi/(1-cos) quadrature
  double delta = 0.0;
  std::vector<double> etas;
  std::vector<double> dv_values;
};

inline BumpResponse bump_response(const HypersurfaceModel& model,
                                  const SectorSpec& spec, const BumpSpec& shape,
                                  const SolveOptions& opts = {},
                                  std::optional<double> delta_opt = std::nullopt) {
  double delta;
  if (delta_opt) {
    delta = *delta_opt;
    if (!(delta > 0))
      throw std::invalid_argument("bump_response: degenerate eta family");
  } else {
    const CircleGrid grid(opts.n);
    double scale = 0.0;
    for (int j = 0; j < grid.n; ++j) {
      const complexd zj = sector_map(spec, std::exp(complexd(0.0, grid.theta(j))));
      scale = std::max(scale, std::abs(model.value(zj, opts.r_shift)));
    }
    delta = scale > 0 ? 1e-4 * scale : 1e-4;
  }

  BumpResponse r;
  r.delta = delta;
  r.etas = {0.0, delta, 2.0 * delta};
  for (double eta : r.etas)
    r.dv_values.push_back(solve(model, spec, shape.with_eta(eta), opts).dv_dt_at_1);
  // second-order one-sided derivative in eta at 0
  r.d2v_deta_dt =
      (-3.0 * r.dv_values[0] + 4.0 * r.dv_values[1] - r.dv_values[2]) / (2.0 * delta);
  r.predicted = bump_kernel_integral(shape);
  return r;
}

struct SmoothingEntry {
  int nu = 0;
  double dv_dt_at_1 = 0.0;
  double distance_to_limit = 0.0;
};

struct SmoothingSweep {
  std::vector<SmoothingEntry> entries;
  double unsmoothed_limit = 0.0;
  bool monotone_distances = true;
};

inline SmoothingSweep smoothing_sweep(const HypersurfaceModel& model,
                                      const SectorSpec& spec,
                                      std::span<const int> nus,
                                      const SolveOptions& opts = {}) {
  SmoothingSweep sw;
  sw.unsmoothed_limit =
      solve(model, spec.with_nu(std::nullopt), BumpSpec{}, opts).dv_dt_at_1;
  for (int nu : nus) {
    const double dv = solve(model, spec.with_nu(nu), BumpSpec{}, opts).dv_dt_at_1;
    sw.entries.push_back({nu, dv, std::abs(dv - sw.unsmoothed_limit)});
  }
  for (std::size_t i = 1; i < sw.entries.size(); ++i)
    if (sw.entries[i].distance_to_limit >
        sw.entries[i - 1].distance_to_limit + 1e-15)
      sw.monotone_distances = false;
  return sw;
}

struct TransversalityCertificate {
  double dv_dt = 0.0;
  double h_max_on_sector = 0.0;
  bool strict = false;  // h <= 0 on the sampled sector with a strictly negative sample
};

inline TransversalityCertificate transversality_certificate(
    const HypersurfaceModel& model, const SectorSpec& spec,
    const SolveOptions& opts = {}) {
  const auto thetas = log_space(1e-6, std::numbers::pi, 160);
  const double r_grid[] = {0.0};
  const SectorPropertyReport sp = sector_property(model, spec, thetas, r_grid);
  const AttachedDisc disc = solve(model, spec, BumpSpec{}, opts);
  TransversalityCertificate c;
  c.dv_dt = disc.dv_dt_at_1;
  c.h_max_on_sector = sp.max_h;
  c.strict = sp.max_h <= 0.0 && sp.strict_count > 0;
  return c;
}

struct SweepCell {
  complexd offset{0.0, 0.0};
  double r_shift = 0.0;
  bool ok = false;
  bool dipped = false;
  double min_dip = 0.0;
  std::string error;
};

struct TranslationSweep {
  std::vector<SweepCell> cells;
  int dipped_count = 0;
  std::vector<complexd> dipped_vertices;
};

// Solves over translated smoothed sectors and records where the disc interior
// dips below the hypersurface (s-coordinate < h).
inline TranslationSweep translation_sweep(const HypersurfaceModel& model,
                                          const SectorSpec& spec,
                                          std::span<const complexd> offsets,
                                          std::span<const double> r_shifts,
                                          const SolveOptions& opts = {}) {
  if (!spec.nu)
    throw std::invalid_argument("translation_sweep: spec must carry nu");
  TranslationSweep sweep;
  const double rings[] = {0.5, 0.75, 0.9};
  const int n_angles = 64;
  for (complexd off : offsets) {
    for (double rs : r_shifts) {
      SweepCell cell;
      cell.offset = off;
      cell.r_shift = rs;
      try {
        SolveOptions o = opts;
        o.r_shift = rs;
        const AttachedDisc disc = solve(model, spec.with_translate(off), BumpSpec{}, o);
        double min_dip = std::numeric_limits<double>::infinity();
        for (double t : rings) {
          for (int l = 0; l < n_angles; ++l) {
            const double phi = 2.0 * std::numbers::pi * (l + 0.5) / n_angles;
            const complexd tau = t * std::exp(complexd(0.0, phi));
            const complexd zz = sector_map(disc.spec, tau);
            const double s_coord = disc.v.poisson(t, phi) + disc.s_at_vertex;
            const double r_coord = rs + disc.u.poisson(t, phi);
            min_dip = std::min(min_dip, s_coord - model.value(zz, r_coord));
          }
        }
        cell.ok = true;
        cell.min_dip = min_dip;
        cell.dipped = min_dip < 0.0;
      } catch (const std::exception& e) {
        cell.ok = false;
        cell.error = e.what();
      }
      if (cell.ok && cell.dipped) {
        ++sweep.dipped_count;
        sweep.dipped_vertices.push_back(off);
      }
      sweep.cells.push_back(std::move(cell));
    }
  }
  return sweep;
}

// Disc boundary CSV: theta, x, y, u, v.
inline void write_csv(const AttachedDisc& disc, std::string& out) {
  char buf[160];
  out += "theta,x,y,u,v\n";
  const CircleGrid& g = disc.u.grid();
  for (int j = 0; j < g.n; ++j) {
    const complexd z = sector_map(disc.spec, std::exp(complexd(0.0, g.theta(j))));
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g\n", g.theta(j),
                  z.real(), z.imag(), disc.u.value(j), disc.v.value(j));
    out += buf;
  }
}

}  // namespace sectorlab
