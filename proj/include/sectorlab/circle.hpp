#pragma once

// Spectral harmonic analysis on the unit circle: Fourier representation of
// boundary samples, the normalized Hilbert transform T1, Poisson extension,
// radial derivatives at tau=1 and Holder-slope estimation.
//
// The grid is staggered: theta_j = 2*pi*(j+1/2)/n, so no node sits at the
// vertex theta=0; values there are recovered by exact series summation.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "sectorlab/errors.hpp"
#include "sectorlab/fft.hpp"
#include "sectorlab/fit.hpp"

namespace sectorlab {

struct CircleGrid {
  int n = 4096;

  CircleGrid() = default;
  explicit CircleGrid(int n_) : n(n_) {
    if (n < 8 || (n & (n - 1)) != 0)
      throw std::invalid_argument("CircleGrid: n must be a power of two >= 8");
  }

  double theta(int j) const {
    return 2.0 * std::numbers::pi * (static_cast<double>(j) + 0.5) / n;
  }

  // Same node angles folded to (-pi, pi].
  double theta_wrapped(int j) const {
    double t = theta(j);
    if (t > std::numbers::pi) t -= 2.0 * std::numbers::pi;
    return t;
  }

  std::vector<double> thetas() const {
    std::vector<double> t(n);
    for (int j = 0; j < n; ++j) t[j] = theta(j);
    return t;
  }

  bool operator==(const CircleGrid& o) const { return n == o.n; }
};

// Real samples on the staggered grid together with their Fourier
// coefficients c_k, |k| <= n/2 - 1 (the Nyquist bin is discarded).
class BoundarySamples {
public:
  BoundarySamples(CircleGrid grid, std::vector<double> values)
      : grid_(grid), values_(std::move(values)) {
    if (static_cast<int>(values_.size()) != grid_.n)
      throw std::invalid_argument("BoundarySamples: size mismatch with grid");
    analyze();
  }

  static BoundarySamples from_function(CircleGrid grid,
                                       const std::function<double(double)>& f) {
    std::vector<double> v(grid.n);
    for (int j = 0; j < grid.n; ++j) v[j] = f(grid.theta(j));
    return BoundarySamples(grid, std::move(v));
  }

  const CircleGrid& grid() const { return grid_; }
  int size() const { return grid_.n; }
  const std::vector<double>& values() const { return values_; }
  double value(int j) const { return values_[j]; }

  // Coefficient for signed frequency k, |k| <= n/2 - 1.
  complexd coef(int k) const {
    const int n = grid_.n;
    if (std::abs(k) >= n / 2) return {0.0, 0.0};
    return coef_[(k % n + n) % n];
  }

  // Exact series evaluation at theta = 0 (tau = 1), where the grid has no node.
  double at_vertex() const {
    complexd s{0.0, 0.0};
    for (const auto& c : coef_) s += c;
    return s.real();
  }

  // Harmonic extension evaluated at radius t < 1 and angle theta.
  double poisson(double t, double theta) const {
    if (!(t >= 0.0 && t < 1.0))
      throw std::invalid_argument("poisson: t must lie in [0, 1)");
    const int n = grid_.n;
    complexd s = coef_[0];
    for (int k = 1; k <= n / 2 - 1; ++k) {
      const double tk = std::pow(t, k);
      const complexd e(std::cos(k * theta), std::sin(k * theta));
      s += tk * (coef_[k] * e + coef_[(n - k) % n] * std::conj(e));
    }
    return s.real();
  }

  // Internal: build directly from known coefficients (band-limited synthesis).
  static BoundarySamples from_coefficients(CircleGrid grid,
                                           std::vector<complexd> coef) {
    BoundarySamples s(grid);
    s.coef_ = std::move(coef);
    s.synthesize();
    return s;
  }

private:
  explicit BoundarySamples(CircleGrid grid) : grid_(grid) {}

  void analyze() {
    const int n = grid_.n;
    std::vector<complexd> buf(values_.begin(), values_.end());
    fft_radix2(buf, /*inverse=*/false);
    coef_.assign(n, complexd{0.0, 0.0});
    for (int b = 0; b < n; ++b) {
      const int k = (b < n / 2) ? b : b - n;
      if (std::abs(k) >= n / 2) continue;  // drop the Nyquist mode
      const double ang = -std::numbers::pi * k / n;
      coef_[b] = buf[b] * complexd(std::cos(ang), std::sin(ang)) / static_cast<double>(n);
    }
  }

  void synthesize() {
    const int n = grid_.n;
    std::vector<complexd> buf(n);
    for (int b = 0; b < n; ++b) {
      const int k = (b < n / 2) ? b : b - n;
      const double ang = std::numbers::pi * k / n;
      buf[b] = coef_[b] * complexd(std::cos(ang), std::sin(ang));
    }
    fft_radix2(buf, /*inverse=*/true);
    values_.resize(n);
    for (int j = 0; j < n; ++j) values_[j] = buf[j].real() * n;
  }

  CircleGrid grid_;
  std::vector<double> values_;
  std::vector<complexd> coef_;  // bin-indexed, length n, Nyquist zeroed
};

// T1: boundary data v of Im(w) -> boundary data of Re(w), normalized so the
// result vanishes at tau = 1. For w = u + iv holomorphic on the disc,
// T1 v = u - u(1).
inline BoundarySamples hilbert_T1(const BoundarySamples& v) {
  const int n = v.grid().n;
  std::vector<complexd> out(n, complexd{0.0, 0.0});
  complexd at0{0.0, 0.0};
  for (int b = 0; b < n; ++b) {
    const int k = (b < n / 2) ? b : b - n;
    if (k == 0 || std::abs(k) >= n / 2) continue;
    const double sgn = k > 0 ? 1.0 : -1.0;
    out[b] = complexd(0.0, sgn) * v.coef(k);
    at0 += out[b];
  }
  out[0] = -at0;
  return BoundarySamples::from_coefficients(v.grid(), std::move(out));
}

// d/dt of the harmonic extension at (t=1, theta=0), computed spectrally.
// Gated by the tail-energy monitor: coefficients beyond |k| = n/4 must carry
// less than 1e-8 of the total energy, otherwise the derivative is unreliable.
inline double radial_derivative_at_1(const BoundarySamples& v,
                                     double tail_tolerance = 1e-8) {
  const int n = v.grid().n;
  double tail = 0.0, total = 0.0, deriv = 0.0;
  for (int k = 1; k <= n / 2 - 1; ++k) {
    const complexd cp = v.coef(k), cm = v.coef(-k);
    const double e = std::norm(cp) + std::norm(cm);
    total += e;
    if (k > n / 4) tail += e;
    deriv += k * (cp + cm).real();
  }
  if (total > 0.0 && tail > tail_tolerance * total)
    throw regularity_error("radial_derivative_at_1: spectral tail too heavy", tail / total);
  return deriv;
}

struct HolderSlopes {
  double slope1 = 0.0;
  double slope2 = 0.0;
};

// Log-log slopes of |first difference| and |second difference| against
// |theta| over a window near the vertex. For data ~ |theta|^s these approach
// s-1 and s-2. Constant data reports +inf sentinels.
inline HolderSlopes holder_slope(const BoundarySamples& f, double window_lo,
                                 double window_hi) {
  if (!(window_lo > 0.0 && window_hi > window_lo))
    throw std::invalid_argument("holder_slope: bad window");
  const int n = f.grid().n;
  const double inf = std::numeric_limits<double>::infinity();

  auto wrap = [](double t) {
    while (t > std::numbers::pi) t -= 2.0 * std::numbers::pi;
    while (t <= -std::numbers::pi) t += 2.0 * std::numbers::pi;
    return t;
  };

  std::vector<double> t1, d1, t2, d2;
  int in_window = 0;
  for (int j = 0; j < n; ++j) {
    const int jp = (j + 1) % n, jm = (j - 1 + n) % n;
    const double mid = std::abs(wrap(f.grid().theta(j) + std::numbers::pi / n));
    const double at = std::abs(f.grid().theta_wrapped(j));
    if (mid >= window_lo && mid <= window_hi) {
      ++in_window;
      const double d = std::abs(f.value(jp) - f.value(j));
      if (d > 0) {
        t1.push_back(mid);
        d1.push_back(d);
      }
    }
    if (at >= window_lo && at <= window_hi) {
      const double d = std::abs(f.value(jp) - 2.0 * f.value(j) + f.value(jm));
      if (d > 0) {
        t2.push_back(at);
        d2.push_back(d);
      }
    }
  }
  if (in_window < 5)
    throw std::invalid_argument("holder_slope: window holds fewer than 5 grid points");

  HolderSlopes s;
  s.slope1 = d1.size() >= 2 ? loglog_fit(t1, d1).slope : inf;
  s.slope2 = d2.size() >= 2 ? loglog_fit(t2, d2).slope : inf;
  return s;
}

// Energy fraction of strictly negative Fourier modes of w = u + iv.
// Zero for boundary values of a holomorphic disc, ~1 for anti-holomorphic data.
inline double analyticity_defect(const BoundarySamples& u,
                                 const BoundarySamples& v) {
  if (!(u.grid() == v.grid()))
    throw std::invalid_argument("analyticity_defect: grids differ");
  const int n = u.grid().n;
  double neg = 0.0, total = 0.0;
  for (int k = -(n / 2 - 1); k <= n / 2 - 1; ++k) {
    const complexd w = u.coef(k) + complexd(0.0, 1.0) * v.coef(k);
    const double e = std::norm(w);
    total += e;
    if (k < 0) neg += e;
  }
  return total > 0.0 ? neg / total : 0.0;
}

}  // namespace sectorlab
