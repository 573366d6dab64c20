#pragma once

// Closed-form calculus for the inverse pairs (F, F*):
//   Power     F = z^{2m},            F* = z^{1/2m}
//   Exp       F = e^{-1/z^a},        F* = (-log z)^{-1/a}
//   DoubleExp F = e^{-e^{1/z^a}},    F* = (log(-log z))^{-1/a}
// All branches are principal, arg in (-pi, pi]. Every call enforces the
// pair's validity domain; silent branch-cut crossings would corrupt every
// downstream module.

#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include "sectorlab/errors.hpp"

namespace sectorlab {

enum class PairKind { Power, Exp, DoubleExp };
enum class Which { F, Fstar };

struct FunctionPair {
  PairKind kind = PairKind::Power;
  int m = 2;          // Power: F = z^{2m}
  double a = 1.0;     // Exp / DoubleExp exponent
  double epsilon = 0.1;

  static FunctionPair power(int m, double eps = 0.1) {
    if (m < 1) throw std::invalid_argument("FunctionPair: m must be >= 1");
    if (!(eps > 0)) throw std::invalid_argument("FunctionPair: epsilon must be > 0");
    FunctionPair p;
    p.kind = PairKind::Power;
    p.m = m;
    p.epsilon = eps;
    return p;
  }

  static FunctionPair exp_type(double a, double eps = 0.1) {
    if (!(a > 0)) throw std::invalid_argument("FunctionPair: a must be > 0");
    if (!(eps > 0)) throw std::invalid_argument("FunctionPair: epsilon must be > 0");
    FunctionPair p;
    p.kind = PairKind::Exp;
    p.a = a;
    p.epsilon = eps;
    return p;
  }

  static FunctionPair double_exp(double a, double eps = 0.1) {
    if (!(a > 0)) throw std::invalid_argument("FunctionPair: a must be > 0");
    if (!(eps > 0)) throw std::invalid_argument("FunctionPair: epsilon must be > 0");
    FunctionPair p;
    p.kind = PairKind::DoubleExp;
    p.a = a;
    p.epsilon = eps;
    return p;
  }

  // True where the DoubleExp guard replaces F by its flat-zero extension.
  bool underflowed(Which which, complexd z) const {
    if (kind != PairKind::DoubleExp || which != Which::F) return false;
    if (!(z.real() > 0)) return false;
    return (std::pow(z, -a)).real() > 700.0;
  }

  complexd eval(Which which, int order, complexd z) const {
    if (order < 0 || order > 2)
      throw std::invalid_argument("FunctionPair::eval: order must be 0, 1 or 2");
    switch (kind) {
      case PairKind::Power:
        return which == Which::F ? power_F(order, z) : power_Fstar(order, z);
      case PairKind::Exp:
        return which == Which::F ? exp_F(order, z) : exp_Fstar(order, z);
      case PairKind::DoubleExp:
        return which == Which::F ? dexp_F(order, z) : dexp_Fstar(order, z);
    }
    throw std::logic_error("FunctionPair::eval: unreachable");
  }

private:
  static bool on_cut(complexd z) { return z.imag() == 0.0 && z.real() <= 0.0; }

  complexd power_F(int order, complexd z) const {
    const double e = 2.0 * m;
    switch (order) {
      case 0: return std::pow(z, e);
      case 1: return e * std::pow(z, e - 1.0);
      default: return e * (e - 1.0) * std::pow(z, e - 2.0);
    }
  }

  complexd power_Fstar(int order, complexd z) const {
    if (z == complexd{0.0, 0.0}) {
      if (order == 0) return {0.0, 0.0};
      throw domain_error("Power F*: derivative singular at the origin", z);
    }
    if (on_cut(z)) throw domain_error("Power F*: branch cut (-inf, 0]", z);
    const double e = 1.0 / (2.0 * m);
    switch (order) {
      case 0: return std::pow(z, e);
      case 1: return e * std::pow(z, e - 1.0);
      default: return e * (e - 1.0) * std::pow(z, e - 2.0);
    }
  }

  complexd exp_F(int order, complexd z) const {
    if (!(z.real() > 0.0)) throw domain_error("Exp F: requires Re z > 0", z);
    const complexd t = std::pow(z, -a);
    const complexd f = std::exp(-t);
    switch (order) {
      case 0: return f;
      case 1: return a * std::pow(z, -a - 1.0) * f;
      default:
        return f * (a * a * std::pow(z, -2.0 * a - 2.0) -
                    a * (a + 1.0) * std::pow(z, -a - 2.0));
    }
  }

  complexd exp_Fstar(int order, complexd z) const {
    if (z == complexd{0.0, 0.0} || on_cut(z))
      throw domain_error("Exp F*: requires z off (-inf, 0]", z);
    if (!(std::abs(z) < 1.0))
      throw domain_error("Exp F*: requires |z| < 1", z);
    const complexd u = -std::log(z);
    switch (order) {
      case 0: return std::pow(u, -1.0 / a);
      case 1: return std::pow(u, -1.0 / a - 1.0) / (a * z);
      default:
        return std::pow(u, -1.0 / a - 1.0) / (a * z * z) *
               (-1.0 + (1.0 + 1.0 / a) / u);
    }
  }

  complexd dexp_F(int order, complexd z) const {
    if (!(z.real() > 0.0)) throw domain_error("DoubleExp F: requires Re z > 0", z);
    const complexd t = std::pow(z, -a);
    if (t.real() > 700.0) return {0.0, 0.0};  // flat-zero extension, flagged
    const complexd E = std::exp(t);
    const complexd f = std::exp(-E);
    switch (order) {
      case 0: return f;
      case 1: return a * f * E * std::pow(z, -a - 1.0);
      default:
        return a * f * E *
               (a * (E - 1.0) * std::pow(z, -2.0 * a - 2.0) -
                (a + 1.0) * std::pow(z, -a - 2.0));
    }
  }

  complexd dexp_Fstar(int order, complexd z) const {
    if (z == complexd{0.0, 0.0} || on_cut(z))
      throw domain_error("DoubleExp F*: requires z off (-inf, 0]", z);
    if (!(std::abs(z) < 1.0))
      throw domain_error("DoubleExp F*: requires |z| < 1", z);
    const complexd u = -std::log(z);
    if (!(std::abs(u) > 1.0))
      throw domain_error("DoubleExp F*: requires |log z| > 1", z);
    const complexd w = std::log(u);
    const complexd wp = -1.0 / (z * u);
    switch (order) {
      case 0: return std::pow(w, -1.0 / a);
      case 1: return (-1.0 / a) * std::pow(w, -1.0 / a - 1.0) * wp;
      default: {
        const complexd wpp = (1.0 - 1.0 / u) / (z * z * u);
        return (-1.0 / a) * ((-1.0 / a - 1.0) * std::pow(w, -1.0 / a - 2.0) * wp * wp +
                             std::pow(w, -1.0 / a - 1.0) * wpp);
      }
    }
  }
};

// Max over samples of |F(F*(z)) - z| / |z|.
inline double check_inverse(const FunctionPair& pair,
                            std::span<const complexd> samples) {
  double worst = 0.0;
  for (complexd z : samples) {
    const complexd back = pair.eval(Which::F, 0, pair.eval(Which::Fstar, 0, z));
    worst = std::max(worst, std::abs(back - z) / std::abs(z));
  }
  return worst;
}

// Sup over samples of |G''(z)| |z| / |G'(z)|, the constant in |d2 G| <~ |dG|/|z|.
inline double check_derivative_ratio(const FunctionPair& pair, Which which,
                                     std::span<const complexd> samples) {
  double sup = 0.0;
  for (complexd z : samples) {
    const complexd d1 = pair.eval(which, 1, z);
    const complexd d2 = pair.eval(which, 2, z);
    if (std::abs(d1) == 0.0) continue;
    sup = std::max(sup, std::abs(d2) * std::abs(z) / std::abs(d1));
  }
  return sup;
}

struct IncrementViolation {
  double theta;
  double sigma;
  char component;  // 'R' or 'I'
  char property;   // 's' = sign change, 'm' = |.| not decreasing
};

struct IncrementReport {
  int sign_violations = 0;
  int monotonicity_violations = 0;
  std::vector<IncrementViolation> details;
  bool ok() const { return sign_violations == 0 && monotonicity_violations == 0; }
};

// Checks, for each theta, that sigma -> d/dsigma Re F*_alpha(sigma (1-e^{i theta}))
// and the Im counterpart (i) keep one sign and (ii) decrease in absolute value.
inline IncrementReport check_increment_condition(const FunctionPair& pair,
                                                 double alpha,
                                                 std::span<const double> thetas,
                                                 std::span<const double> sigmas) {
  if (!(alpha > 0)) throw std::invalid_argument("increment: alpha must be > 0");
  IncrementReport rep;
  for (double th : thetas) {
    if (th == 0.0) throw std::invalid_argument("increment: theta must be nonzero");
    const complexd w = 1.0 - std::exp(complexd(0.0, th));
    const complexd wa = std::pow(w, alpha);
    double prev_re = 0.0, prev_im = 0.0;
    int sign_re = 0, sign_im = 0;
    bool first = true;
    for (double s : sigmas) {
      const complexd arg = pair.epsilon * std::pow(s, alpha) * wa;
      const complexd d = pair.eval(Which::Fstar, 1, arg) * pair.epsilon * alpha *
                         std::pow(s, alpha - 1.0) * wa;
      const double re = d.real(), im = d.imag();
      const double tol = 1e-12 * (std::abs(re) + std::abs(im));
      if (!first) {
        if (sign_re != 0 && re * sign_re < -tol) {
          ++rep.sign_violations;
          rep.details.push_back({th, s, 'R', 's'});
        }
        if (sign_im != 0 && im * sign_im < -tol) {
          ++rep.sign_violations;
          rep.details.push_back({th, s, 'I', 's'});
        }
        if (std::abs(re) > prev_re + tol) {
          ++rep.monotonicity_violations;
          rep.details.push_back({th, s, 'R', 'm'});
        }
        if (std::abs(im) > prev_im + tol) {
          ++rep.monotonicity_violations;
          rep.details.push_back({th, s, 'I', 'm'});
        }
      }
      if (sign_re == 0 && re != 0.0) sign_re = re > 0 ? 1 : -1;
      if (sign_im == 0 && im != 0.0) sign_im = im > 0 ? 1 : -1;
      prev_re = std::abs(re);
      prev_im = std::abs(im);
      first = false;
    }
  }
  return rep;
}

}  // namespace sectorlab
