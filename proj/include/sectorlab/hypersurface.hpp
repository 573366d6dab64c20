#pragma once

// Catalogue of defining functions h(z, r) with exact first/second
// derivatives. All variants satisfy h(0,0) = 0, dh(0) = 0; |y|-dependent
// exponential terms use the flat-zero extension at y = 0.

#include <cmath>
#include <complex>
#include <memory>
#include <numbers>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "sectorlab/cutoff.hpp"
#include "sectorlab/errors.hpp"
#include "sectorlab/funcpair.hpp"
#include "sectorlab/sector.hpp"

namespace sectorlab {

enum class HOrder { value, dz, dzbar, dzdzbar };

struct HPartials {
  double h = 0.0;
  double hx = 0.0;
  double hy = 0.0;
  double lap = 0.0;

  complexd dz() const { return 0.5 * complexd(hx, -hy); }
  double dzdzbar() const { return 0.25 * lap; }
};

namespace detail {

inline double ipow(double x, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

// value/first/second derivative of e^{-1/|y|^a}, flat at y = 0.
struct FlatExp {
  double v = 0, d1 = 0, d2 = 0;
};

inline FlatExp flat_exp(double y, double a) {
  FlatExp f;
  if (y == 0.0) return f;
  const double ay = std::abs(y);
  const double inv = std::pow(ay, -a);
  if (inv > 700.0) return f;
  f.v = std::exp(-inv);
  const double sgn = y > 0 ? 1.0 : -1.0;
  f.d1 = f.v * a * std::pow(ay, -a - 1.0) * sgn;
  f.d2 = f.v * (a * a * std::pow(ay, -2.0 * a - 2.0) -
                a * (a + 1.0) * std::pow(ay, -a - 2.0));
  return f;
}

// Same for e^{-e^{1/|y|^a}}.
inline FlatExp flat_double_exp(double y, double a) {
  FlatExp f;
  if (y == 0.0) return f;
  const double ay = std::abs(y);
  const double inv = std::pow(ay, -a);
  if (inv > 700.0) return f;
  const double ein = std::exp(inv);
  f.v = std::exp(-ein);
  if (f.v == 0.0) {
    // between natural underflow and the guard the flat extension still applies
    return FlatExp{};
  }
  const double sgn = y > 0 ? 1.0 : -1.0;
  const double gp = a * ein * std::pow(ay, -a - 1.0);
  f.d1 = f.v * gp * sgn;
  f.d2 = f.v * (gp * gp - ein * (a * a * std::pow(ay, -2.0 * a - 2.0) +
                                 a * (a + 1.0) * std::pow(ay, -a - 2.0)));
  return f;
}

}  // namespace detail

// --- variants ---------------------------------------------------------------

struct ZeroModel {};

// h = |z|^{2m} + c |z|^{2m-2p} (Re z)^{2p}
struct FiniteTypeModel {
  int m = 2;
  int p = 1;
  double c = 0.0;
};

// h = e^{-1/|y|^a} - chi(y / (alpha_cut x^{a+1})) Re e^{-1/z^b},  a < b < a(a+1)
struct InfSingleExpModel {
  double a = 1.0;
  double b = 1.5;
  double alpha_cut = 1.5;
};

// h = e^{-e^{1/|y|^a}} - chi(y / D(x)) Re e^{-e^{1/z^b}},  a < b < a(a+1),
// D(x) = c_{K,x} x^{a+1} e^{-1/x^a} e^{-e^{1/x^a}}, c_{K,x} = 1 + log K / log(-log x)
struct InfDoubleExpModel {
  double a = 0.5;
  double b = 0.6;
  double alpha_cut = 1.5;
};

// h = e^{-1/|y|^a} - chi(y / x^{b+1}) Re e^{-1/z^b},  (b+1) a < b
struct TubeFailureModel {
  double a = 0.4;
  double b = 0.8;
};

enum class RePartG { F, F2, ScaledIdentity };

// h = (1 + r_coeff * r) Re g(z); closed-form discs exist for these.
struct RePartModel {
  FunctionPair pair;
  RePartG g = RePartG::F;
  double r_coeff = 0.0;
};

class HypersurfaceModel;

// h~ = base - eta * chi_cone(z) * Re F(z): the pseudoconvex bump.
struct ConeBumpedModel {
  std::shared_ptr<const HypersurfaceModel> base;
  FunctionPair pair;
  double alpha = 0.5;
  double alpha1 = 0.8;
  double eta = 0.0;
};

// Conical cut-off evaluated through cos(arg F) = Re F / |F|: equals 1 where
// |arg F| <= alpha*pi/2, vanishes where |arg F| >= alpha1*pi/2. Using the
// cosine rather than the tangent keeps chi * Re F >= 0 across Re F = 0.
struct ConeCutoffEval {
  double chi = 0.0;
  complexd dz_chi{0.0, 0.0};
  double dzdzbar_chi = 0.0;
};

inline ConeCutoffEval cone_cutoff_eval(const FunctionPair& pair, double alpha,
                                       double alpha1, complexd z) {
  ConeCutoffEval out;
  const complexd F = pair.eval(Which::F, 0, z);
  const double aF = std::abs(F);
  if (aF == 0.0) return out;  // vertex limit: flat zero
  const double cosA = std::cos(alpha * std::numbers::pi / 2.0);
  const double cosA1 = std::cos(alpha1 * std::numbers::pi / 2.0);
  const double denom = cosA - cosA1;
  const double c = F.real() / aF;
  if (c >= cosA) {
    out.chi = 1.0;
    return out;
  }
  if (c <= cosA1) return out;
  const double t = 1.0 + (cosA - c) / denom;
  const double P1 = CutoffProfile::d1(t) * (-1.0 / denom);
  const double P2 = CutoffProfile::d2(t) / (denom * denom);
  const complexd Fp = pair.eval(Which::F, 1, z);
  const double aF3 = aF * aF * aF;
  const complexd dzc =
      complexd(0.0, 1.0) * Fp * std::conj(F) * F.imag() / (2.0 * aF3);
  const double dzdzbar_c = -std::norm(Fp) * F.real() / (4.0 * aF3);
  out.chi = CutoffProfile::value(t);
  out.dz_chi = P1 * dzc;
  out.dzdzbar_chi = P2 * std::norm(dzc) + P1 * dzdzbar_c;
  return out;
}

// --- model wrapper -----------------------------------------------------------

class HypersurfaceModel {
public:
  using Variant = std::variant<ZeroModel, FiniteTypeModel, InfSingleExpModel,
                               InfDoubleExpModel, TubeFailureModel, RePartModel,
                               ConeBumpedModel>;

  static HypersurfaceModel zero() { return HypersurfaceModel(ZeroModel{}); }

  static HypersurfaceModel finite_type(int m, int p, double c) {
    if (m < 1 || p < 1 || p > m)
      throw std::invalid_argument("FiniteType requires 1 <= p <= m");
    return HypersurfaceModel(FiniteTypeModel{m, p, c});
  }

  static HypersurfaceModel inf_single_exp(double a, double b,
                                          double alpha_cut = 1.5) {
    if (!(a > 0) || !(alpha_cut > 0))
      throw std::invalid_argument("InfSingleExp requires a > 0, alpha_cut > 0");
    if (!(a < b && b < a * (a + 1.0)))
      throw std::invalid_argument("InfSingleExp requires a < b < a*(a+1)");
    return HypersurfaceModel(InfSingleExpModel{a, b, alpha_cut});
  }

  static HypersurfaceModel inf_double_exp(double a, double b,
                                          double alpha_cut = 1.5) {
    if (!(a > 0) || !(alpha_cut > 0))
      throw std::invalid_argument("InfDoubleExp requires a > 0, alpha_cut > 0");
    if (!(a < b && b < a * (a + 1.0)))
      throw std::invalid_argument("InfDoubleExp requires a < b < a*(a+1)");
    return HypersurfaceModel(InfDoubleExpModel{a, b, alpha_cut});
  }

  static HypersurfaceModel tube_failure(double a, double b) {
    if (!(a > 0) || !(b > 0))
      throw std::invalid_argument("TubeFailure requires a, b > 0");
    if (!((b + 1.0) * a < b))
      throw std::invalid_argument("TubeFailure requires (b+1)*a < b");
    return HypersurfaceModel(TubeFailureModel{a, b});
  }

  static HypersurfaceModel re_part(FunctionPair pair, RePartG g = RePartG::F,
                                   double r_coeff = 0.0) {
    return HypersurfaceModel(RePartModel{pair, g, r_coeff});
  }

  static HypersurfaceModel cone_bumped(HypersurfaceModel base, FunctionPair pair,
                                       double alpha, double alpha1, double eta) {
    if (!(alpha > 0 && alpha < alpha1 && alpha1 < 1.0))
      throw std::invalid_argument("cone bump requires 0 < alpha < alpha1 < 1");
    if (!(eta >= 0)) throw std::invalid_argument("cone bump requires eta >= 0");
    ConeBumpedModel m;
    m.base = std::make_shared<HypersurfaceModel>(std::move(base));
    m.pair = pair;
    m.alpha = alpha;
    m.alpha1 = alpha1;
    m.eta = eta;
    return HypersurfaceModel(std::move(m));
  }

  const Variant& variant() const { return v_; }

  HPartials partials(complexd z, double r) const {
    return std::visit([&](const auto& m) { return eval_impl(m, z, r); }, v_);
  }

  double value(complexd z, double r) const { return partials(z, r).h; }
  double laplacian(complexd z, double r) const { return partials(z, r).lap; }

private:
  explicit HypersurfaceModel(Variant v) : v_(std::move(v)) {}

  static HPartials eval_impl(const ZeroModel&, complexd, double) { return {}; }

  static HPartials eval_impl(const FiniteTypeModel& m, complexd z, double) {
    const double x = z.real(), y = z.imag();
    const double rho2 = x * x + y * y;
    const int q = m.m - m.p;
    HPartials out;
    const double rm1 = detail::ipow(rho2, m.m - 1);
    out.h = detail::ipow(rho2, m.m);
    out.hx = 2.0 * m.m * rm1 * x;
    out.hy = 2.0 * m.m * rm1 * y;
    out.lap = 4.0 * m.m * m.m * rm1;

    const double x2p = detail::ipow(x, 2 * m.p);
    const double x2p1 = detail::ipow(x, 2 * m.p - 1);
    const double rq = detail::ipow(rho2, q);
    const double rq1 = q >= 1 ? detail::ipow(rho2, q - 1) : 0.0;
    out.h += m.c * rq * x2p;
    out.hx += m.c * (2.0 * q * rq1 * x * x2p + rq * 2.0 * m.p * x2p1);
    out.hy += m.c * 2.0 * q * rq1 * y * x2p;
    double lap_c = 4.0 * q * q * rq1 * x2p + 8.0 * m.p * q * rq1 * x2p;
    lap_c += 2.0 * m.p * (2 * m.p - 1) * rq *
             (2 * m.p >= 2 ? detail::ipow(x, 2 * m.p - 2) : 0.0);
    out.lap += m.c * lap_c;
    return out;
  }

  static HPartials eval_impl(const RePartModel& m, complexd z, double r) {
    // vertex limit: F and F^2 over the exponential pairs extend flat to 0
    if (z == complexd{0.0, 0.0} && m.pair.kind != PairKind::Power &&
        m.g != RePartG::ScaledIdentity)
      return {};
    complexd g, gp;
    switch (m.g) {
      case RePartG::F:
        g = m.pair.eval(Which::F, 0, z);
        gp = m.pair.eval(Which::F, 1, z);
        break;
      case RePartG::F2: {
        const complexd F = m.pair.eval(Which::F, 0, z);
        const complexd Fp = m.pair.eval(Which::F, 1, z);
        g = F * F;
        gp = 2.0 * F * Fp;
        break;
      }
      case RePartG::ScaledIdentity:
        g = m.pair.epsilon * z;
        gp = m.pair.epsilon;
        break;
    }
    const double s = 1.0 + m.r_coeff * r;
    HPartials out;
    out.h = s * g.real();
    out.hx = s * gp.real();
    out.hy = -s * gp.imag();
    out.lap = 0.0;
    return out;
  }

  // Shared machinery for the three cut-off * Re E products. sigma is the
  // cut-off argument with plateau |sigma| <= 1 and support |sigma| <= 2.
  struct SigmaEval {
    double sigma = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0;
    bool valid = false;
  };

  template <typename ETerm>
  static void add_cutoff_term(HPartials& out, const SigmaEval& s, double sign,
                              ETerm&& eval_E) {
    if (!s.valid) return;
    const double X = CutoffProfile::value(s.sigma);
    const double P1 = CutoffProfile::d1(s.sigma);
    const double P2 = CutoffProfile::d2(s.sigma);
    if (X == 0.0 && P1 == 0.0 && P2 == 0.0) return;
    complexd E, Ep;
    if (!eval_E(E, Ep)) return;  // flat underflow region
    const double ReE = E.real();
    const double Ex = Ep.real(), Ey = -Ep.imag();
    const double Xx = P1 * s.sx, Xy = P1 * s.sy;
    const double lapX = P2 * (s.sx * s.sx + s.sy * s.sy) + P1 * s.sxx;
    out.h += sign * X * ReE;
    out.hx += sign * (Xx * ReE + X * Ex);
    out.hy += sign * (Xy * ReE + X * Ey);
    out.lap += sign * (lapX * ReE + 2.0 * (Xx * Ex + Xy * Ey));
  }

  static HPartials eval_impl(const InfSingleExpModel& m, complexd z, double) {
    const double x = z.real(), y = z.imag();
    const detail::FlatExp t = detail::flat_exp(y, m.a);
    HPartials out;
    out.h = t.v;
    out.hy = t.d1;
    out.lap = t.d2;
    if (x <= 0.0) return out;

    SigmaEval s;
    const double scale = m.alpha_cut * std::pow(x, m.a + 1.0);
    s.sigma = y / scale;
    if (std::isfinite(s.sigma)) {
      s.sx = -(m.a + 1.0) * s.sigma / x;
      s.sy = 1.0 / scale;
      s.sxx = (m.a + 1.0) * (m.a + 2.0) * s.sigma / (x * x);
      s.valid = true;
    }
    add_cutoff_term(out, s, -1.0, [&](complexd& E, complexd& Ep) {
      const complexd w = std::pow(z, -m.b);
      E = std::exp(-w);
      Ep = m.b * std::pow(z, -m.b - 1.0) * E;
      return true;
    });
    return out;
  }

  static HPartials eval_impl(const TubeFailureModel& m, complexd z, double) {
    const double x = z.real(), y = z.imag();
    const detail::FlatExp t = detail::flat_exp(y, m.a);
    HPartials out;
    out.h = t.v;
    out.hy = t.d1;
    out.lap = t.d2;
    if (x <= 0.0) return out;

    SigmaEval s;
    const double scale = std::pow(x, m.b + 1.0);
    s.sigma = y / scale;
    if (std::isfinite(s.sigma)) {
      s.sx = -(m.b + 1.0) * s.sigma / x;
      s.sy = 1.0 / scale;
      s.sxx = (m.b + 1.0) * (m.b + 2.0) * s.sigma / (x * x);
      s.valid = true;
    }
    add_cutoff_term(out, s, -1.0, [&](complexd& E, complexd& Ep) {
      const complexd w = std::pow(z, -m.b);
      E = std::exp(-w);
      Ep = m.b * std::pow(z, -m.b - 1.0) * E;
      return true;
    });
    return out;
  }

  static HPartials eval_impl(const InfDoubleExpModel& m, complexd z, double) {
    const double x = z.real(), y = z.imag();
    const detail::FlatExp t = detail::flat_double_exp(y, m.a);
    HPartials out;
    out.h = t.v;
    out.hy = t.d1;
    out.lap = t.d2;
    if (x <= 0.0) return out;
    if (x >= std::exp(-1.0))
      throw domain_error("InfDoubleExp: cut-off profile requires Re z < 1/e", z);

    const double v = std::pow(x, -m.a);
    SigmaEval s;
    if (v <= 700.0) {
      const double ev = std::exp(v);
      const double W = std::log(-std::log(x));
      const double logK = std::log(m.alpha_cut);
      const double c = 1.0 + logK / W;
      const double D = c * std::pow(x, m.a + 1.0) * std::exp(-v) * std::exp(-ev);
      if (D > 0.0 && std::isfinite(y / D)) {
        const double Wp = 1.0 / (x * std::log(x));
        const double Wpp = -(std::log(x) + 1.0) / (x * x * std::log(x) * std::log(x));
        const double cp = -logK * Wp / (W * W);
        const double cpp = -logK * (Wpp / (W * W) - 2.0 * Wp * Wp / (W * W * W));
        const double vp_mag = m.a * std::pow(x, -m.a - 1.0);  // -v'
        const double q = cp / c + (m.a + 1.0) / x + vp_mag * (1.0 + ev);
        const double qp = (cpp * c - cp * cp) / (c * c) - (m.a + 1.0) / (x * x) -
                          m.a * (m.a + 1.0) * std::pow(x, -m.a - 2.0) * (1.0 + ev) -
                          m.a * m.a * std::pow(x, -2.0 * m.a - 2.0) * ev;
        s.sigma = y / D;
        s.sx = -s.sigma * q;
        s.sy = 1.0 / D;
        s.sxx = s.sigma * (q * q - qp);
        s.valid = std::isfinite(s.sigma) && std::isfinite(s.sx) &&
                  std::isfinite(s.sxx);
      }
    }
    add_cutoff_term(out, s, -1.0, [&](complexd& E, complexd& Ep) {
      const complexd w = std::pow(z, -m.b);
      if (w.real() > 700.0) return false;
      const complexd ein = std::exp(w);
      if (ein.real() > 700.0) return false;
      if (ein.real() < -700.0)
        throw domain_error("InfDoubleExp: oscillatory blow-up of e^{-e^{1/z^b}}", z);
      E = std::exp(-ein);
      Ep = m.b * ein * std::pow(z, -m.b - 1.0) * E;
      return true;
    });
    return out;
  }

  static HPartials eval_impl(const ConeBumpedModel& m, complexd z, double r) {
    HPartials out = m.base->partials(z, r);
    if (m.eta == 0.0) return out;
    const ConeCutoffEval c = cone_cutoff_eval(m.pair, m.alpha, m.alpha1, z);
    if (c.chi == 0.0 && c.dz_chi == complexd{0.0, 0.0} && c.dzdzbar_chi == 0.0)
      return out;
    const complexd F = m.pair.eval(Which::F, 0, z);
    const complexd Fp = m.pair.eval(Which::F, 1, z);
    const double B = c.chi * F.real();
    const complexd dzB = c.dz_chi * F.real() + c.chi * Fp * 0.5;
    const double dzdzbarB =
        c.dzdzbar_chi * F.real() + (c.dz_chi * std::conj(Fp)).real();
    out.h -= m.eta * B;
    out.hx -= m.eta * 2.0 * dzB.real();
    out.hy -= m.eta * (-2.0) * dzB.imag();
    out.lap -= m.eta * 4.0 * dzdzbarB;
    return out;
  }

  Variant v_;
};

inline complexd eval_h(const HypersurfaceModel& model, complexd z, double r,
                       HOrder order) {
  const HPartials p = model.partials(z, r);
  switch (order) {
    case HOrder::value: return {p.h, 0.0};
    case HOrder::dz: return p.dz();
    case HOrder::dzbar: return std::conj(p.dz());
    case HOrder::dzdzbar: return {p.dzdzbar(), 0.0};
  }
  throw std::logic_error("eval_h: unreachable");
}

// --- hypothesis checkers -----------------------------------------------------

struct GrowthReport {
  double sup_h_over_F = 0.0;            // h = O(F(|z|)), uniform in r
  double sup_h_over_theta_alpha = 0.0;  // |h o F*_alpha| <= c |theta|^alpha
  double sup_d1_over_d1F = 0.0;         // D1 h = O(|dz F|)
  double sup_d2_over_d2F = 0.0;         // D2 h = O(|dz2 F|), dzdzbar proxy
  std::vector<double> per_r_sup_h_over_F;
};

inline GrowthReport check_growth_hypotheses(const HypersurfaceModel& model,
                                            const FunctionPair& pair, double alpha,
                                            std::span<const double> thetas,
                                            std::span<const double> r_grid) {
  GrowthReport rep;
  const SectorSpec spec(pair, alpha);
  for (double r : r_grid) {
    double sup_r = 0.0;
    for (double th : thetas) {
      const complexd tau = std::exp(complexd(0.0, th));
      const complexd z = sector_map(spec, tau);
      const HPartials hp = model.partials(z, r);
      const double Fmag =
          std::abs(pair.eval(Which::F, 0, complexd(std::abs(z), 0.0)));
      const double d1F = std::abs(pair.eval(Which::F, 1, z));
      const double d2F = std::abs(pair.eval(Which::F, 2, z));
      if (Fmag > 0) sup_r = std::max(sup_r, std::abs(hp.h) / Fmag);
      rep.sup_h_over_theta_alpha = std::max(
          rep.sup_h_over_theta_alpha, std::abs(hp.h) / std::pow(std::abs(th), alpha));
      if (d1F > 0)
        rep.sup_d1_over_d1F =
            std::max(rep.sup_d1_over_d1F, std::hypot(hp.hx, hp.hy) / d1F);
      if (d2F > 0)
        rep.sup_d2_over_d2F =
            std::max(rep.sup_d2_over_d2F, std::abs(hp.dzdzbar()) / d2F);
    }
    rep.per_r_sup_h_over_F.push_back(sup_r);
    rep.sup_h_over_F = std::max(rep.sup_h_over_F, sup_r);
  }
  return rep;
}

struct SectorPropertyReport {
  double max_h = -std::numeric_limits<double>::infinity();
  double min_h = std::numeric_limits<double>::infinity();
  complexd argmax{0.0, 0.0};
  int strict_count = 0;                 // samples with h < 0 strictly
  std::vector<complexd> strict_at;      // capped sample list
};

// Max of h over the sampled sector: boundary plus interior sigma-rays,
// swept over r_grid. Sector property = (max_h <= 0).
inline SectorPropertyReport sector_property(const HypersurfaceModel& model,
                                            const SectorSpec& spec,
                                            std::span<const double> thetas,
                                            std::span<const double> r_grid) {
  if (spec.nu)
    throw unsupported_operation("sector_property: use the unsmoothed sector");
  SectorPropertyReport rep;
  const double sigmas[] = {0.25, 0.5, 0.75, 1.0};
  for (double th : thetas) {
    for (double sg : {1.0, -1.0}) {
      const complexd w = 1.0 - std::exp(complexd(0.0, sg * th));
      for (double sigma : sigmas) {
        const complexd tau = 1.0 - sigma * w;
        const complexd z = sector_map(spec, tau);
        for (double r : r_grid) {
          const double h = model.value(z, r);
          if (h > rep.max_h) {
            rep.max_h = h;
            rep.argmax = z;
          }
          rep.min_h = std::min(rep.min_h, h);
          if (h < 0.0) {
            ++rep.strict_count;
            if (rep.strict_at.size() < 16) rep.strict_at.push_back(z);
          }
        }
      }
    }
  }
  return rep;
}

}  // namespace sectorlab
