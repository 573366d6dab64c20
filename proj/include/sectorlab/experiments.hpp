#pragma once

// Deterministic experiment runner: a flat key-value config selects one of the
// named experiments and produces CSV/JSON report content. No randomness, no
// timestamps; identical configs yield byte-identical reports.

#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "sectorlab/bishop.hpp"
#include "sectorlab/circle.hpp"
#include "sectorlab/errors.hpp"
#include "sectorlab/funcpair.hpp"
#include "sectorlab/hypersurface.hpp"
#include "sectorlab/levi.hpp"
#include "sectorlab/report.hpp"
#include "sectorlab/sector.hpp"

namespace sectorlab {

struct RunResult {
  int exit_code = 0;
  std::map<std::string, std::string> files;  // filename -> content
  std::string diagnostics;
};

namespace schema {

inline const std::vector<std::string>& common_keys() {
  static const std::vector<std::string> k = {"experiment", "out", "n"};
  return k;
}

inline const std::map<std::string, std::vector<std::string>>& experiments() {
  static const std::map<std::string, std::vector<std::string>> table = {
      {"hilbert-selftest", {}},
      {"sector-profile",
       {"pair.kind", "pair.m", "pair.a", "pair.epsilon", "alpha", "nu",
        "theta_min", "theta_max", "theta_points"}},
      {"solve-disc",
       {"pair.kind", "pair.m", "pair.a", "pair.epsilon", "model.variant",
        "model.m", "model.p", "model.c", "model.a", "model.b", "model.alpha_cut",
        "model.g", "model.r_coeff", "alpha", "nu", "translate.re", "translate.im",
        "bump.eta", "bump.center", "bump.width", "tol", "max_iter", "damping",
        "r_shift"}},
      {"bump-response",
       {"pair.kind", "pair.m", "pair.a", "pair.epsilon", "model.variant",
        "model.m", "model.p", "model.c", "model.a", "model.b", "model.alpha_cut",
        "model.g", "model.r_coeff", "alpha", "bump.center", "bump.width", "tol",
        "max_iter", "damping", "delta"}},
      {"smoothing-sweep",
       {"pair.kind", "pair.m", "pair.a", "pair.epsilon", "model.variant",
        "model.m", "model.p", "model.c", "model.a", "model.b", "model.alpha_cut",
        "model.g", "model.r_coeff", "alpha", "nus", "tol", "max_iter", "damping"}},
      {"translation-sweep",
       {"pair.kind", "pair.m", "pair.a", "pair.epsilon", "model.variant",
        "model.m", "model.p", "model.c", "model.a", "model.b", "model.alpha_cut",
        "model.g", "model.r_coeff", "alpha", "nu", "offsets", "r_shifts", "tol",
        "max_iter", "damping"}},
      {"levi-check",
       {"model.variant", "model.m", "model.p", "model.c", "model.a", "model.b",
        "model.alpha_cut", "region.x0", "region.x1", "region.y0", "region.y1",
        "grid_n", "r"}},
      {"cone-bump",
       {"pair.kind", "pair.m", "pair.a", "pair.epsilon", "model.variant",
        "model.m", "model.p", "model.c", "model.a", "model.b", "model.alpha_cut",
        "alpha", "alpha1", "eta", "region.x0", "region.x1", "region.y0",
        "region.y1", "grid_n", "x_lo", "x_hi"}},
      {"thresholds", {"m", "p", "alpha"}},
      {"hypothesis-check",
       {"pair.kind", "pair.m", "pair.a", "pair.epsilon", "model.variant",
        "model.m", "model.p", "model.c", "model.a", "model.b", "model.alpha_cut",
        "model.g", "model.r_coeff", "alpha"}},
  };
  return table;
}

}  // namespace schema

class ExperimentConfig {
public:
  static ExperimentConfig from_json(const ordered_json& j) {
    if (!j.is_object()) throw config_error("config must be a JSON object");
    if (!j.contains("experiment") || !j.at("experiment").is_string())
      throw config_error("config needs an \"experiment\" string");
    const std::string exp = j.at("experiment").get<std::string>();
    const auto& table = schema::experiments();
    const auto it = table.find(exp);
    if (it == table.end()) throw config_error("unknown experiment: " + exp);
    std::set<std::string> allowed(it->second.begin(), it->second.end());
    for (const auto& k : schema::common_keys()) allowed.insert(k);
    for (const auto& [key, value] : j.items())
      if (!allowed.contains(key))
        throw config_error("unknown key for experiment " + exp + ": " + key);
    ExperimentConfig cfg;
    cfg.kv_ = j;
    return cfg;
  }

  std::string experiment() const { return kv_.at("experiment").get<std::string>(); }

  bool has(const std::string& key) const { return kv_.contains(key); }

  double num(const std::string& key, double fallback) const {
    if (!kv_.contains(key)) return fallback;
    if (!kv_.at(key).is_number())
      throw config_error("key " + key + " must be a number");
    return kv_.at(key).get<double>();
  }

  double num_required(const std::string& key) const {
    if (!kv_.contains(key)) throw config_error("missing required key: " + key);
    return num(key, 0.0);
  }

  int integer(const std::string& key, int fallback) const {
    const double v = num(key, fallback);
    if (v != std::floor(v)) throw config_error("key " + key + " must be integral");
    return static_cast<int>(v);
  }

  std::string str(const std::string& key, const std::string& fallback) const {
    if (!kv_.contains(key)) return fallback;
    if (!kv_.at(key).is_string())
      throw config_error("key " + key + " must be a string");
    return kv_.at(key).get<std::string>();
  }

  const ordered_json& raw() const { return kv_; }

  void set_override(const std::string& key, const std::string& value) {
    ordered_json v;
    try {
      v = ordered_json::parse(value);
    } catch (...) {
      v = value;
    }
    kv_[key] = v;
  }

  void revalidate() const { (void)from_json(kv_); }

private:
  ordered_json kv_;
};

namespace detail {

inline FunctionPair parse_pair(const ExperimentConfig& cfg) {
  const std::string kind = cfg.str("pair.kind", "power");
  const double eps = cfg.num("pair.epsilon", 0.1);
  if (kind == "power") return FunctionPair::power(cfg.integer("pair.m", 2), eps);
  if (kind == "exp") return FunctionPair::exp_type(cfg.num("pair.a", 1.0), eps);
  if (kind == "doubleexp")
    return FunctionPair::double_exp(cfg.num("pair.a", 0.5), eps);
  throw config_error("pair.kind must be power, exp or doubleexp");
}

inline HypersurfaceModel parse_model(const ExperimentConfig& cfg) {
  const std::string variant = cfg.str("model.variant", "zero");
  if (variant == "zero") return HypersurfaceModel::zero();
  if (variant == "finite-type")
    return HypersurfaceModel::finite_type(cfg.integer("model.m", 2),
                                          cfg.integer("model.p", 1),
                                          cfg.num("model.c", 0.0));
  if (variant == "inf-single-exp")
    return HypersurfaceModel::inf_single_exp(cfg.num("model.a", 1.0),
                                             cfg.num("model.b", 1.5),
                                             cfg.num("model.alpha_cut", 1.5));
  if (variant == "inf-double-exp")
    return HypersurfaceModel::inf_double_exp(cfg.num("model.a", 0.5),
                                             cfg.num("model.b", 0.6),
                                             cfg.num("model.alpha_cut", 1.5));
  if (variant == "tube-failure")
    return HypersurfaceModel::tube_failure(cfg.num("model.a", 0.4),
                                           cfg.num("model.b", 0.8));
  if (variant == "re-part") {
    const std::string g = cfg.str("model.g", "F");
    RePartG gk = RePartG::F;
    if (g == "F2") gk = RePartG::F2;
    else if (g == "eps-z") gk = RePartG::ScaledIdentity;
    else if (g != "F") throw config_error("model.g must be F, F2 or eps-z");
    return HypersurfaceModel::re_part(parse_pair(cfg), gk,
                                      cfg.num("model.r_coeff", 0.0));
  }
  throw config_error("unknown model.variant: " + variant);
}

// The propagation experiments require the sector calibrated on the model's
// second exponent: pair exponent a must equal model b.
inline void check_calibration(const ExperimentConfig& cfg) {
  const std::string variant = cfg.str("model.variant", "zero");
  if (variant == "inf-single-exp") {
    if (cfg.str("pair.kind", "power") != "exp" ||
        cfg.num("pair.a", 1.0) != cfg.num("model.b", 1.5))
      throw config_error(
          "inf-single-exp needs an exp pair with exponent b: the sector is "
          "calibrated by a < b < a*(a+1)");
  }
  if (variant == "inf-double-exp") {
    if (cfg.str("pair.kind", "power") != "doubleexp" ||
        cfg.num("pair.a", 0.5) != cfg.num("model.b", 0.6))
      throw config_error(
          "inf-double-exp needs a doubleexp pair with exponent b: the sector "
          "is calibrated by a < b < a*(a+1)");
  }
}

inline SectorSpec parse_sector(const ExperimentConfig& cfg) {
  const int nu = cfg.integer("nu", 0);
  return SectorSpec(parse_pair(cfg), cfg.num("alpha", 1.5),
                    nu > 0 ? std::optional<int>(nu) : std::nullopt,
                    {cfg.num("translate.re", 0.0), cfg.num("translate.im", 0.0)});
}

inline SolveOptions parse_solver(const ExperimentConfig& cfg) {
  SolveOptions o;
  o.n = cfg.integer("n", 4096);
  o.tol = cfg.num("tol", 1e-11);
  o.max_iter = cfg.integer("max_iter", 200);
  o.damping = cfg.num("damping", 1.0);
  o.r_shift = cfg.num("r_shift", 0.0);
  return o;
}

inline BumpSpec parse_bump(const ExperimentConfig& cfg) {
  return BumpSpec(cfg.num("bump.eta", 0.0),
                  cfg.num("bump.center", std::numbers::pi),
                  cfg.num("bump.width", 0.5));
}

inline Region parse_region(const ExperimentConfig& cfg, Region fallback) {
  return Region{cfg.num("region.x0", fallback.x0), cfg.num("region.x1", fallback.x1),
                cfg.num("region.y0", fallback.y0), cfg.num("region.y1", fallback.y1)};
}

inline ordered_json complex_json(complexd z) {
  return ordered_json{{"re", z.real()}, {"im", z.imag()}};
}

// --- individual experiments --------------------------------------------------

inline void run_hilbert_selftest(const ExperimentConfig& cfg, ordered_json& rep) {
  const CircleGrid grid(cfg.integer("n", 4096));
  double trig_err = 0.0;
  for (int k : {1, 2, 3, 7, 32, grid.n / 8, grid.n / 4}) {
    const BoundarySamples s = hilbert_T1(BoundarySamples::from_function(
        grid, [&](double th) { return std::sin(k * th); }));
    const BoundarySamples c = hilbert_T1(BoundarySamples::from_function(
        grid, [&](double th) { return std::cos(k * th); }));
    for (int j = 0; j < grid.n; ++j) {
      trig_err = std::max(trig_err,
                          std::abs(s.value(j) - (std::cos(k * grid.theta(j)) - 1.0)));
      trig_err =
          std::max(trig_err, std::abs(c.value(j) + std::sin(k * grid.theta(j))));
    }
  }
  const BoundarySamples v = BoundarySamples::from_function(grid, [&](double th) {
    return std::sin(th) + 0.3 * std::cos(5 * th) - 0.2 * std::sin(17 * th);
  });
  const BoundarySamples tt = hilbert_T1(hilbert_T1(v));
  double invol = 0.0;
  const double c0 = tt.value(0) + v.value(0);
  for (int j = 0; j < grid.n; ++j)
    invol = std::max(invol, std::abs(tt.value(j) + v.value(j) - c0));
  const BoundarySamples u = hilbert_T1(v);
  const BoundarySamples vshift = BoundarySamples::from_function(
      grid, [&](double th) {
        return std::sin(th) + 0.3 * std::cos(5 * th) - 0.2 * std::sin(17 * th) -
               v.at_vertex();
      });
  add_check(rep, "trig_polynomial_sup_error", trig_err, "<", 1e-12);
  add_check(rep, "involution_residual", invol, "<", 1e-10);
  add_check(rep, "analyticity_defect", analyticity_defect(u, vshift), "<", 1e-10);
}

inline void run_sector_profile(const ExperimentConfig& cfg, ordered_json& rep,
                               RunResult& out, const std::string& base) {
  const SectorSpec spec = parse_sector(cfg);
  const BoundaryTrace tr =
      boundary_trace(spec, cfg.num("theta_min", 1e-6),
                     cfg.num("theta_max", std::numbers::pi),
                     cfg.integer("theta_points", 200));
  std::string csv;
  write_csv(tr, csv);
  out.files[base + "_trace.csv"] = std::move(csv);
  const PowerFit fit = asymptotic_fit(tr);
  rep["fit"] = {{"exponent", fit.exponent},
                {"coefficient", fit.coefficient},
                {"r_squared", fit.r_squared}};
  add_check(rep, "fit_r_squared", fit.r_squared, ">", 0.9);
  if (spec.pair.kind == PairKind::DoubleExp) {
    const DoubleExpProfile p = doubleexp_profile_check(spec, tr);
    rep["doubleexp_profile"] = {{"K", p.K},
                                {"max_deviation", p.max_deviation},
                                {"min_ratio", p.min_ratio},
                                {"max_ratio", p.max_ratio},
                                {"points_used", p.points_used}};
  }
}

inline ordered_json disc_json(const AttachedDisc& disc) {
  return ordered_json{{"picard_iters", disc.picard_iters},
                      {"residual", disc.residual},
                      {"defect", disc.defect},
                      {"dv_dt_at_1", disc.dv_dt_at_1},
                      {"s_at_vertex", disc.s_at_vertex},
                      {"u_at_vertex", disc.u.at_vertex()},
                      {"v_at_vertex", disc.v.at_vertex()}};
}

inline void run_solve_disc(const ExperimentConfig& cfg, ordered_json& rep,
                           RunResult& out, const std::string& base) {
  check_calibration(cfg);
  const HypersurfaceModel model = parse_model(cfg);
  const SectorSpec spec = parse_sector(cfg);
  const SolveOptions opts = parse_solver(cfg);
  const AttachedDisc disc = solve(model, spec, parse_bump(cfg), opts);
  rep["disc"] = disc_json(disc);
  std::string csv;
  write_csv(disc, csv);
  out.files[base + "_disc.csv"] = std::move(csv);
  add_check(rep, "residual", disc.residual, "<", opts.tol);
  add_check(rep, "analyticity_defect", disc.defect, "<", 1e-8);
  add_check(rep, "u_vertex_normalization", std::abs(disc.u.at_vertex()), "<", 1e-10);
}

inline void run_bump_response(const ExperimentConfig& cfg, ordered_json& rep) {
  check_calibration(cfg);
  const HypersurfaceModel model = parse_model(cfg);
  const SectorSpec spec = parse_sector(cfg);
  const BumpSpec shape(0.0, cfg.num("bump.center", std::numbers::pi),
                       cfg.num("bump.width", 0.5));
  std::optional<double> delta;
  if (cfg.has("delta")) delta = cfg.num("delta", 0.0);
  const BumpResponse r =
      bump_response(model, spec, shape, parse_solver(cfg), delta);
  rep["response"] = {{"d2v_deta_dt", r.d2v_deta_dt},
                     {"predicted", r.predicted},
                     {"delta", r.delta},
                     {"dv_values", r.dv_values}};
  const double rel =
      std::abs(r.d2v_deta_dt - r.predicted) / std::max(1e-300, std::abs(r.predicted));
  add_check(rep, "response_vs_quadrature_rel_err", rel, "<", 0.02);
}

inline void run_smoothing_sweep(const ExperimentConfig& cfg, ordered_json& rep) {
  check_calibration(cfg);
  const HypersurfaceModel model = parse_model(cfg);
  const SectorSpec spec = parse_sector(cfg);
  std::vector<int> nus = {4, 8, 16, 32, 64};
  if (cfg.has("nus")) {
    nus.clear();
    for (const auto& v : cfg.raw().at("nus")) nus.push_back(v.get<int>());
  }
  const SmoothingSweep sw = smoothing_sweep(model, spec, nus, parse_solver(cfg));
  rep["unsmoothed_limit"] = sw.unsmoothed_limit;
  rep["entries"] = ordered_json::array();
  for (const auto& e : sw.entries)
    rep["entries"].push_back({{"nu", e.nu},
                              {"dv_dt_at_1", e.dv_dt_at_1},
                              {"distance_to_limit", e.distance_to_limit}});
  add_check(rep, "monotone_distances", sw.monotone_distances ? 1.0 : 0.0, ">", 0.5);
}

inline void run_translation_sweep(const ExperimentConfig& cfg, ordered_json& rep) {
  check_calibration(cfg);
  const HypersurfaceModel model = parse_model(cfg);
  const SectorSpec spec = parse_sector(cfg);
  std::vector<complexd> offsets = {{0.0, 0.0}};
  if (cfg.has("offsets")) {
    offsets.clear();
    for (const auto& v : cfg.raw().at("offsets"))
      offsets.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
  }
  std::vector<double> r_shifts = {0.0};
  if (cfg.has("r_shifts")) {
    r_shifts.clear();
    for (const auto& v : cfg.raw().at("r_shifts")) r_shifts.push_back(v.get<double>());
  }
  const TranslationSweep sw =
      translation_sweep(model, spec, offsets, r_shifts, parse_solver(cfg));
  rep["dipped_count"] = sw.dipped_count;
  rep["cells"] = ordered_json::array();
  for (const auto& c : sw.cells) {
    ordered_json cell = {{"offset", complex_json(c.offset)},
                         {"r_shift", c.r_shift},
                         {"ok", c.ok}};
    if (c.ok) {
      cell["min_dip"] = c.min_dip;
      cell["dipped"] = c.dipped;
    } else {
      cell["error"] = c.error;
    }
    rep["cells"].push_back(std::move(cell));
  }
  rep["dipped_vertices"] = ordered_json::array();
  for (complexd v : sw.dipped_vertices)
    rep["dipped_vertices"].push_back(complex_json(v));
}

inline void run_levi_check(const ExperimentConfig& cfg, ordered_json& rep) {
  const HypersurfaceModel model = parse_model(cfg);
  const Region region = parse_region(cfg, {0.02, 0.06, -0.02, 0.02});
  const LeviReport lr =
      laplacian_grid(model, region, cfg.integer("grid_n", 101), cfg.num("r", 0.0));
  rep["levi"] = {{"min_laplacian", lr.min_laplacian},
                 {"argmin", complex_json(lr.argmin)},
                 {"scale", lr.scale},
                 {"violation_count", lr.violation_count},
                 {"stencil_consistency", lr.stencil_consistency},
                 {"step_x", lr.step_x},
                 {"step_y", lr.step_y}};
  add_check(rep, "min_laplacian_over_scale",
            lr.scale > 0 ? lr.min_laplacian / lr.scale : lr.min_laplacian, ">=",
            -1e-8);
}

inline void run_cone_bump(const ExperimentConfig& cfg, ordered_json& rep) {
  const HypersurfaceModel model = parse_model(cfg);
  const FunctionPair pair = parse_pair(cfg);
  ConeBumpSpec cone(pair, cfg.num("alpha", 0.5), cfg.num("alpha1", 0.8),
                    cfg.num("eta", 0.0));
  cone.x_lo = cfg.num("x_lo", 0.02);
  cone.x_hi = cfg.num("x_hi", 0.06);
  const Region region = parse_region(cfg, {0.02, 0.06, -0.02, 0.02});
  const int grid_n = cfg.integer("grid_n", 61);

  const auto samples =
      annular_cone_samples(pair, cone.alpha, cone.alpha1, cone.x_lo, cone.x_hi);
  const double comparability =
      check_cone_comparability(pair, cone.alpha1, samples);
  const double eta_star = max_admissible_eta(model, cone, region, grid_n);
  ConeBumpSpec used = cone;
  if (used.eta == 0.0) used.eta = eta_star;
  const BuildBumpResult bb = build_bump(model, used);
  const LeviReport lr = laplacian_grid(bb.bumped, region, grid_n, 0.0);

  // bump ordering sampling: bumped <= base everywhere, strictly below on the inner cone
  double max_gap = -1e300;
  int strict_on_axis = 0, axis_total = 0;
  for (double x : log_space(cone.x_lo / 2.0, cone.x_hi, 100)) {
    for (int j = 0; j < 100; ++j) {
      const double y = region.y0 + (region.y1 - region.y0) * (j + 0.5) / 100.0;
      max_gap = std::max(max_gap, bb.bumped.value({x, y}, 0.0) -
                                      model.value({x, y}, 0.0));
    }
    ++axis_total;
    if (bb.bumped.value({x, 0.0}, 0.0) < model.value({x, 0.0}, 0.0))
      ++strict_on_axis;
  }

  rep["cone"] = {{"alpha", cone.alpha},
                 {"alpha1", cone.alpha1},
                 {"eta_used", used.eta},
                 {"samples", static_cast<int>(samples.size())}};
  rep["results"] = {{"comparability_min", comparability},
                    {"levi_domination_min", bb.levi_domination_min},
                    {"cutoff_d1_bound", bb.cutoff_d1_bound},
                    {"cutoff_d2_bound", bb.cutoff_d2_bound},
                    {"eta_star", eta_star},
                    {"bumped_min_laplacian", lr.min_laplacian},
                    {"bumped_scale", lr.scale},
                    {"ordering_max_gap", max_gap},
                    {"ordering_strict_on_axis", strict_on_axis},
                    {"ordering_axis_samples", axis_total}};
  add_check(rep, "comparability_min", comparability, ">=",
            std::cos(cone.alpha1 * std::numbers::pi / 2.0) - 0.01);
  add_check(rep, "levi_domination_min", bb.levi_domination_min, ">", 0.0);
  add_check(rep, "eta_star", eta_star, ">", 0.0);
  add_check(rep, "bumped_min_laplacian_over_scale",
            lr.scale > 0 ? lr.min_laplacian / lr.scale : lr.min_laplacian, ">=",
            -1e-8);
  add_check(rep, "ordering_max_gap", max_gap, "<=", 1e-14);
}

inline void run_thresholds(const ExperimentConfig& cfg, ordered_json& rep,
                           RunResult& out, const std::string& base) {
  const int m = cfg.integer("m", 2);
  const int p = cfg.integer("p", 1);
  const double alpha = cfg.num("alpha", 1.01);
  const FiniteTypeThresholds t = finite_type_thresholds(m, p, alpha);
  const double paper_sector = std::sqrt(2.0);
  const double paper_sub = 4.0 / 3.0;
  rep["thresholds"] = {{"m", m},
                       {"p", p},
                       {"alpha", alpha},
                       {"c_sector", t.c_sector},
                       {"c_subharmonic", t.c_subharmonic},
                       {"sector_flip_found", t.sector_flip_found},
                       {"subharmonic_flip_found", t.subharmonic_flip_found},
                       {"paper_c_sector", paper_sector},
                       {"paper_c_subharmonic", paper_sub},
                       {"sector_mismatch_flag",
                        std::abs(std::abs(t.c_sector) - paper_sector) > 1e-3},
                       {"subharmonic_mismatch_flag",
                        std::abs(std::abs(t.c_subharmonic) - paper_sub) > 1e-3}};
  char buf[512];
  std::string csv =
      "m,p,alpha,c_sector,c_subharmonic,paper_c_sector,paper_c_subharmonic,"
      "sector_mismatch_flag,subharmonic_mismatch_flag\n";
  std::snprintf(buf, sizeof(buf), "%d,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%d,%d\n", m,
                p, alpha, t.c_sector, t.c_subharmonic, paper_sector, paper_sub,
                std::abs(std::abs(t.c_sector) - paper_sector) > 1e-3 ? 1 : 0,
                std::abs(std::abs(t.c_subharmonic) - paper_sub) > 1e-3 ? 1 : 0);
  csv += buf;
  out.files[base + "_thresholds.csv"] = std::move(csv);
  add_check(rep, "bisection_found_both",
            (t.sector_flip_found && t.subharmonic_flip_found) ? 1.0 : 0.0, ">", 0.5);
}

inline void run_hypothesis_check(const ExperimentConfig& cfg, ordered_json& rep) {
  const FunctionPair pair = parse_pair(cfg);
  const double alpha = cfg.num("alpha", 1.5);

  std::vector<complexd> samples;
  const double hi = pair.kind == PairKind::DoubleExp ? 0.03 : pair.epsilon;
  for (double x : log_space(1e-4, hi, 20)) samples.push_back({x, 0.0});
  rep["inverse_residual"] = check_inverse(pair, samples);
  rep["derivative_ratio_F"] = check_derivative_ratio(pair, Which::F, samples);
  rep["derivative_ratio_Fstar"] =
      check_derivative_ratio(pair, Which::Fstar, samples);

  std::vector<double> thetas;
  for (double t : log_space(0.05, 1.5, 20)) {
    thetas.push_back(t);
    thetas.push_back(-t);
  }
  std::vector<double> sigmas;
  for (int i = 1; i <= 20; ++i) sigmas.push_back(i / 20.0);
  const IncrementReport inc = check_increment_condition(pair, alpha, thetas, sigmas);
  rep["increment"] = {{"sign_violations", inc.sign_violations},
                      {"monotonicity_violations", inc.monotonicity_violations}};

  const HypersurfaceModel model = parse_model(cfg);
  const double r_grid[] = {-0.05, 0.0, 0.05};
  const GrowthReport g = check_growth_hypotheses(model, pair, alpha,
                                                 log_space(1e-4, 3.0, 60), r_grid);
  rep["growth"] = {{"sup_h_over_F", g.sup_h_over_F},
                   {"sup_h_over_theta_alpha", g.sup_h_over_theta_alpha},
                   {"sup_d1_over_d1F", g.sup_d1_over_d1F},
                   {"sup_d2_over_d2F", g.sup_d2_over_d2F}};
  add_check(rep, "inverse_residual", rep["inverse_residual"].get<double>(), "<",
            1e-8);
}

}  // namespace detail

inline RunResult run_experiment(const ExperimentConfig& cfg) {
  cfg.revalidate();
  RunResult out;
  const std::string exp = cfg.raw().at("experiment").get<std::string>();
  const std::string base = cfg.str("out", exp);
  ordered_json rep = report_header(cfg.raw());

  try {
    if (exp == "hilbert-selftest") detail::run_hilbert_selftest(cfg, rep);
    else if (exp == "sector-profile") detail::run_sector_profile(cfg, rep, out, base);
    else if (exp == "solve-disc") detail::run_solve_disc(cfg, rep, out, base);
    else if (exp == "bump-response") detail::run_bump_response(cfg, rep);
    else if (exp == "smoothing-sweep") detail::run_smoothing_sweep(cfg, rep);
    else if (exp == "translation-sweep") detail::run_translation_sweep(cfg, rep);
    else if (exp == "levi-check") detail::run_levi_check(cfg, rep);
    else if (exp == "cone-bump") detail::run_cone_bump(cfg, rep);
    else if (exp == "thresholds") detail::run_thresholds(cfg, rep, out, base);
    else if (exp == "hypothesis-check") detail::run_hypothesis_check(cfg, rep);
    else throw config_error("unknown experiment: " + exp);
  } catch (const config_error&) {
    throw;
  } catch (const std::exception& e) {
    out.exit_code = 1;
    out.diagnostics = e.what();
    rep["error"] = e.what();
    out.files[base + ".json"] = rep.dump(2) + "\n";
    return out;
  }

  rep["all_checks_pass"] = all_checks_pass(rep);
  out.files[base + ".json"] = rep.dump(2) + "\n";
  if (!all_checks_pass(rep)) {
    out.diagnostics = "one or more embedded checks failed";
  }
  return out;
}

inline std::string experiment_catalogue() {
  std::string s;
  for (const auto& [name, keys] : schema::experiments()) {
    s += name;
    s += "\n  keys:";
    for (const auto& k : schema::common_keys()) {
      s += " ";
      s += k;
    }
    for (const auto& k : keys) {
      s += " ";
      s += k;
    }
    s += "\n";
  }
  return s;
}

}  // namespace sectorlab
