#include "experiments.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "bergman/berezin.hpp"
#include "bergman/covering.hpp"
#include "bergman/errors.hpp"
#include "bergman/essential.hpp"
#include "bergman/measures.hpp"
#include "bergman/operators.hpp"

namespace bergman::cli {

namespace {

constexpr double kPi = std::numbers::pi;

std::string f17(double v) { return fmt17(v); }

struct Common {
  std::size_t n = 1;
  int degree = 12;
  MonomialBasis basis;
  QuadratureSpec quad;
};

Common read_common(Cfg& c, int default_degree) {
  Common k;
  const int n = c.integer("n", 1);
  if (n < 1 || n > 4) c.fail("n", "must lie in 1..4");
  k.n = static_cast<std::size_t>(n);
  k.degree = c.integer("D", default_degree);
  if (k.degree < 0) c.fail("D", "must be nonnegative");
  if (std::pow(k.degree + 1.0, 2.0 * n) > 4e8) c.fail("D", "truncation too large for a dense matrix");
  k.basis = MonomialBasis(k.n, k.degree);
  k.quad = parse_quadrature(c, k.degree);
  return k;
}

void require_range(Cfg& c, const std::string& key, const std::vector<double>& v, double lo, double hi) {
  for (double x : v) {
    if (!(x >= lo && x < hi)) c.fail(key, "entries must lie in [" + f17(lo) + ", " + f17(hi) + ")");
  }
}

/// Every combination of `per_axis` equally spaced unimodular directions.
std::vector<std::vector<cplx>> directions(std::size_t n, int per_axis) {
  std::vector<std::vector<cplx>> dirs{{}};
  for (std::size_t l = 0; l < n; ++l) {
    std::vector<std::vector<cplx>> next;
    for (const auto& d : dirs) {
      for (int j = 0; j < per_axis; ++j) {
        auto e = d;
        e.push_back(std::polar(1.0, 2.0 * kPi * j / per_axis));
        next.push_back(std::move(e));
      }
    }
    dirs = std::move(next);
  }
  return dirs;
}

std::vector<PolyPoint> centers_at(double modulus, const std::vector<std::vector<cplx>>& dirs) {
  std::vector<PolyPoint> out;
  for (const auto& d : dirs) {
    std::vector<cplx> z;
    for (cplx e : d) z.push_back(modulus * e);
    out.emplace_back(std::move(z));
  }
  return out;
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] < v[i - 1])) return false;
  }
  return true;
}

Outcome lattice(Cfg& c, std::uint64_t seed) {
  const int n = c.integer("n", 1);
  if (n < 1 || n > 2) c.fail("n", "must be 1 or 2");
  const double beta_max = c.num("beta_max", 3.0);
  if (!(beta_max > 0.0)) c.fail("beta_max", "must be positive");
  const auto rhos = c.ladder("rho_ladder", {0.5, 1.0});
  const auto sigmas = c.ladder("sigma_ladder", {1.0, 2.0});
  const auto ks = c.int_ladder("k_list", {0, 2});
  const int samples = c.integer("samples", 10000);
  if (samples < 1) c.fail("samples", "must be positive");
  const bool emit_cells = c.flag("emit_cells", false);
  for (double r : rhos) {
    if (!(r > 0.0)) c.fail("rho_ladder", "entries must be positive");
  }
  for (double s : sigmas) {
    if (!(s > 0.0)) c.fail("sigma_ladder", "entries must be positive");
  }
  if (ks.front() < 0) c.fail("k_list", "entries must be nonnegative");
  c.finish();

  Outcome out;
  out.table.header = {"family", "rho_or_sigma", "k", "cells", "max_overlap", "overlap_bound", "diameter_bound",
                      "samples"};
  json cr = json::array();
  for (double rho : rhos) {
    const CrLattice lat(rho, beta_max);
    const std::size_t cells = lat.cells().size();
    const double total = std::pow(static_cast<double>(cells), n);
    cr.push_back(json{{"rho", rho},
                      {"rings", lat.rings().size()},
                      {"cells_per_axis", cells},
                      {"cells", total},
                      {"covered_radius", lat.covered_radius()}});
    out.table.rows.push_back({"cr_lattice", f17(rho), "", f17(total), "", "", f17(2.0 * rho), ""});
  }
  json suarez = json::array();
  CoveringOptions opt;
  opt.samples = static_cast<std::size_t>(samples);
  opt.seed = seed;
  for (double sigma : sigmas) {
    for (int k : ks) {
      const Covering cov = build_suarez_covering(sigma, k, static_cast<std::size_t>(n), beta_max, opt);
      json j = to_json(cov);
      j["cells_per_level"] = cov.levels.empty() ? 0 : cov.levels.front().size();
      if (!emit_cells) j.erase("cells");
      int worst = 0;
      for (int o : cov.level_overlap) worst = std::max(worst, o);
      suarez.push_back(std::move(j));
      out.table.rows.push_back({"suarez", f17(sigma), std::to_string(k), std::to_string(cov.levels.front().size()),
                                std::to_string(worst), std::to_string(cov.overlap_bound), f17(cov.diameter_bound),
                                std::to_string(cov.samples)});
    }
  }
  out.results = json{{"cr_lattice", std::move(cr)}, {"suarez", std::move(suarez)}, {"violations", 0}};
  return out;
}

Outcome carleson(Cfg& c) {
  const Common k = read_common(c, 12);
  const double r = c.num("radius", 1.0);
  if (!(r > 0.0)) c.fail("radius", "must be positive");
  const auto moduli = c.ladder("grid_moduli", {0.0, 0.3, 0.6, 0.9, 0.99});
  require_range(c, "grid_moduli", moduli, 0.0, 1.0);
  const int angles = c.integer("grid_angles", 8);
  if (angles < 1) c.fail("grid_angles", "must be positive");
  std::vector<std::string> names;
  std::vector<Measure> measures;
  for (Cfg& m : c.objects("measures", json::array({json{{"kind", "volume"}, {"name", "volume"}},
                                                   json{{"kind", "mu_rho"}, {"rho", 1.0}, {"name", "mu_1"}}}))) {
    names.push_back(m.str("name", "measure_" + std::to_string(names.size())));
    measures.push_back(parse_measure(m, k.n, k.quad));
  }
  c.finish();

  RadialGrid grid;
  grid.moduli = moduli;
  grid.angles = angles;
  const auto pts = grid.points(k.n);
  Outcome out;
  out.table.header = {"measure", "rkm", "geometric", "carleson", "max_ratio"};
  json rows = json::array();
  for (std::size_t i = 0; i < measures.size(); ++i) {
    const GridSup a = rkm_norm(measures[i], pts);
    const GridSup b = geometric_norm(measures[i], r, pts);
    const double cc = carleson_constant(measures[i], k.basis);
    const double hi = std::max({a.value, b.value, cc});
    const double lo = std::min({a.value, b.value, cc});
    const double ratio = lo > 0.0 ? hi / lo : (hi > 0.0 ? INFINITY : 1.0);
    rows.push_back(json{{"measure", names[i]},
                        {"rkm", a.value},
                        {"rkm_argmax", to_json(a.argmax)},
                        {"geometric", b.value},
                        {"geometric_argmax", to_json(b.argmax)},
                        {"carleson", cc},
                        {"max_ratio", std::isfinite(ratio) ? json(ratio) : json("inf")}});
    out.table.rows.push_back({names[i], f17(a.value), f17(b.value), f17(cc), f17(ratio)});
  }
  out.results = json{{"grid_size", pts.size()}, {"rows", std::move(rows)}};
  return out;
}

Outcome berezin_profile(Cfg& c) {
  const Common k = read_common(c, 12);
  Cfg oc = c.sub("operator");
  const TruncatedOperator s = parse_operator(oc, k.basis, k.quad);
  const int per_axis = c.integer("directions", 8);
  if (per_axis < 1) c.fail("directions", "must be positive");
  const double max_tail = c.num("max_tail", kDefaultMaxTail);
  if (!(max_tail > 0.0)) c.fail("max_tail", "must be positive");
  // Default: five radii up to the largest modulus the truncation resolves.
  const double edge = admissible_radius(k.degree, max_tail);
  std::vector<double> def_radii;
  for (int i = 0; i < 5; ++i) def_radii.push_back(edge * i / 4.0);
  const auto radii = c.ladder("radii", def_radii);
  require_range(c, "radii", radii, 0.0, 1.0);
  c.finish();

  const auto dirs = directions(k.n, per_axis);
  std::vector<BerezinProfile> profiles;
  for (const auto& d : dirs) profiles.push_back(decay_profile(s, d, radii, max_tail));
  Outcome out;
  for (std::size_t l = 0; l < k.n; ++l) out.table.header.push_back("dir_arg_" + std::to_string(l + 1));
  for (const char* h : {"radius", "re", "im", "tail_bound"}) out.table.header.emplace_back(h);
  json jp = json::array();
  for (const auto& p : profiles) {
    json args = json::array();
    for (cplx e : p.direction) args.push_back(std::arg(e));
    json vals = json::array();
    for (cplx v : p.values) vals.push_back(complex_json(v));
    jp.push_back(json{{"direction_args", args}, {"radii", p.radii}, {"values", vals}, {"tails", p.tails}});
    for (std::size_t i = 0; i < p.radii.size(); ++i) {
      std::vector<std::string> row;
      for (cplx e : p.direction) row.push_back(f17(std::arg(e)));
      row.push_back(f17(p.radii[i]));
      row.push_back(f17(p.values[i].real()));
      row.push_back(f17(p.values[i].imag()));
      row.push_back(f17(p.tails[i]));
      out.table.rows.push_back(std::move(row));
    }
  }
  out.results = json{{"profiles", std::move(jp)}};
  return out;
}

Outcome approx_identity(Cfg& c) {
  const Common k = read_common(c, 12);
  const double beta_max = c.num("beta_max", 11.0);
  const auto rhos = c.ladder("rho_ladder", {0.5, 0.25, 0.125});
  for (double r : rhos) {
    if (!(r > 0.0)) c.fail("rho_ladder", "entries must be positive");
  }
  c.finish();

  Outcome out;
  out.table.header = {"rho", "error", "error_inner", "ratio_to_previous"};
  std::vector<double> errs;
  json rows = json::array();
  for (double rho : rhos) {
    const ApproxIdentityResult r = approx_identity_error(rho, k.basis, beta_max);
    const double ratio = errs.empty() ? NAN : r.error / errs.back();
    errs.push_back(r.error);
    rows.push_back(json{{"rho", rho},
                        {"error", r.error},
                        {"error_inner", r.error_inner},
                        {"ratio_to_previous", std::isnan(ratio) ? json(nullptr) : json(ratio)}});
    out.table.rows.push_back({f17(rho), f17(r.error), f17(r.error_inner), std::isnan(ratio) ? "" : f17(ratio)});
  }
  const bool dec = strictly_decreasing(errs);
  out.results = json{{"rows", std::move(rows)}, {"strictly_decreasing", dec}};
  out.table.notes.push_back(std::string("strictly_decreasing: ") + (dec ? "true" : "false"));
  return out;
}

Outcome bk_approx(Cfg& c) {
  const int n = c.integer("n", 1);
  if (n < 1 || n > 2) c.fail("n", "must be 1 or 2");
  const json syms = c.take("symbols", json::array({"defect", json{{"name", "real_part"}, {"axis", 0}}}));
  if (!syms.is_array() || syms.empty()) c.fail("symbols", "expected a nonempty array");
  std::vector<Symbol> symbols;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < syms.size(); ++i) {
    symbols.push_back(parse_symbol(syms[i], static_cast<std::size_t>(n), "symbols[" + std::to_string(i) + "]"));
    labels.push_back(symbols.back().name.empty() ? syms[i].dump() : symbols.back().name);
  }
  const auto ks = c.int_ladder("k_list", {1, 8, 32});
  if (ks.front() < 0) c.fail("k_list", "entries must be nonnegative");
  const auto moduli = c.ladder("grid_moduli", {0.0, 0.3, 0.6, 0.9});
  require_range(c, "grid_moduli", moduli, 0.0, 1.0);
  const int angles = c.integer("grid_angles", 8);
  if (angles < 1) c.fail("grid_angles", "must be positive");
  const int panel = c.integer("panel_nodes", 16);
  if (panel < 1) c.fail("panel_nodes", "must be positive");
  c.finish();

  RadialGrid grid;
  grid.moduli = moduli;
  grid.angles = angles;
  const auto pts = grid.points(static_cast<std::size_t>(n));
  Outcome out;
  out.table.header = {"symbol", "k", "sup_error", "grid_size"};
  json rows = json::array();
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    std::vector<double> errs;
    json per_k = json::array();
    for (int kk : ks) {
      const GridSup e = approx_symbol_error(symbols[i], kk, pts, panel);
      errs.push_back(e.value);
      per_k.push_back(json{{"k", kk}, {"sup_error", e.value}, {"argmax", to_json(e.argmax)}});
      out.table.rows.push_back({labels[i], std::to_string(kk), f17(e.value), std::to_string(e.grid_size)});
    }
    rows.push_back(json{{"symbol", labels[i]}, {"errors", std::move(per_k)}, {"strictly_decreasing", strictly_decreasing(errs)}});
  }
  out.results = json{{"grid_size", pts.size()}, {"rows", std::move(rows)}};
  return out;
}

Outcome segmented(Cfg& c, std::uint64_t seed) {
  const Common k = read_common(c, 12);
  const double beta_max = c.num("beta_max", 3.0);
  Cfg oc = c.sub("operator");
  const TruncatedOperator s = parse_operator(oc, k.basis, k.quad, "toeplitz");
  Cfg mc = c.sub("measure");
  const Measure mu = parse_measure(mc, k.n, k.quad, "mu_rho");
  if (!std::holds_alternative<AtomicMeasure>(mu)) c.fail("measure", "must be atomic (mu_rho, atoms or file)");
  const auto sigmas = c.ladder("sigma_ladder", {1.0, 2.0, 3.0});
  for (double x : sigmas) {
    if (!(x > 0.0)) c.fail("sigma_ladder", "entries must be positive");
  }
  const int kk = c.integer("k", 0);
  if (kk < 0) c.fail("k", "must be nonnegative");
  const int samples = c.integer("samples", 2000);
  if (samples < 1) c.fail("samples", "must be positive");
  c.finish();

  CoveringOptions opt;
  opt.samples = static_cast<std::size_t>(samples);
  opt.seed = seed;
  Outcome out;
  out.table.header = {"sigma", "error", "cells", "atoms"};
  std::vector<double> errs;
  json rows = json::array();
  for (double sigma : sigmas) {
    const Covering cov = build_suarez_covering(sigma, kk, k.n, beta_max, opt);
    const SegmentedResult r = segmented_error(s, std::get<AtomicMeasure>(mu), cov);
    errs.push_back(r.error);
    rows.push_back(json{{"sigma", sigma}, {"error", r.error}, {"cells", r.cells}, {"atoms", r.atoms}});
    out.table.rows.push_back({f17(sigma), f17(r.error), std::to_string(r.cells), std::to_string(r.atoms)});
  }
  const bool dec = strictly_decreasing(errs);
  out.results = json{{"rows", std::move(rows)}, {"strictly_decreasing", dec}};
  out.table.notes.push_back(std::string("strictly_decreasing: ") + (dec ? "true" : "false"));
  return out;
}

Outcome estimators(Cfg& c) {
  const Common k = read_common(c, 12);
  Cfg oc = c.sub("operator");
  const TruncatedOperator s = parse_operator(oc, k.basis, k.quad);
  Cfg cc = c.sub("c");
  const auto c_ladder = cc.ladder("r_ladder", {0.5, 0.7, 0.9, 0.95});
  require_range(cc, "r_ladder", c_ladder, 0.0, 1.0);
  cc.finish();
  Cfg bc = c.sub("b");
  const double b_radius = bc.num("radius", 1.0);
  if (!(b_radius > 0.0)) bc.fail("radius", "must be positive");
  const auto b_moduli = bc.ladder("center_moduli", {0.0, 0.5, 0.8});
  require_range(bc, "center_moduli", b_moduli, 0.0, 1.0);
  const int b_dirs = bc.integer("directions", 4);
  if (b_dirs < 1) bc.fail("directions", "must be positive");
  bc.finish();
  Cfg ac = c.sub("a");
  const double a_radius = ac.num("radius", 0.5);
  const double a_rho = ac.num("rho", 0.5);
  if (!(a_radius > 0.0) || !(a_rho > 0.0)) ac.fail("radius", "radius and rho must be positive");
  const auto a_moduli = ac.ladder("center_moduli", {0.0, 0.5, 0.8});
  require_range(ac, "center_moduli", a_moduli, 0.0, 1.0);
  ac.finish();
  c.finish();

  EstimatorReport rc{'c', "r", k.degree, {}, {}, 0.0};
  for (double r : c_ladder) {
    rc.params.push_back(r);
    rc.values.push_back(estimator_c(s, r));
  }
  rc.value = rc.values.back();
  EstimatorReport rb{'b', "center_modulus", k.degree, {}, {}, 0.0};
  const auto dirs = directions(k.n, b_dirs);
  for (double m : b_moduli) {
    rb.params.push_back(m);
    rb.values.push_back(estimator_b(s, b_radius, centers_at(m, dirs)));
  }
  rb.value = rb.values.back();
  EstimatorReport ra{'a', "center_modulus", k.degree, {}, {}, 0.0};
  json a_extra = json::array();
  for (double m : a_moduli) {
    const PolyPoint z(std::vector<cplx>(k.n, cplx(m, 0.0)));
    const EstimatorAResult r = estimator_a(s, a_radius, z, a_rho);
    ra.params.push_back(m);
    ra.values.push_back(r.value);
    a_extra.push_back(json{{"center_modulus", m}, {"lattice_points", r.lattice_points}, {"rank", r.rank},
                           {"max_tail", r.max_tail}});
  }
  ra.value = ra.values.back();

  Outcome out;
  out.table.header = {"estimator", "parameter", "value"};
  for (const EstimatorReport* rep : {&ra, &rb, &rc}) {
    for (std::size_t i = 0; i < rep->params.size(); ++i) {
      out.table.rows.push_back({std::string(1, rep->kind), f17(rep->params[i]), f17(rep->values[i])});
    }
  }
  json ja = to_json(ra);
  ja["spans"] = std::move(a_extra);
  out.results = json{{"a", std::move(ja)}, {"b", to_json(rb)}, {"c", to_json(rc)}};
  return out;
}

Outcome verdict(Cfg& c) {
  const Common k = read_common(c, 240);
  Cfg oc = c.sub("operator");
  const TruncatedOperator s = parse_operator(oc, k.basis, k.quad);
  VerdictConfig v;
  v.directions = c.integer("directions", v.directions);
  v.profile_points = c.integer("profile_points", v.profile_points);
  v.max_tail = c.num("max_tail", v.max_tail);
  v.min_admissible_radius = c.num("min_admissible_radius", v.min_admissible_radius);
  v.vanishing_slope = c.num("vanishing_slope", v.vanishing_slope);
  v.nonvanishing_slope = c.num("nonvanishing_slope", v.nonvanishing_slope);
  v.eps_compact_rel = c.num("eps_compact_rel", v.eps_compact_rel);
  v.eps_radius = c.num("eps_radius", v.eps_radius);
  v.c_ladder = c.ladder("c_ladder", v.c_ladder);
  require_range(c, "c_ladder", v.c_ladder, 0.0, 1.0);
  v.b_radius = c.num("b_radius", v.b_radius);
  if (v.directions < 1) c.fail("directions", "must be positive");
  if (v.profile_points < 2) c.fail("profile_points", "must be at least 2");
  if (!(v.max_tail > 0.0)) c.fail("max_tail", "must be positive");
  if (!(v.vanishing_slope > v.nonvanishing_slope)) c.fail("vanishing_slope", "must exceed nonvanishing_slope");
  c.finish();

  const VerdictReport r = compactness_verdict(s, v);
  Outcome out;
  out.table.header = {"quantity", "parameter", "value"};
  const std::vector<double> radii = r.profiles.empty() ? std::vector<double>{} : r.profiles.front().radii;
  for (std::size_t i = 0; i < r.radial_max.size() && i < radii.size(); ++i) {
    out.table.rows.push_back({"berezin_radial_max", f17(radii[i]), f17(r.radial_max[i])});
  }
  for (std::size_t i = 0; i < r.estimator_c_trend.params.size(); ++i) {
    out.table.rows.push_back({"estimator_c", f17(r.estimator_c_trend.params[i]), f17(r.estimator_c_trend.values[i])});
  }
  for (std::size_t i = 0; i < r.estimator_b_trend.params.size(); ++i) {
    out.table.rows.push_back({"estimator_b", f17(r.estimator_b_trend.params[i]), f17(r.estimator_b_trend.values[i])});
  }
  out.table.rows.push_back({"decay_slope", "", f17(r.decay_slope)});
  out.table.rows.push_back({"operator_norm", "", f17(r.operator_norm)});
  out.table.rows.push_back({"admissible_radius", "", f17(r.admissible_radius)});
  out.table.notes.push_back("verdict: " + to_string(r.verdict));
  out.results = to_json(r, v);
  return out;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"lattice",  "carleson",  "berezin-profile", "approx-identity",
                                              "bk-approx", "segmented", "estimators",      "verdict"};
  return names;
}

Outcome run_experiment(const std::string& name, Cfg& c, std::uint64_t seed) {
  if (name == "lattice") return lattice(c, seed);
  if (name == "carleson") return carleson(c);
  if (name == "berezin-profile") return berezin_profile(c);
  if (name == "approx-identity") return approx_identity(c);
  if (name == "bk-approx") return bk_approx(c);
  if (name == "segmented") return segmented(c, seed);
  if (name == "estimators") return estimators(c);
  if (name == "verdict") return verdict(c);
  throw ConfigError("unknown experiment '" + name + "'");
}

}  // namespace bergman::cli
