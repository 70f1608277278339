#include "bergman/io.hpp"

#include <cmath>
#include <cstdio>

#include "bergman/errors.hpp"

namespace bergman {

namespace {

const char* kind_name(CellKind k) {
  switch (k) {
    case CellKind::Disc:
      return "disc";
    case CellKind::Sector:
      return "sector";
    case CellKind::Point:
      break;
  }
  return "point";
}

}  // namespace

std::string fmt17(double v) {
  if (v == 0.0) v = 0.0;  // no "-0" in output
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json complex_json(cplx c) { return json::array({c.real(), c.imag()}); }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw ConfigError("expected a complex number [re, im], got " + j.dump());
}

json to_json(const PolyPoint& p) {
  json out = json::array();
  for (const cplx& c : p.coords()) out.push_back(complex_json(c));
  return out;
}

PolyPoint point_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ConfigError("expected a point [[re, im], ...], got " + j.dump());
  std::vector<cplx> c;
  for (const auto& x : j) c.push_back(complex_from_json(x));
  try {
    return PolyPoint(std::move(c));
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

json to_json(const AtomicMeasure& mu) {
  json out = json::array();
  for (const auto& a : mu.atoms) out.push_back(json{{"coords", to_json(a.point)}, {"weight", complex_json(a.weight)}});
  return out;
}

AtomicMeasure atomic_measure_from_json(const json& j) {
  if (!j.is_array()) throw ConfigError("atomic measure must be a list of {coords, weight}");
  AtomicMeasure mu;
  for (const auto& a : j) {
    if (!a.contains("coords") || !a.contains("weight")) throw ConfigError("atom needs coords and weight: " + a.dump());
    mu.atoms.push_back(Atom{point_from_json(a["coords"]), complex_from_json(a["weight"])});
  }
  const std::size_t n = mu.dim();
  for (const auto& a : mu.atoms) {
    if (a.point.dim() != n) throw ConfigError("atoms of different dimensions");
  }
  return mu;
}

json to_json(const TruncatedOperator& s) {
  json m = json::array();
  for (Eigen::Index i = 0; i < s.matrix.rows(); ++i) {
    for (Eigen::Index k = 0; k < s.matrix.cols(); ++k) m.push_back(complex_json(s.matrix(i, k)));
  }
  return json{{"basis", {{"n", s.basis.dim()}, {"D", s.basis.max_degree()}}}, {"matrix", std::move(m)}};
}

TruncatedOperator operator_from_json(const json& j) {
  if (!j.contains("basis") || !j.contains("matrix")) throw ConfigError("operator needs basis and matrix");
  const auto n = j["basis"].at("n").get<std::size_t>();
  const int d = j["basis"].at("D").get<int>();
  const MonomialBasis basis(n, d);
  const auto size = static_cast<Eigen::Index>(basis.size());
  const json& m = j["matrix"];
  if (!m.is_array() || static_cast<Eigen::Index>(m.size()) != size * size) {
    throw ConfigError("operator matrix must hold (D+1)^(2n) entries");
  }
  Mat a(size, size);
  for (Eigen::Index i = 0; i < size; ++i) {
    for (Eigen::Index k = 0; k < size; ++k) a(i, k) = complex_from_json(m[static_cast<std::size_t>(i * size + k)]);
  }
  return {basis, std::move(a)};
}

json to_json(const DiscCell& c) {
  json out{{"kind", kind_name(c.kind)}, {"ring", c.ring}, {"sector", c.sector}, {"sectors", c.sectors},
           {"b_in", c.b_in}, {"b_out", c.b_out}};
  if (c.kind == CellKind::Sector) {
    out["theta_lo"] = c.theta_lo();
    out["theta_width"] = c.theta_width();
  }
  return out;
}

json to_json(const LatticeCell& c) {
  json factors = json::array();
  for (const auto& f : c.factors) factors.push_back(to_json(f));
  return json{{"index", c.index}, {"center", to_json(c.center)}, {"factors", std::move(factors)},
              {"volume", c.volume}, {"enlargement", c.enlargement}};
}

json to_json(const Covering& c) {
  json cells = json::array();
  if (!c.levels.empty()) {
    for (const auto& cell : c.levels.front()) cells.push_back(to_json(cell));
  }
  json enl = json::array();
  for (const auto& level : c.levels) enl.push_back(level.empty() ? 0.0 : level.front().enlargement);
  return json{{"sigma", c.sigma},
              {"k", c.k},
              {"n", c.n},
              {"beta_max", c.beta_max},
              {"base_rho", c.base_rho},
              {"level_enlargement", std::move(enl)},
              {"level_overlap", c.level_overlap},
              {"overlap_bound", c.overlap_bound},
              {"diameter_bound", c.diameter_bound},
              {"samples", c.samples},
              {"cells", std::move(cells)}};
}

json to_json(const EstimatorReport& r) {
  json trend = json::array();
  for (std::size_t i = 0; i < r.params.size(); ++i) trend.push_back(json::array({r.params[i], r.values[i]}));
  return json{{"kind", std::string(1, r.kind)},
              {"parameter", r.parameter},
              {"max_degree", r.max_degree},
              {"value", r.value},
              {"trend", std::move(trend)}};
}

json to_json(const VerdictReport& r, const VerdictConfig& cfg) {
  json radii = json::array();
  if (!r.profiles.empty()) radii = r.profiles.front().radii;
  return json{{"verdict", to_string(r.verdict)},
              {"reason", r.reason},
              {"toeplitz_algebra_membership", "assumed, not decided"},
              {"operator_norm", r.operator_norm},
              {"admissible_radius", r.admissible_radius},
              {"eps_radius_admissible", r.eps_radius_admissible},
              {"below_eps_compact", r.below_eps_compact},
              {"decay_slope", r.decay_slope},
              {"radii", std::move(radii)},
              {"radial_max", r.radial_max},
              {"estimator_c", to_json(r.estimator_c_trend)},
              {"estimator_b", to_json(r.estimator_b_trend)},
              {"thresholds",
               {{"directions", cfg.directions},
                {"profile_points", cfg.profile_points},
                {"max_tail", cfg.max_tail},
                {"min_admissible_radius", cfg.min_admissible_radius},
                {"vanishing_slope", cfg.vanishing_slope},
                {"nonvanishing_slope", cfg.nonvanishing_slope},
                {"eps_compact_rel", cfg.eps_compact_rel},
                {"eps_radius", cfg.eps_radius},
                {"c_ladder", cfg.c_ladder},
                {"b_radius", cfg.b_radius}}}};
}

}  // namespace bergman
