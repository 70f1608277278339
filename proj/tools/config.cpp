#include "config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "bergman/errors.hpp"
#include "bergman/essential.hpp"
#include "bergman/operators.hpp"

namespace bergman::cli {

Cfg::Cfg(const json& raw, Echo& echo, std::string path) : raw_(raw), echo_(&echo), path_(std::move(path)) {
  if (!raw_.is_object()) throw ConfigError(path_ + ": expected a JSON object");
  if (!echo_->is_object()) *echo_ = Echo::object();
}

void Cfg::fail(const std::string& key, const std::string& what) const {
  throw ConfigError(path_ + (path_.empty() ? "" : ".") + key + ": " + what);
}

const json* Cfg::lookup(const std::string& key) {
  used_.insert(key);
  auto it = raw_.find(key);
  return it == raw_.end() ? nullptr : &*it;
}

double Cfg::num(const std::string& key, double def) {
  const json* v = lookup(key);
  double x = def;
  if (v) {
    if (!v->is_number()) fail(key, "expected a number");
    x = v->get<double>();
  }
  if (!std::isfinite(x)) fail(key, "must be finite");
  (*echo_)[key] = x;
  return x;
}

int Cfg::integer(const std::string& key, int def) {
  const json* v = lookup(key);
  int x = def;
  if (v) {
    if (!v->is_number_integer()) fail(key, "expected an integer");
    x = v->get<int>();
  }
  (*echo_)[key] = x;
  return x;
}

std::uint64_t Cfg::seed(const std::string& key, std::uint64_t def) {
  const json* v = lookup(key);
  std::uint64_t x = def;
  if (v) {
    if (!v->is_number_integer() || v->get<long long>() < 0) fail(key, "expected a nonnegative integer");
    x = v->get<std::uint64_t>();
  }
  (*echo_)[key] = x;
  return x;
}

bool Cfg::flag(const std::string& key, bool def) {
  const json* v = lookup(key);
  bool x = def;
  if (v) {
    if (!v->is_boolean()) fail(key, "expected true or false");
    x = v->get<bool>();
  }
  (*echo_)[key] = x;
  return x;
}

std::string Cfg::str(const std::string& key, const std::string& def) {
  const json* v = lookup(key);
  std::string x = def;
  if (v) {
    if (!v->is_string()) fail(key, "expected a string");
    x = v->get<std::string>();
  }
  (*echo_)[key] = x;
  return x;
}

std::vector<double> Cfg::ladder(const std::string& key, const std::vector<double>& def) {
  const json* v = lookup(key);
  std::vector<double> x = def;
  if (v) {
    if (!v->is_array()) fail(key, "expected an array of numbers");
    x.clear();
    for (const auto& e : *v) {
      if (!e.is_number()) fail(key, "expected an array of numbers");
      x.push_back(e.get<double>());
    }
  }
  if (x.empty()) fail(key, "ladder must be nonempty");
  int dir = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) fail(key, "entries must be finite");
    if (i == 0) continue;
    const int d = x[i] > x[i - 1] ? 1 : (x[i] < x[i - 1] ? -1 : 0);
    if (d == 0 || (dir != 0 && d != dir)) fail(key, "ladder must be strictly monotone");
    dir = d;
  }
  (*echo_)[key] = x;
  return x;
}

std::vector<int> Cfg::int_ladder(const std::string& key, const std::vector<int>& def) {
  const json* v = lookup(key);
  std::vector<int> x = def;
  if (v) {
    if (!v->is_array()) fail(key, "expected an array of integers");
    x.clear();
    for (const auto& e : *v) {
      if (!e.is_number_integer()) fail(key, "expected an array of integers");
      x.push_back(e.get<int>());
    }
  }
  if (x.empty()) fail(key, "ladder must be nonempty");
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (x[i] <= x[i - 1]) fail(key, "ladder must be strictly increasing");
  }
  (*echo_)[key] = x;
  return x;
}

json Cfg::take(const std::string& key, const json& def) {
  const json* v = lookup(key);
  json x = v ? *v : def;
  (*echo_)[key] = Echo::parse(x.dump());
  return x;
}

Cfg Cfg::sub(const std::string& key) {
  const json* v = lookup(key);
  if (v && !v->is_object()) fail(key, "expected an object");
  Echo& e = (*echo_)[key];
  e = Echo::object();
  return Cfg(v ? *v : json::object(), e, path_.empty() ? key : path_ + "." + key);
}

std::vector<Cfg> Cfg::objects(const std::string& key, const json& def) {
  const json* v = lookup(key);
  const json& arr = v ? *v : def;
  if (!arr.is_array() || arr.empty()) fail(key, "expected a nonempty array of objects");
  Echo& e = (*echo_)[key];
  e = Echo::array();
  for (std::size_t i = 0; i < arr.size(); ++i) e.push_back(Echo::object());
  std::vector<Cfg> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_object()) fail(key, "expected a nonempty array of objects");
    out.emplace_back(arr[i], e[i], (path_.empty() ? key : path_ + "." + key) + "[" + std::to_string(i) + "]");
  }
  return out;
}

void Cfg::finish() const {
  for (const auto& [k, v] : raw_.items()) {
    if (!used_.count(k)) throw ConfigError(path_ + (path_.empty() ? "" : ".") + k + ": unknown key");
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

QuadratureSpec parse_quadrature(Cfg& c, int max_degree) {
  const QuadratureSpec def = QuadratureSpec::for_degree(max_degree);
  Cfg q = c.sub("quadrature");
  QuadratureSpec spec;
  spec.radial_nodes = q.integer("radial_nodes", def.radial_nodes);
  spec.angular_nodes = q.integer("angular_nodes", def.angular_nodes);
  spec.panel_nodes = q.integer("panel_nodes", def.panel_nodes);
  q.finish();
  if (spec.radial_nodes < 1 || spec.angular_nodes < 1 || spec.panel_nodes < 1) {
    throw ConfigError("quadrature: node counts must be positive");
  }
  return spec;
}

Symbol parse_symbol(const json& spec, std::size_t n, const std::string& where) {
  std::string name;
  std::size_t axis = 0;
  cplx value = 1.0;
  if (spec.is_string()) {
    name = spec.get<std::string>();
  } else if (spec.is_object() && spec.contains("name") && spec["name"].is_string()) {
    name = spec["name"].get<std::string>();
    for (const auto& [k, v] : spec.items()) {
      if (k == "name") continue;
      if (k == "axis") {
        if (!v.is_number_integer() || v.get<long long>() < 0) {
          throw ConfigError(where + ".axis: expected a nonnegative integer");
        }
        axis = v.get<std::size_t>();
      } else if (k == "value") {
        value = complex_from_json(v);
      } else {
        throw ConfigError(where + "." + k + ": unknown key");
      }
    }
  } else {
    throw ConfigError(where + ": expected a symbol name or {name, axis, value}");
  }
  if (axis >= n) throw ConfigError(where + ".axis: out of range for n = " + std::to_string(n));
  if (name == "constant") return symbols::constant(value);
  if (name == "abs2") return symbols::abs2(axis);
  if (name == "coordinate") return symbols::coordinate(axis);
  if (name == "real_part") return symbols::real_part(axis);
  if (name == "defect") return symbols::defect();
  if (name == "half_indicator") return symbols::half_indicator(axis);
  throw ConfigError(where + ": unknown symbol '" + name + "'");
}

Measure parse_measure(Cfg& c, std::size_t n, const QuadratureSpec& quad, const std::string& default_kind) {
  const std::string kind = c.str("kind", default_kind);
  const double scale = c.num("scale", 1.0);
  Measure out;
  if (kind == "volume" || kind == "density") {
    DensityMeasure d;
    d.n = n;
    d.quad = quad;
    d.density = kind == "volume" ? symbols::constant(1.0) : parse_symbol(c.take("symbol", "defect"), n, "symbol");
    d.density = d.density.scaled(scale);
    out = std::move(d);
  } else if (kind == "mu_rho") {
    const double rho = c.num("rho", 0.5);
    const double beta_max = c.num("beta_max", 3.0);
    if (!(rho > 0.0) || !(beta_max > 0.0)) throw ConfigError("mu_rho: rho and beta_max must be positive");
    out = mu_rho(rho, n, beta_max).scaled(scale);
  } else if (kind == "atoms" || kind == "file") {
    const json atoms = kind == "atoms" ? c.take("atoms", json::array()) : read_json_file(c.str("path", ""));
    AtomicMeasure mu = atomic_measure_from_json(atoms);
    if (!mu.atoms.empty() && mu.dim() != n) throw ConfigError("measure: atom dimension differs from n");
    out = mu.scaled(scale);
  } else {
    throw ConfigError("measure: unknown kind '" + kind + "'");
  }
  c.finish();
  return out;
}

TruncatedOperator parse_operator(Cfg& c, const MonomialBasis& basis, const QuadratureSpec& quad,
                                 const std::string& default_kind) {
  const std::string kind = c.str("kind", default_kind);
  const double scale = c.num("scale", 1.0);
  TruncatedOperator s;
  if (kind == "identity") {
    s = TruncatedOperator::identity(basis);
  } else if (kind == "zero") {
    s = TruncatedOperator::zero(basis);
  } else if (kind == "rank_one_constants") {
    Vec e = Vec::Zero(static_cast<Eigen::Index>(basis.size()));
    e[0] = 1.0;
    s = rank_one(basis, e, e);
  } else if (kind == "toeplitz") {
    s = toeplitz_symbol(parse_symbol(c.take("symbol", "abs2"), basis.dim(), "operator.symbol"), basis, quad);
  } else if (kind == "toeplitz_measure") {
    Cfg m = c.sub("measure");
    const Measure mu = parse_measure(m, basis.dim(), quad);
    if (!std::holds_alternative<AtomicMeasure>(mu)) {
      throw ConfigError("operator.measure: toeplitz_measure needs an atomic measure (use toeplitz for densities)");
    }
    s = toeplitz_measure(std::get<AtomicMeasure>(mu), basis);
  } else if (kind == "file") {
    s = operator_from_json(read_json_file(c.str("path", "")));
    if (!(s.basis == basis)) throw ConfigError("operator file: basis differs from the configured n and D");
  } else {
    throw ConfigError("operator: unknown kind '" + kind + "'");
  }
  c.finish();
  return s * scale;
}

}  // namespace bergman::cli
