#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "bergman/io.hpp"
#include "bergman/measures.hpp"
#include "bergman/symbol.hpp"

namespace bergman::cli {

/// Echo of the effective config. std::map-backed so references to nested objects stay valid.
using Echo = nlohmann::json;

/// Read-side view of one JSON object. Every lookup records the value actually used
/// (default included) in `echo`, and finish() rejects keys that were never read.
class Cfg {
 public:
  Cfg(const json& raw, Echo& echo, std::string path);

  double num(const std::string& key, double def);
  int integer(const std::string& key, int def);
  std::uint64_t seed(const std::string& key, std::uint64_t def);
  bool flag(const std::string& key, bool def);
  std::string str(const std::string& key, const std::string& def);
  /// Nonempty and strictly monotone (either direction).
  std::vector<double> ladder(const std::string& key, const std::vector<double>& def);
  std::vector<int> int_ladder(const std::string& key, const std::vector<int>& def);
  bool has(const std::string& key) const { return raw_.contains(key); }
  /// Raw sub-document, echoed as given.
  json take(const std::string& key, const json& def);
  /// Nested object with its own key tracking.
  Cfg sub(const std::string& key);
  /// Nonempty array of nested objects.
  std::vector<Cfg> objects(const std::string& key, const json& def);

  void finish() const;
  [[noreturn]] void fail(const std::string& key, const std::string& what) const;

 private:
  const json* lookup(const std::string& key);

  json raw_;
  Echo* echo_;
  std::string path_;
  std::set<std::string> used_;
};

QuadratureSpec parse_quadrature(Cfg& c, int max_degree);
Symbol parse_symbol(const json& spec, std::size_t n, const std::string& where);
/// kinds: volume, density, mu_rho, atoms, file; optional "scale".
Measure parse_measure(Cfg& c, std::size_t n, const QuadratureSpec& quad,
                      const std::string& default_kind = "volume");
/// kinds: identity, zero, rank_one_constants, toeplitz, toeplitz_measure, file; optional "scale".
TruncatedOperator parse_operator(Cfg& c, const MonomialBasis& basis, const QuadratureSpec& quad,
                                 const std::string& default_kind = "identity");

json read_json_file(const std::string& path);

}  // namespace bergman::cli
