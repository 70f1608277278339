#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "bergman/basis.hpp"
#include "bergman/berezin.hpp"
#include "bergman/covering.hpp"
#include "bergman/essential.hpp"
#include "bergman/measure_types.hpp"

namespace bergman {

using json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "bergman-kit 0.1.0";

/// Shortest-free fixed formatting: 17 significant digits, so reruns diff byte for byte.
std::string fmt17(double v);

json complex_json(cplx c);
/// Accepts [re, im] or a plain real.
cplx complex_from_json(const json& j);

json to_json(const PolyPoint& p);
PolyPoint point_from_json(const json& j);

/// {coords: [[re, im], ...], weight: [re, im]} per atom.
json to_json(const AtomicMeasure& mu);
AtomicMeasure atomic_measure_from_json(const json& j);

/// {basis: {n, D}, matrix: [[re, im], ...]} with the matrix flattened row-major.
json to_json(const TruncatedOperator& s);
TruncatedOperator operator_from_json(const json& j);

json to_json(const DiscCell& c);
json to_json(const LatticeCell& c);
/// Parameters, measured overlap and diameter bound, and the level-0 cells.
json to_json(const Covering& c);

json to_json(const EstimatorReport& r);
json to_json(const VerdictReport& r, const VerdictConfig& cfg);

}  // namespace bergman
