#pragma once

#include <string>

#include "json.hpp"

#include "cencon/balanced.hpp"
#include "cencon/dynamics.hpp"
#include "cencon/solver.hpp"

namespace cencon {

using json = nlohmann::json;

// --- groups ---------------------------------------------------------------
// {name, dim, order, elements: [[row-major entries]], generators: [indices]}
json group_to_json(const FiniteGroup& G);
FiniteGroup group_from_json(const json& j);

// --- configurations ---------------------------------------------------------
// {dim, bodies: [{x: [..], m: real}], labels?: [text]}
json config_to_json(const Configuration& C);
Configuration config_from_json(const json& j);

// --- ansatz -----------------------------------------------------------------
// {group: "D_3" | {name, param}, slots: [{type: "Z2^k'", mass: 1.0}],
//  exponent: 1.0}
SymmetricAnsatz ansatz_from_json(const json& j);
json ansatz_to_json(const SymmetricAnsatz& A);

// --- Burnside-type text grammar ----------------------------------------------
//   burnside = term { "+" term }
//   term     = count "(" label ")" { "'" }
//   count    = "eps" | integer
// Primes inside the parentheses belong to the class label; primes after the
// closing parenthesis select the stratum component.
std::string burnside_to_string(const TypeTable& table, const BurnsideType& t);
BurnsideType burnside_from_string(const TypeTable& table,
                                  const std::string& text);

// Slot type token: "(Z2^k)'" or the shorthand "Z2^k'" (exact class labels win
// over trailing-prime component syntax). Returns (class_id, component).
std::pair<int, int> parse_type_token(const TypeTable& table,
                                     const std::string& token);
std::string type_token(const TypeTable& table, int class_id, int component);

// --- results ----------------------------------------------------------------
json critical_point_to_json(const CriticalPoint& cp);
json census_to_json(const Census& census);
json balanced_to_json(const BalancedResult& r);
json inertia_to_json(const InertiaData& data);

// --- CSV ----------------------------------------------------------------------
std::string points_csv(const Configuration& C);
std::string trajectory_csv(const Trajectory& tr);

// --- files ---------------------------------------------------------------------
json load_json_file(const std::string& path);
void save_text_file(const std::string& path, const std::string& text);

}  // namespace cencon
