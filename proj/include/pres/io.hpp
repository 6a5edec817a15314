#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "pres/families.hpp"
#include "pres/func.hpp"
#include "pres/solver.hpp"
#include "pres/stats.hpp"

namespace pres {

// Group spec strings:
//   gf:p^e[:c0,c1,...,1]   field, optional irreducible (constant first)
//   zn:n1xn2x...           direct product of cyclic groups
//   cayley:<path>          JSON file {"order": n, "add": [[...], ...]}
GroupPtr parse_group_spec(const std::string& spec,
                          int order_limit = GroupTable::default_order_limit);

// Function files: {"group": "<spec>", "table": [v0, ...]} or
// {"group": "gf:...", "poly": "<poly string>"}.
FuncTable function_from_json(const nlohmann::json& doc,
                             int order_limit = GroupTable::default_order_limit);
nlohmann::json function_to_json(const FuncTable& f);

nlohmann::json stats_to_json(const StatsReport& r);
// Fixed column order: q, V, u, M_0.., N_2.., delta, Nb, NB, A, lb, ub.
// Header always emitted; delta/NB/A cells are empty when unavailable.
std::string stats_to_csv(const StatsReport& r);

nlohmann::json certificate_to_json(const PresCertificate& c);

nlohmann::json family_to_json(const FamilyPrediction& p);
nlohmann::json planar_check_to_json(const PlanarCheck& c);

nlohmann::json pipeline_to_json(const PipelineReport& r);
// One row per candidate: candidate, shifts (semicolon-joined), delta_gf, bound.
std::string pipeline_to_csv(const PipelineReport& r);

std::string mpz_to_string(const mpz_class& v);
std::string mpq_to_string(const mpq_class& v);
mpq_class parse_rational(const std::string& text);

} // namespace pres
