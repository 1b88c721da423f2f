#pragma once

// JSON encodings of groups, maps, matrices, towers and analysis reports.
//
//   group  {"free_rank": 1, "invariant_factors": [2, 4]}
//   map    {"domain": group, "codomain": group, "matrix": [[...], ...]}
//   tower  {"prefix": [{"group": g0}, {"group": g1, "map_to_previous": m1}, ...],
//           "tail": {"kind": "constant_endo", "group": t, "endo": e,
//                    "map_to_previous": c}}
//          {"tail": {"kind": "zero"}}
//          {"kind": "S_of_A", "group": g, "multiplier": m}
//
// Integers may be JSON numbers or decimal strings; large values are written
// as strings. Inside a tower a map may omit domain/codomain, and an endo may
// be a bare integer m standing for multiplication by m.

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "dlim/filtration.hpp"
#include "dlim/integer_matrix.hpp"
#include "dlim/tower.hpp"

namespace dlim {

using Json = nlohmann::json;

/// Parses JSON text; syntax errors become ParseError with line and column.
Json parse_json(std::string_view text);

Json integer_to_json(const Integer& v);
Integer integer_from_json(const Json& j, const std::string& path = "");

Json to_json(const IntMatrix& m);
/// `cols` is needed to read a matrix with no rows.
IntMatrix matrix_from_json(const Json& j, std::size_t cols, const std::string& path = "");
/// A nonempty rectangular matrix.
IntMatrix matrix_from_json(const Json& j, const std::string& path = "");

Json to_json(const FgAbGroup& g);
FgAbGroup group_from_json(const Json& j, const std::string& path = "");

Json to_json(const GroupMap& f);
GroupMap map_from_json(const Json& j, const std::string& path = "");
/// Map whose domain and codomain are known from context; if present in the
/// JSON they must agree.
GroupMap map_from_json(const Json& j, const FgAbGroup& domain, const FgAbGroup& codomain,
                       const std::string& path = "");

/// Explicit prefix/tail form of the compacted tower.
Json to_json(const Tower& t);
Tower tower_from_json(const Json& j, const std::string& path = "");

Tower parse_tower(std::string_view text);
std::string print_tower(const Tower& t);

Json to_json(const SmithForm& snf);
Json to_json(const AnalysisReport& r);

}  // namespace dlim
