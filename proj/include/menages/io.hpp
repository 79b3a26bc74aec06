#pragma once

// Text and JSON encodings shared by the CLI, the report writer and the
// Python module. Every big integer is carried as a decimal string in JSON.

#include <iosfwd>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "menages/board.hpp"
#include "menages/guess.hpp"

namespace menages {

using json = nlohmann::json;

/// "{-2,-1,1,2}", "-2,-1,1,2", "{}" or "" (empty set); whitespace ignored.
DisplacementSet parse_set(std::string_view text);
/// "{-2,-1,1,2}".
std::string format_set(const DisplacementSet& s);

/// Lines of 0/1 characters, optionally separated by spaces or commas.
/// Blank lines and lines starting with '#' are skipped.
Matrix01 parse_matrix(std::istream& in);
Matrix01 parse_matrix_text(std::string_view text);

json board_to_json(const Board& b);
Board board_from_json(const json& j);

json poly_to_json(const IntPoly& p);
IntPoly poly_from_json(const json& j, char var);

json to_json(const CFiniteRec& rec);
json to_json(const HolonomicRec& rec);
json to_json(const RationalGF& gf);
CFiniteRec cfinite_from_json(const json& j);
HolonomicRec holonomic_from_json(const json& j);
RationalGF gf_from_json(const json& j);

/// "[[R_start, ..., R_{start+d-1}], [c_1, ..., c_d]]".
std::string format_cfinite(const CFiniteRec& rec);
CFiniteRec parse_cfinite(std::string_view text, long start = 1);

/// The recurrence written backwards from the newest term, e.g.
/// "a(n) - (n - 1)*a(n-1) - (n - 1)*a(n-2) = 0".
std::string format_holonomic(const HolonomicRec& rec);
/// "[p_0, ..., p_d]" in the stored forward form sum p_i(n) a(n+i) = 0.
std::string format_operator(const HolonomicRec& rec);

/// "(1 - t)/(1 - t - t^2)" in the variable `var`.
std::string format_gf(const RationalGF& gf, char var = 't');

std::string join_terms(const std::vector<BigInt>& terms, std::string_view sep = ", ");

}  // namespace menages
