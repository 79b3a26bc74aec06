#include "menages/io.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <sstream>

#include "menages/errors.hpp"

namespace menages {

DisplacementSet parse_set(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (!s.empty() && s.front() == '{') {
    if (s.back() != '}') throw InvalidInput("unbalanced braces in set '" + std::string(text) + "'");
    s = s.substr(1, s.size() - 2);
  }
  DisplacementSet out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw InvalidInput("empty element in set '" + std::string(text) + "'");
    BigInt z = parse_bigint(item);
    if (!z.fits_sint_p()) throw InvalidInput("set element out of range: " + item);
    out.insert(static_cast<int>(z.get_si()));
  }
  if (!s.empty() && s.back() == ',') throw InvalidInput("trailing comma in set '" + std::string(text) + "'");
  return out;
}

std::string format_set(const DisplacementSet& s) {
  std::string out = "{";
  bool first = true;
  for (int d : s) {
    if (!first) out += ",";
    out += std::to_string(d);
    first = false;
  }
  return out + "}";
}

Matrix01 parse_matrix(std::istream& in) {
  Matrix01 m;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<int> row;
    bool comment = false;
    for (char c : line) {
      if (c == '#') {
        comment = true;
        break;
      }
      if (c == '0' || c == '1') row.push_back(c - '0');
      else if (c == ' ' || c == '\t' || c == ',' || c == '\r') continue;
      else throw InvalidInput(std::string("unexpected character '") + c + "' in matrix");
    }
    if (row.empty()) {
      if (comment || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    }
    if (!row.empty()) m.push_back(std::move(row));
  }
  for (const auto& row : m) {
    if (row.size() != m.size()) {
      throw InvalidInput("matrix is not square: " + std::to_string(m.size()) + " rows, a row of length " +
                         std::to_string(row.size()));
    }
  }
  return m;
}

Matrix01 parse_matrix_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_matrix(in);
}

json board_to_json(const Board& b) { return json{{"n", b.size()}, {"rows", b.rows()}}; }

Board board_from_json(const json& j) {
  try {
    return Board(j.at("n").get<int>(), j.at("rows").get<std::vector<std::vector<int>>>());
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("bad board JSON: ") + e.what());
  }
}

json poly_to_json(const IntPoly& p) {
  json arr = json::array();
  for (const auto& c : p.coeffs()) arr.push_back(to_decimal(c));
  return arr;
}

IntPoly poly_from_json(const json& j, char var) {
  if (!j.is_array()) throw InvalidInput("polynomial JSON must be an array of decimal strings");
  std::vector<BigInt> coeffs;
  for (const auto& c : j) {
    if (c.is_string()) coeffs.push_back(parse_bigint(c.get<std::string>()));
    else if (c.is_number_integer()) coeffs.emplace_back(c.get<long>());
    else throw InvalidInput("polynomial coefficient must be a decimal string");
  }
  return IntPoly(std::move(coeffs), var);
}

json to_json(const CFiniteRec& rec) {
  json coeffs = json::array(), initial = json::array();
  for (const auto& c : rec.coeffs) coeffs.push_back(poly_to_json(c));
  for (const auto& r : rec.initial) initial.push_back(poly_to_json(r));
  return json{{"kind", "cfinite"},   {"order", rec.order},     {"degree", rec.degree()},
              {"coeffs", coeffs},    {"initial", initial},     {"valid_from", rec.start}};
}

json to_json(const HolonomicRec& rec) {
  json coeffs = json::array(), initial = json::array();
  for (const auto& p : rec.coeffs) coeffs.push_back(poly_to_json(p));
  for (const auto& a : rec.initial) initial.push_back(to_decimal(a));
  return json{{"kind", "holonomic"}, {"order", rec.order},     {"degree", rec.degree},
              {"coeffs", coeffs},    {"initial", initial},     {"valid_from", rec.valid_from}};
}

json to_json(const RationalGF& gf) {
  return json{{"numerator", poly_to_json(gf.numerator)}, {"denominator", poly_to_json(gf.denominator)}};
}

CFiniteRec cfinite_from_json(const json& j) {
  try {
    CFiniteRec rec;
    rec.order = j.at("order").get<int>();
    for (const auto& c : j.at("coeffs")) rec.coeffs.push_back(poly_from_json(c, 't'));
    for (const auto& r : j.at("initial")) rec.initial.push_back(poly_from_json(r, 't'));
    rec.start = j.at("valid_from").get<long>();
    if (static_cast<int>(rec.coeffs.size()) != rec.order || static_cast<int>(rec.initial.size()) != rec.order) {
      throw InvalidInput("C-finite JSON: order does not match coefficient count");
    }
    return rec;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("bad recurrence JSON: ") + e.what());
  }
}

HolonomicRec holonomic_from_json(const json& j) {
  try {
    HolonomicRec rec;
    rec.order = j.at("order").get<int>();
    rec.degree = j.at("degree").get<int>();
    for (const auto& c : j.at("coeffs")) rec.coeffs.push_back(poly_from_json(c, 'n'));
    for (const auto& a : j.at("initial")) rec.initial.push_back(parse_bigint(a.get<std::string>()));
    rec.valid_from = j.at("valid_from").get<long>();
    if (static_cast<int>(rec.coeffs.size()) != rec.order + 1) {
      throw InvalidInput("holonomic JSON: order does not match coefficient count");
    }
    return rec;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("bad recurrence JSON: ") + e.what());
  }
}

RationalGF gf_from_json(const json& j) {
  try {
    return RationalGF{poly_from_json(j.at("numerator"), 'x'), poly_from_json(j.at("denominator"), 'x')};
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("bad generating function JSON: ") + e.what());
  }
}

namespace {

std::string poly_list(const std::vector<IntPoly>& ps) {
  std::string out = "[";
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (i) out += ", ";
    out += ps[i].to_string();
  }
  return out + "]";
}

// Splits "[a, b], [c]" style text into the bracketed groups at depth 1.
std::vector<std::string> bracket_groups(std::string_view text) {
  std::vector<std::string> groups;
  int depth = 0;
  std::string cur;
  for (char c : text) {
    if (c == '[') {
      ++depth;
      if (depth == 2) cur.clear();
      else if (depth > 2) throw InvalidInput("nested brackets too deep");
      continue;
    }
    if (c == ']') {
      if (depth == 2) groups.push_back(cur);
      --depth;
      if (depth < 0) throw InvalidInput("unbalanced brackets");
      continue;
    }
    if (depth == 2) cur += c;
  }
  if (depth != 0) throw InvalidInput("unbalanced brackets");
  return groups;
}

std::vector<IntPoly> split_polys(const std::string& group) {
  std::vector<IntPoly> out;
  std::stringstream ss(group);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_poly(item, 't'));
  return out;
}

// Descending powers, "n - 1", for recurrence coefficients.
std::string descending(const IntPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int k = p.degree(); k >= 0; --k) {
    BigInt c = p.coeff(static_cast<std::size_t>(k));
    if (c == 0) continue;
    const bool neg = c < 0;
    if (neg) c = -c;
    if (out.empty()) out += neg ? "-" : "";
    else out += neg ? " - " : " + ";
    std::string mono = k == 0 ? "" : k == 1 ? std::string(1, p.var()) : std::string(1, p.var()) + "^" + std::to_string(k);
    if (mono.empty()) out += to_decimal(c);
    else if (c == 1) out += mono;
    else out += to_decimal(c) + "*" + mono;
  }
  return out;
}

}  // namespace

std::string format_cfinite(const CFiniteRec& rec) {
  return "[" + poly_list(rec.initial) + ", " + poly_list(rec.coeffs) + "]";
}

CFiniteRec parse_cfinite(std::string_view text, long start) {
  auto groups = bracket_groups(text);
  if (groups.size() != 2) throw InvalidInput("expected [[initial terms], [coefficients]]");
  CFiniteRec rec;
  rec.initial = split_polys(groups[0]);
  rec.coeffs = split_polys(groups[1]);
  rec.order = static_cast<int>(rec.coeffs.size());
  rec.start = start;
  if (rec.initial.size() != rec.coeffs.size()) throw InvalidInput("initial terms and coefficients differ in count");
  return rec;
}

std::string format_holonomic(const HolonomicRec& rec) {
  std::string out;
  for (int i = rec.order; i >= 0; --i) {
    IntPoly q = poly_shift(rec.coeffs[static_cast<std::size_t>(i)], -rec.order);
    if (q.is_zero()) continue;
    bool negative = q.coeffs().back() < 0;
    if (negative) q = -q;
    if (out.empty()) out += negative ? "-" : "";
    else out += negative ? " - " : " + ";
    const int back = rec.order - i;
    std::string term = back == 0 ? "a(n)" : "a(n-" + std::to_string(back) + ")";
    bool monic_monomial = q.coeffs().back() == 1 &&
                          std::count_if(q.coeffs().begin(), q.coeffs().end(), [](const BigInt& c) { return c != 0; }) == 1;
    if (q.degree() == 0 && q.coeff(0) == 1) out += term;
    else if (q.degree() == 0 || monic_monomial) out += descending(q) + "*" + term;
    else out += "(" + descending(q) + ")*" + term;
  }
  return out + " = 0";
}

std::string format_operator(const HolonomicRec& rec) { return poly_list(rec.coeffs); }

std::string format_gf(const RationalGF& gf, char var) {
  auto wrap = [](const std::string& s) {
    return s.find_first_of("+-", 1) == std::string::npos ? s : "(" + s + ")";
  };
  return wrap(gf.numerator.with_var(var).to_string()) + "/" + wrap(gf.denominator.with_var(var).to_string());
}

std::string join_terms(const std::vector<BigInt>& terms, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) out += sep;
    out += to_decimal(terms[i]);
  }
  return out;
}

}  // namespace menages
