#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "menages/commands.hpp"
#include "menages/errors.hpp"
#include "menages/io.hpp"

namespace py = pybind11;
using namespace menages;

namespace {

py::int_ to_py(const BigInt& z) { return py::int_(py::str(to_decimal(z))); }

py::list to_py(const std::vector<BigInt>& v) {
  py::list out;
  for (const auto& z : v) out.append(to_py(z));
  return out;
}

Mode parse_mode(const std::string& name) {
  if (name == "straight") return Mode::kStraight;
  if (name == "circular") return Mode::kCircular;
  if (name == "allowed") return Mode::kAllowed;
  throw InvalidInput("mode must be straight, circular or allowed, got '" + name + "'");
}

DisplacementSet to_set(const std::vector<int>& s) { return {s.begin(), s.end()}; }

Budgets budgets(int max_order, int max_tdeg, int max_complexity, int max_degree, int held_out) {
  Budgets b;
  b.max_order = max_order;
  b.max_tdeg = max_tdeg;
  b.max_complexity = max_complexity;
  b.max_degree = max_degree;
  b.held_out = held_out;
  return b;
}

py::tuple result(const CommandResult& r) { return py::make_tuple(r.status, r.out); }

Format fmt(bool json) { return json ? Format::kJson : Format::kText; }

}  // namespace

PYBIND11_MODULE(_menages, m) {
  m.doc() = "Exact counting of permutations with restricted displacements.";

  py::register_exception<Error>(m, "MenagesError", PyExc_ValueError);

  m.def(
      "rook_polynomial",
      [](const Matrix01& board, const std::string& branch) {
        if (branch != "fewest" && branch != "first-row") throw InvalidInput("branch must be fewest or first-row");
        IntPoly r = rook_polynomial(board_from_matrix(board),
                                    branch == "fewest" ? BranchRule::kFewestOnes : BranchRule::kFirstRow);
        return to_py(r.coeffs());
      },
      py::arg("board"), py::arg("branch") = "fewest");
  m.def(
      "count", [](const std::vector<int>& s, int n, const std::string& mode) {
        return to_py(count({to_set(s), n, parse_mode(mode)}));
      },
      py::arg("s"), py::arg("n"), py::arg("mode") = "straight");
  m.def(
      "seq", [](const std::vector<int>& s, int n, const std::string& mode) {
        Family fam(to_set(s), parse_mode(mode));
        return to_py(fam.counts(n));
      },
      py::arg("s"), py::arg("n"), py::arg("mode") = "straight");
  m.def(
      "count_allowed", [](const std::vector<int>& s, int n) { return to_py(count_allowed(to_set(s), n)); },
      py::arg("s"), py::arg("n"));
  m.def("touchard", [](int n) { return to_py(touchard(n)); }, py::arg("n"));
  m.def("permanent", [](const Matrix01& a) { return to_py(permanent(a)); }, py::arg("matrix"));

  m.def(
      "rookrec",
      [](const std::vector<int>& s, const std::string& mode, int max_order, int max_tdeg, int held_out, bool json) {
        Family fam(to_set(s), parse_mode(mode));
        return result(cmd_rookrec(fam, budgets(max_order, max_tdeg, 0, -1, held_out), fmt(json)));
      },
      py::arg("s"), py::arg("mode") = "straight", py::arg("max_order") = 12, py::arg("max_tdeg") = 12,
      py::arg("held_out") = 10, py::arg("json") = false);
  m.def(
      "info",
      [](const std::vector<int>& s, const std::string& mode, int l1, int l2, int max_complexity, int max_degree,
         int held_out, bool json) {
        Family fam(to_set(s), parse_mode(mode));
        return result(cmd_info(fam, budgets(12, 12, max_complexity, max_degree, held_out), l1, l2, fmt(json)));
      },
      py::arg("s"), py::arg("mode") = "straight", py::arg("l1") = 20, py::arg("l2") = 50,
      py::arg("max_complexity") = 10, py::arg("max_degree") = -1, py::arg("held_out") = 10, py::arg("json") = false);
  m.def(
      "gfbaltic",
      [](const std::vector<int>& s, int n, int max_order, int held_out, bool json) {
        Family fam(to_set(s), Mode::kAllowed);
        return result(cmd_gfbaltic(fam, budgets(max_order, 0, 0, -1, held_out), n, fmt(json)));
      },
      py::arg("s"), py::arg("n") = 0, py::arg("max_order") = 12, py::arg("held_out") = 10, py::arg("json") = false);
  m.def(
      "verify",
      [](const std::vector<int>& s, const std::string& mode, int n_max, bool json) {
        return result(cmd_verify(to_set(s), parse_mode(mode), n_max, fmt(json)));
      },
      py::arg("s"), py::arg("mode") = "straight", py::arg("n_max") = 8, py::arg("json") = false);
}
