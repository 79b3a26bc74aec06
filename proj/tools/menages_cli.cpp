// menages: rook polynomials, restricted-permutation counts and guessed
// recurrences from the command line. Run with --help for the commands.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "menages/commands.hpp"
#include "menages/errors.hpp"
#include "menages/io.hpp"

namespace {

using namespace menages;

struct Args {
  std::string set;
  std::string file;
  std::string out;
  std::string cache;
  std::string format = "text";
  std::string branch = "fewest";
  bool circular = false;
  bool allowed = false;
  int n = 0;
  int n_max = 8;
  int l1 = 20;
  int l2 = 50;
  std::optional<int> k;
  Budgets budgets;
};

void add_common(CLI::App* cmd, Args& a) {
  cmd->add_option("--format", a.format, "Output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  cmd->add_option("--cache", a.cache, "Directory for the per-(S, mode) JSON cache");
}

void add_set(CLI::App* cmd, Args& a) {
  cmd->add_option("S", a.set, "Displacement set, e.g. '{0,1}' or '{-2,-1,1,2}' (quote the braces)")->required();
}

void add_modes(CLI::App* cmd, Args& a, bool allowed) {
  auto* c = cmd->add_flag("--circular", a.circular, "Displacements taken mod n");
  if (allowed) {
    auto* al = cmd->add_flag("--allowed", a.allowed, "Count permutations whose displacements all lie in S");
    c->excludes(al);
  }
}

void add_held_out(CLI::App* cmd, Args& a) {
  cmd->add_option("--held-out", a.budgets.held_out, "Terms held back to check a fitted recurrence")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
}

void add_cfinite(CLI::App* cmd, Args& a, bool tdeg) {
  cmd->add_option("--max-order", a.budgets.max_order, "Largest recurrence order tried")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  if (tdeg) {
    cmd->add_option("--max-tdeg", a.budgets.max_tdeg, "Largest t-degree of a coefficient")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
  }
}

void add_holonomic(CLI::App* cmd, Args& a) {
  cmd->add_option("--max-complexity", a.budgets.max_complexity, "Largest order + degree tried (MaxC)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--max-degree", a.budgets.max_degree, "Cap on the coefficient degree (-1: none)")
      ->capture_default_str();
  cmd->add_option("--l1", a.l1, "Number of terms to print")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--l2", a.l2, "Index of the term to extend to")->check(CLI::PositiveNumber)->capture_default_str();
}

Mode mode_of(const Args& a) {
  if (a.allowed) return Mode::kAllowed;
  return a.circular ? Mode::kCircular : Mode::kStraight;
}

Format format_of(const Args& a) { return a.format == "json" ? Format::kJson : Format::kText; }

int emit(const CommandResult& r) {
  std::cout << r.out << std::flush;
  return r.status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rook polynomials, restricted-permutation counts and guessed recurrences.\n"
               "Exit status: 0 success, 1 usage error, 2 FAIL (no recurrence within budget), 3 verification mismatch."};
  app.name("menages");
  app.require_subcommand(1);
  Args a;

  auto* rp = app.add_subcommand("rp", "Rook polynomial of a square 0/1 matrix file (lines of 0/1, '-' for stdin)");
  rp->add_option("FILE", a.file, "Matrix file")->required();
  rp->add_option("--branch", a.branch, "Branching rule")
      ->check(CLI::IsMember({"fewest", "first-row"}))
      ->capture_default_str();
  add_common(rp, a);

  auto* rookrec = app.add_subcommand("rookrec", "C-finite recurrence of the rook polynomials [[initials], [coeffs]]");
  add_set(rookrec, a);
  add_modes(rookrec, a, false);
  add_cfinite(rookrec, a, true);
  add_held_out(rookrec, a);
  add_common(rookrec, a);

  auto* seq = app.add_subcommand("seq", "First N terms a(1) .. a(N)");
  add_set(seq, a);
  seq->add_option("N", a.n, "Number of terms")->required()->check(CLI::PositiveNumber);
  add_modes(seq, a, true);
  add_common(seq, a);

  auto* info = app.add_subcommand("info", "Terms, minimal holonomic recurrence (or FAIL) and a(L2)");
  add_set(info, a);
  add_modes(info, a, true);
  add_holonomic(info, a);
  add_held_out(info, a);
  info->add_option("-K,--asymptotic-order", a.k, "Reserved; asymptotic expansions are not supported");
  add_common(info, a);

  auto* gf = app.add_subcommand("gfbaltic", "Rational generating function of the allowed-displacement counts");
  add_set(gf, a);
  gf->add_option("N", a.n, "Fit on a(0) .. a(N-1) (default: the minimum for the budget)")->check(CLI::PositiveNumber);
  add_cfinite(gf, a, false);
  add_held_out(gf, a);
  add_common(gf, a);

  auto* report = app.add_subcommand("report", "Markdown report with reproduction commands");
  add_set(report, a);
  add_modes(report, a, true);
  add_cfinite(report, a, true);
  add_holonomic(report, a);
  add_held_out(report, a);
  report->add_option("--out", a.out, "Output file (default: stdout)");
  report->add_option("--n-max", a.n_max, "Largest n for the permanent cross-check")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_common(report, a);

  auto* verify = app.add_subcommand("verify", "Check the counts against the permanent for n = 1..n-max");
  add_set(verify, a);
  add_modes(verify, a, true);
  verify->add_option("--n-max", a.n_max, "Largest n")->check(CLI::PositiveNumber)->capture_default_str();
  add_common(verify, a);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }

  try {
    const Format fmt = format_of(a);
    if (rp->parsed()) {
      Matrix01 m;
      if (a.file == "-") {
        m = parse_matrix(std::cin);
      } else {
        std::ifstream in(a.file);
        if (!in) throw InvalidInput("cannot open " + a.file);
        m = parse_matrix(in);
      }
      return emit(cmd_rp(m, a.branch == "first-row" ? BranchRule::kFirstRow : BranchRule::kFewestOnes, fmt));
    }
    if (verify->parsed()) return emit(cmd_verify(parse_set(a.set), mode_of(a), a.n_max, fmt));
    if (info->parsed() && a.k) {
      throw InvalidInput("-K is reserved: asymptotic expansions are not supported");
    }

    const Mode mode = gf->parsed() ? Mode::kAllowed : mode_of(a);
    Family fam(parse_set(a.set), mode, a.cache);
    int status = kExitOk;
    if (rookrec->parsed()) {
      status = emit(cmd_rookrec(fam, a.budgets, fmt));
    } else if (seq->parsed()) {
      status = emit(cmd_seq(fam, a.n, fmt));
    } else if (info->parsed()) {
      status = emit(cmd_info(fam, a.budgets, a.l1, a.l2, fmt));
    } else if (gf->parsed()) {
      status = emit(cmd_gfbaltic(fam, a.budgets, a.n, fmt));
    } else if (report->parsed()) {
      ReportOptions opt;
      opt.l1 = a.l1;
      opt.l2 = a.l2;
      opt.verify_n = a.n_max;
      const std::string md = render_report(fam, a.budgets, opt);
      if (a.out.empty()) {
        std::cout << md;
      } else {
        std::ofstream out(a.out);
        if (!out || !(out << md)) throw Error("cannot write " + a.out);
      }
    }
    fam.save();
    return status;
  } catch (const NonIntegralExtension& e) {
    std::cerr << "menages: " << e.what() << "\n";
    return kExitMismatch;
  } catch (const Error& e) {
    std::cerr << "menages: " << e.what() << "\n";
    return kExitUsage;
  }
}
