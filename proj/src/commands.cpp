#include "menages/commands.hpp"

#include <sstream>

#include "menages/errors.hpp"
#include "menages/io.hpp"

namespace menages {

namespace {

json header(const Family& fam) { return json{{"S", format_set(fam.set())}, {"mode", mode_name(fam.mode())}}; }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::vector<std::string> mode_flags(Mode mode) {
  if (mode == Mode::kCircular) return {"--circular"};
  if (mode == Mode::kAllowed) return {"--allowed"};
  return {};
}

json terms_json(const std::vector<BigInt>& terms) {
  json arr = json::array();
  for (const auto& a : terms) arr.push_back(to_decimal(a));
  return arr;
}

std::string describe(Mode mode) {
  switch (mode) {
    case Mode::kStraight: return "pi(i) - i is never in S";
    case Mode::kCircular: return "(pi(i) - i) mod n is never in S";
    case Mode::kAllowed: return "pi(i) - i is always in S";
  }
  return "";
}

}  // namespace

CommandResult cmd_rp(const Matrix01& m, BranchRule rule, Format f) {
  Board b = board_from_matrix(m);
  IntPoly r = rook_polynomial(b, rule);
  if (f == Format::kJson) return {kExitOk, dump(json{{"board", board_to_json(b)}, {"rook_polynomial", poly_to_json(r)}})};
  return {kExitOk, r.to_string() + "\n"};
}

CommandResult cmd_rookrec(Family& fam, const Budgets& b, Format f) {
  auto rec = fam.rook_recurrence(b);
  if (f == Format::kJson) {
    json j = header(fam);
    j["recurrence"] = rec ? to_json(*rec) : json(nullptr);
    return {rec ? kExitOk : kExitFail, dump(j)};
  }
  if (!rec) return {kExitFail, "FAIL\n"};
  std::string out = format_cfinite(*rec) + "\n";
  if (rec->start != 1) out += "initial terms start at n = " + std::to_string(rec->start) + "\n";
  return {kExitOk, out};
}

CommandResult cmd_seq(Family& fam, int n, Format f) {
  if (n < 1) throw InvalidInput("N must be at least 1");
  auto terms = fam.counts(n);
  if (f == Format::kJson) {
    json j = header(fam);
    j["terms"] = terms_json(terms);
    return {kExitOk, dump(j)};
  }
  return {kExitOk, join_terms(terms) + "\n"};
}

CommandResult cmd_info(Family& fam, const Budgets& b, int l1, int l2, Format f) {
  if (l1 < 1 || l2 < 1) throw InvalidInput("L1 and L2 must be at least 1");
  const int fit_terms = Family::holonomic_terms_for(b, l1);
  auto rec = fam.holonomic(b, l1);
  auto terms = fam.counts(l1);

  std::optional<BigInt> extended;
  if (rec) {
    auto known = fam.counts(fit_terms);
    if (l2 <= fit_terms) {
      extended = known[static_cast<std::size_t>(l2 - 1)];
    } else {
      try {
        extended = extend_sequence(*rec, known, 1, static_cast<std::size_t>(l2)).back();
      } catch (const SingularRecurrence&) {
        // The leading coefficient vanishes on the way; count directly instead.
        extended = fam.counts(l2).back();
      }
    }
  }

  if (f == Format::kJson) {
    json j = header(fam);
    j["terms"] = terms_json(terms);
    j["recurrence"] = rec ? to_json(*rec) : json(nullptr);
    j["L2"] = l2;
    j["a_L2"] = extended ? json(to_decimal(*extended)) : json(nullptr);
    return {rec ? kExitOk : kExitFail, dump(j)};
  }
  std::ostringstream out;
  out << "S = " << format_set(fam.set()) << " " << mode_name(fam.mode()) << "\n";
  out << "terms n = 1.." << l1 << ": " << join_terms(terms) << "\n";
  if (!rec) {
    out << "recurrence: FAIL\n";
    return {kExitFail, out.str()};
  }
  out << "recurrence (order " << rec->order << ", degree " << rec->degree << "): " << format_holonomic(*rec)
      << " for n >= " << rec->valid_from + rec->order << "\n";
  out << "a(" << l2 << ") = " << to_decimal(*extended) << "\n";
  return {kExitOk, out.str()};
}

CommandResult cmd_gfbaltic(Family& fam, const Budgets& b, int n, Format f) {
  if (fam.mode() != Mode::kAllowed) throw InvalidInput("gfbaltic counts allowed displacements");
  auto rec = fam.scalar_recurrence(b, n);
  std::optional<RationalGF> gf;
  if (rec) {
    const int terms = Family::scalar_terms_for(b, n);
    std::vector<BigInt> a{BigInt(1)};
    auto rest = fam.counts(terms - 1);
    a.insert(a.end(), rest.begin(), rest.end());
    gf = cfinite_to_gf(*rec, a);
    if (series_expand(*gf, a.size()) != a) {
      return {kExitMismatch, "generating function does not reproduce the terms\n"};
    }
  }
  if (f == Format::kJson) {
    json j = header(fam);
    j["gf"] = gf ? to_json(*gf) : json(nullptr);
    return {gf ? kExitOk : kExitFail, dump(j)};
  }
  if (!gf) return {kExitFail, "FAIL\n"};
  return {kExitOk, format_gf(*gf, 't') + "\n"};
}

CommandResult cmd_verify(const DisplacementSet& s, Mode mode, int n_max, Format f, const Limits& limits) {
  if (n_max < 1) throw InvalidInput("--n-max must be at least 1");
  if (n_max > limits.permanent_cap) {
    throw CapExceeded("--n-max " + std::to_string(n_max) + " exceeds the permanent cap " +
                      std::to_string(limits.permanent_cap));
  }
  const DisplacementSet set = mode == Mode::kCircular ? normalize_circular(s) : s;
  RookCache cache;
  json rows = json::array();
  std::ostringstream out;
  int bad = 0;
  for (int n = 1; n <= n_max; ++n) {
    BigInt fast, slow;
    if (mode == Mode::kAllowed) {
      fast = count_allowed(set, n, limits.window_cap);
      slow = permanent(to_matrix(board_straight(set, n)), limits.permanent_cap);
    } else {
      fast = count({set, n, mode}, cache, limits);
      slow = permanent(complement_matrix(board_for(set, n, mode)), limits.permanent_cap);
    }
    const bool ok = fast == slow;
    if (!ok) ++bad;
    rows.push_back(json{{"n", n}, {"count", to_decimal(fast)}, {"permanent", to_decimal(slow)}, {"ok", ok}});
    out << "n = " << n << ": " << (mode == Mode::kAllowed ? "dp " : "umbral ") << fast << ", permanent " << slow
        << (ok ? ", ok" : ", MISMATCH") << "\n";
  }
  const int status = bad ? kExitMismatch : kExitOk;
  if (f == Format::kJson) {
    return {status, dump(json{{"S", format_set(set)}, {"mode", mode_name(mode)}, {"checks", rows}, {"pass", bad == 0}})};
  }
  if (bad) out << bad << " of " << n_max << " MISMATCH\n";
  else out << "all " << n_max << " agree\n";
  return {status, out.str()};
}

std::string shell_join(const std::vector<std::string>& args) {
  std::string out;
  for (const auto& a : args) {
    if (!out.empty()) out += ' ';
    const bool plain = !a.empty() && a.find_first_not_of(
                           "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789-_./=") == std::string::npos;
    if (plain) {
      out += a;
      continue;
    }
    out += '\'';
    for (char c : a) {
      if (c == '\'') out += "'\\''";
      else out += c;
    }
    out += '\'';
  }
  return out;
}

std::string render_report(Family& fam, const Budgets& b, const ReportOptions& opt) {
  const std::string set = format_set(fam.set());
  const Mode mode = fam.mode();
  std::ostringstream md;

  auto section = [&](const std::string& title, std::vector<std::string> args, const CommandResult& r) {
    md << "## " << title << "\n\n```sh\n" << shell_join(args) << "\n```\n\n```text\n" << r.out << "```\n\n";
  };
  auto with_mode = [&](std::vector<std::string> args) {
    for (auto& flag : mode_flags(mode)) args.push_back(flag);
    return args;
  };
  const std::string g = std::to_string(b.held_out);

  md << "# Permutations with restricted displacements: S = " << set << ", " << mode_name(mode) << "\n\n";
  md << "a(n) counts the permutations pi of 1..n such that " << describe(mode) << ".";
  if (mode == Mode::kCircular) md << " S is shifted so that its smallest element is 0.";
  if (fam.set().empty() && mode != Mode::kAllowed) md << " With S empty nothing is forbidden, so a(n) = n!.";
  md << "\nEach block below shows a command and its exact output.\n\n";

  section("Terms", with_mode({"menages", "seq", set, std::to_string(opt.l1)}), cmd_seq(fam, opt.l1, Format::kText));

  if (mode != Mode::kAllowed) {
    section("Rook polynomial recurrence",
            with_mode({"menages", "rookrec", set, "--max-order", std::to_string(b.max_order), "--max-tdeg",
                       std::to_string(b.max_tdeg), "--held-out", g}),
            cmd_rookrec(fam, b, Format::kText));
  }

  std::vector<std::string> info = with_mode({"menages", "info", set, "--max-complexity",
                                             std::to_string(b.max_complexity), "--l1", std::to_string(opt.l1),
                                             "--l2", std::to_string(opt.l2), "--held-out", g});
  if (b.max_degree >= 0) {
    info.push_back("--max-degree");
    info.push_back(std::to_string(b.max_degree));
  }
  section("Holonomic recurrence and extension", info, cmd_info(fam, b, opt.l1, opt.l2, Format::kText));

  if (mode == Mode::kAllowed) {
    section("Generating function",
            {"menages", "gfbaltic", set, "--max-order", std::to_string(b.max_order), "--held-out", g},
            cmd_gfbaltic(fam, b, 0, Format::kText));
  }

  const int vn = std::min(opt.verify_n, Limits{}.permanent_cap);
  section("Permanent cross-check", with_mode({"menages", "verify", set, "--n-max", std::to_string(vn)}),
          cmd_verify(fam.set(), mode, vn, Format::kText));

  md << "## Notes\n\n"
     << "Recurrences are fitted by exact linear algebra and then required to hold on " << b.held_out
     << " further terms that took no part in the fit. They are strong empirical evidence, not proofs.\n";
  return md.str();
}

}  // namespace menages
