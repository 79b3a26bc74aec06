#pragma once

// The command-line operations as functions returning their exact output, so
// the CLI, the report writer and the Python module print the same bytes.

#include <string>
#include <vector>

#include "menages/engine.hpp"

namespace menages {

enum class Format { kText, kJson };

enum ExitStatus {
  kExitOk = 0,
  kExitUsage = 1,
  kExitFail = 2,      // no recurrence within the budget
  kExitMismatch = 3,  // an internal cross-check disagreed
};

struct CommandResult {
  int status = kExitOk;
  std::string out;
};

CommandResult cmd_rp(const Matrix01& m, BranchRule rule, Format f);
CommandResult cmd_rookrec(Family& fam, const Budgets& b, Format f);
CommandResult cmd_seq(Family& fam, int n, Format f);
/// l1 terms, the holonomic recurrence (or FAIL) and a(l2) by extension.
CommandResult cmd_info(Family& fam, const Budgets& b, int l1, int l2, Format f);
/// fam must be in allowed mode; n is the number of terms a(0) .. a(n-1) to fit (0 = minimum).
CommandResult cmd_gfbaltic(Family& fam, const Budgets& b, int n, Format f);
/// Umbral (or profile-DP) count against the permanent for n = 1..n_max.
CommandResult cmd_verify(const DisplacementSet& s, Mode mode, int n_max, Format f,
                         const Limits& limits = {});

struct ReportOptions {
  int l1 = 20;
  int l2 = 50;
  int verify_n = 9;
};

/// Markdown report; every number in it is printed under the command that
/// regenerates it.
std::string render_report(Family& fam, const Budgets& b, const ReportOptions& opt = {});

/// Shell rendering of an argument vector; arguments with shell metacharacters
/// are single-quoted.
std::string shell_join(const std::vector<std::string>& args);

}  // namespace menages
