#pragma once

#include "config.hpp"
#include "slitflow/family_io.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace slitflow::app {

// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kFailed = 1,          // a suite failed or an accepted probe is unreliable
  kBudgetExceeded = 2,  // generation stopped early; partial family saved
  kInputError = 3,      // bad config, family file, or curve literal
};

int cmd_generate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_trace(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_limit_report(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::string note;
};

// Every invariant suite over a loaded family. Exact suites use zero
// tolerance; numeric suites skip data in the unreliable regime.
std::vector<SuiteResult> run_verify_suites(const contfrac::FamilyFile& file);

// Level from which every probe up to n_max is reliable, or 0 if none is.
unsigned first_reliable_level(const surface::SlitSurface& s, unsigned n_max);

}  // namespace slitflow::app
