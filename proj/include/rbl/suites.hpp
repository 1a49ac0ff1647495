#pragma once

#include <string>
#include <vector>

#include "rbl/run_config.hpp"

namespace rbl {

// One verification check: `measured cmp threshold` with cmp in {"<=", ">=",
// "<", ">"}. The measured value is always reported, pass or fail.
struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string cmp = "<=";
};

struct SuiteResult {
  std::string suite;
  bool passed = true;
  std::vector<CheckResult> checks;
};

// The seven check families, in canonical report order.
const std::vector<std::string>& suite_names();

// Runs one family (never "all"). Throws Error("config-invalid") for unknown
// names; measurement errors propagate as their own Error codes.
SuiteResult run_single_suite(const RunConfig& cfg, const std::string& name);

// Report for one family run: the common header (version, seed, config hash)
// plus one row per check and the family verdict. Suite reports are always
// JSON; the --format switch governs the data-emitting subcommands instead.
json suite_report(const RunConfig& cfg, const SuiteResult& result);

// Runs the named family, or all seven for "all"; prints one line per check,
// writes <out_dir>/<suite>.json per family (plus <out_dir>/all.json summary
// for "all"), and returns 0 when every check passed, 1 otherwise.
int run_suite(const RunConfig& cfg, const std::string& name);

}  // namespace rbl
