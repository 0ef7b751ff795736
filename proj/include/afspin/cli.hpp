#pragma once
#include <iosfwd>

namespace afspin {

// Command-line front end. Commands: check, validate, catalog, table.
// Exit codes: 0 success, 1 usage or parse error, 2 out-of-scope verdict,
// 3 validation failure, inconsistency, or any internal pipeline error.
// The environment variable AFSPIN_STEP_BUDGET overrides the collection
// step budget.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace afspin
