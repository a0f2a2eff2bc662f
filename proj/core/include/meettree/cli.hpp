#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace meettree {

/// Batch command dispatch. Verbs: enumerate, classify, amalgamate, pec-check,
/// pec-close, certify-determined, nopair-demo, nopair-exhaust, check-laws,
/// nonap. The run report (JSON) goes to `out`, diagnostics (including
/// timings) to `err`. Exit codes: 0 verdict computed, 1 input error,
/// 2 resource budget exceeded.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace meettree
