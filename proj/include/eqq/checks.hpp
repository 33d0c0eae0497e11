// The all-checks verification suite: every published tolerance of the
// engine, runnable from the CLI and from the acceptance test binary.
#pragma once

#include <string>
#include <vector>

namespace eqq {

struct CheckResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string details; // measured numbers and the tolerance they met or missed
};

std::vector<CheckResult> run_all_checks();

} // namespace eqq
