#include "eqq/checks.hpp"

namespace eqq {
std::vector<CheckResult> run_all_checks() { return {}; }
} // namespace eqq
