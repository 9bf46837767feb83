// acceptance.hpp
// End-to-end acceptance experiments: every headline probability claim of the
// two schemes, checked at pinned tolerances (exact counts, 3-sigma binomial
// bands, chi-square at alpha = 0.001, and exhaustive enumerations).

#pragma once

#include <cstdint>
#include <iosfwd>

namespace ceqss {

// Runs every criterion, printing one pass/fail line each plus a summary.
// Returns 0 when all pass, 2 otherwise.
int acceptance_suite(std::ostream& out, std::uint64_t master_seed = 1);

} // namespace ceqss
