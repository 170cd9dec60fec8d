#pragma once

// The acceptance criteria as runnable checks. Shared by the acceptance test
// binary and the `superfluid acceptance` subcommand.

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace superfluid::acceptance {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::vector<std::string> details;  // one line per measured quantity
    double seconds = 0.0;
};

struct Criterion {
    int id;
    std::string title;
    std::function<CriterionResult()> run;
};

const std::vector<Criterion>& criteria();

/// Runs every criterion (or only `only` when nonzero), printing one
/// PASS/FAIL line per criterion to `out` followed by its detail lines when
/// `verbose`.
std::vector<CriterionResult> run_all(std::ostream& out, bool verbose = true, int only = 0);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace superfluid::acceptance
