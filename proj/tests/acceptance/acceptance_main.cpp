// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
// Exit status is 0 only when every criterion passes.

#include <cstdlib>
#include <iostream>
#include <string>

#include "superfluid/acceptance.hpp"

int main(int argc, char** argv) {
    int only = 0;
    bool verbose = true;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--quiet") verbose = false;
        else only = std::atoi(argv[i]);
    }
    const auto results = superfluid::acceptance::run_all(std::cout, verbose, only);
    const bool ok = superfluid::acceptance::all_passed(results);
    std::cout << (ok ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED") << '\n';
    return ok ? EXIT_SUCCESS : EXIT_FAILURE;
}
