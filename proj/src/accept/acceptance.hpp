#ifndef GAIFMAN_ACCEPT_ACCEPTANCE_HPP
#define GAIFMAN_ACCEPT_ACCEPTANCE_HPP

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace gaifman::accept {

struct CriterionResult {
    std::string id;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

// The acceptance criteria, runnable individually ("AC-3") or all together.
// Prints one PASS/FAIL line per criterion; returns true when all pass.
bool run_acceptance(std::ostream& out, const std::vector<std::string>& only = {});

std::vector<std::string> acceptance_ids();

}  // namespace gaifman::accept

#endif
