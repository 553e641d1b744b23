#pragma once

#include <string>
#include <vector>

namespace horolab {

struct SuiteCheck {
    std::string name;
    bool pass = false;
    std::string detail;  // deterministic, fixed-precision numbers only
};

struct SuiteReport {
    std::string suite;
    std::vector<SuiteCheck> checks;
    bool all_pass() const;
};

// Built-in verification batteries: engine output against closed forms,
// metric axioms, end counts, iteration verdicts.  "all" concatenates every
// battery; "examples" collects the worked numbers quoted in the README.
std::vector<std::string> suite_names();

SuiteReport run_suite(const std::string& name);

}  // namespace horolab
