#pragma once

#include "knotfield/config.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace knotfield::verify {

struct Check {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string note;
};

using Checks = std::vector<Check>;

Checks suite_identities(const config::RunConfig& cfg);
Checks suite_maxwell(const config::RunConfig& cfg);
Checks suite_topology(const config::RunConfig& cfg);
Checks suite_quantum(const config::RunConfig& cfg);

/// suite in {identities, maxwell, topology, quantum, all}; throws UsageError
/// for anything else.
Checks run_suite(const std::string& suite, const config::RunConfig& cfg);

/// The twelve acceptance criteria at their stated sample sizes/tolerances.
Checks acceptance_criteria();

/// Prints one PASS/FAIL line per check; returns 0 iff all passed.
int report(const Checks& checks, std::ostream& out);

} // namespace knotfield::verify
