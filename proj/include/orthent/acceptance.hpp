#pragma once

#include <string>
#include <vector>

namespace orthent {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

/// Runs the eight acceptance checks in order. A check that throws is reported as failed with the
/// error text in `detail`.
std::vector<CriterionResult> run_acceptance();

/// "PASS [id] name: detail (t s)".
std::string format_criterion(const CriterionResult& r);

} // namespace orthent
