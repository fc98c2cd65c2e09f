#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "eit/state.hpp"

namespace eit {

enum class ValidationLevel { quick, full };

struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0.0;   // worst observed deviation (check-specific metric)
    double tolerance = 0.0;  // threshold it was compared against
    std::string detail;
};

// Runs the invariant suite. `quick` is deterministic identities only
// (seconds); `full` adds the stochastic-trajectory and time-integration
// oracle comparisons (minutes).
std::vector<CheckResult> run_validation(ValidationLevel level);

// The Lyapunov integral identity (1/2pi) Int S = Sigma as a standalone
// check; corrupt_drift_sign flips the off-diagonal signs of A on the
// spectral side only (negative-control fixture: the identity must then
// fail and be named in the report).
CheckResult check_lyapunov_identity(const Mat12& a, const Mat12& d,
                                    bool corrupt_drift_sign = false);

// Prints one line per check; returns the number of failures.
int print_report(const std::vector<CheckResult>& results, std::ostream& os);

}  // namespace eit
