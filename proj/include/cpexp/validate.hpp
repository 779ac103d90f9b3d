#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cpexp {

// End-to-end validation: every closed form in the library against an
// independent route (partial fractions vs contour inversion, dual
// analytic representations, exact simulation).  The acceptance gate runs
// exactly these checks.
struct ValidationConfig {
    std::uint64_t seed = 20260822;
    std::uint64_t paths = 100000;
    unsigned threads = 1;
};

struct CheckResult {
    std::string name;
    bool pass;
    double statistic;  // worst normalised residual or deviation observed
    double bound;      // the statistic must stay at or below this
    double seconds;
    std::string detail;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool all_pass() const;
};

ValidationReport run_validation(const ValidationConfig& config,
                                std::ostream* progress = nullptr);

// The simulation-bearing comparison rows with fixed 17-digit formatting
// and no timings; equal seeds give byte-identical output regardless of
// thread count.  This is the data section of the validation report.
std::string validation_data_csv(const ValidationConfig& config);

}
