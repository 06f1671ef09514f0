#pragma once

// Verification reports: one record per named check.

#include <cstdint>
#include <string>
#include <vector>

#include "ellax/config.hpp"

namespace ellax {

inline constexpr const char* kReportSchema = "ellax-report/1";
inline constexpr const char* kToolVersion = "1.0.0";

struct CheckRecord {
    std::string name;
    double residual = 0.0;   // NaN when the check was skipped
    double tolerance = 0.0;
    bool lower_bound = false;  // pass means residual >= tolerance (negative controls)
    bool pass = false;
    int n_used = 0;          // largest quadrature N per axis, 0 if none
    double seconds = 0.0;
    std::string note;
};

/// pass = residual <= tolerance (>= for lower bounds); NaN never passes.
bool judge(double residual, double tolerance, bool lower_bound);

struct Report {
    std::string suite;
    std::uint64_t seed = 0;
    json config;
    std::vector<CheckRecord> checks;

    bool pass() const;
    /// Records sorted by name. Timings are written only when requested so
    /// that reports are byte-identical across runs by default.
    json to_json(bool timings = false) const;
};

} // namespace ellax
