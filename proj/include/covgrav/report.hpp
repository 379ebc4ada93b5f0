#pragma once

// Structured check reports: named residual checks with per-check tolerances,
// the random-sampling parameters that produced them, and environment data.
// Serialized as JSON; written atomically (temp file + rename).

#include <string>
#include <vector>

namespace covgrav {

struct CheckEntry {
    std::string name;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string paper_ref;  // identity tag carried through from the check catalog
    long samples = 0;
    bool informational = false;  // reported but not counted against the suite
};

struct Report {
    std::string suite;
    std::uint64_t seed = 0;
    long samples = 0;
    double tolerance = 0.0;  // 0 = per-check defaults
    std::vector<CheckEntry> checks;
    std::string version;
    double c0_factor = 0.0;
    std::string timestamp;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass && !c.informational) return false;
        return true;
    }
};

std::string report_to_json(const Report& r);
void write_report(const Report& r, const std::string& path);
void print_report(const Report& r);
std::string current_timestamp();

inline constexpr const char* kVersion = "0.1.0";

}  // namespace covgrav
