#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace dirac1c {

/// One verification check. `anchor` is the identity or property being
/// checked, spelled in plain ASCII math. Exact checks leave value and bound
/// at zero; measured checks store the measured number in `value` and the
/// bound it was compared against in `bound` (the direction of the comparison
/// belongs to the producer; `passed` is authoritative).
struct Check {
    std::string id;
    std::string anchor;
    bool passed = false;
    double value = 0;
    double bound = 0;
    std::string note;
};

struct Report {
    std::string suite;
    std::uint64_t seed = 0;
    std::vector<Check> checks;

    int failed() const {
        int n = 0;
        for (const Check& c : checks) n += c.passed ? 0 : 1;
        return n;
    }
    bool ok() const { return failed() == 0; }

    /// Reports are ordered by check id, never by completion order.
    void sort_checks() {
        std::sort(checks.begin(), checks.end(),
                  [](const Check& a, const Check& b) { return a.id < b.id; });
    }
};

inline nlohmann::json report_to_json(const Report& r) {
    nlohmann::json checks = nlohmann::json::array();
    for (const Check& c : r.checks) {
        nlohmann::json jc{{"id", c.id},
                          {"anchor", c.anchor},
                          {"passed", c.passed},
                          {"value", c.value},
                          {"bound", c.bound}};
        if (!c.note.empty()) jc["note"] = c.note;
        checks.push_back(std::move(jc));
    }
    return nlohmann::json{
        {"suite", r.suite},
        {"seed", r.seed},
        {"status", r.ok() ? "pass" : "fail"},
        {"summary",
         {{"total", r.checks.size()},
          {"passed", r.checks.size() - size_t(r.failed())},
          {"failed", r.failed()}}},
        {"checks", std::move(checks)},
    };
}

inline void print_report(std::ostream& os, const Report& r) {
    os << "suite " << r.suite << "  seed " << r.seed << "\n";
    for (const Check& c : r.checks) {
        os << (c.passed ? "[pass] " : "[FAIL] ") << c.id << "  " << c.anchor;
        if (c.value == 0 && c.bound == 0) {
            os << "  (exact)";
        } else {
            char buf[64];
            std::snprintf(buf, sizeof buf, "  (value %.4g, bound %.4g)", c.value, c.bound);
            os << buf;
        }
        if (!c.note.empty()) os << "  -- " << c.note;
        os << "\n";
    }
    os << (r.ok() ? "PASS" : "FAIL") << " (" << (r.checks.size() - size_t(r.failed())) << "/"
       << r.checks.size() << " checks)\n";
}

}  // namespace dirac1c
