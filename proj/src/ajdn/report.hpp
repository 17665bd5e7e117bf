#pragma once

#include <string>
#include <vector>

namespace ajdn {

struct Check {
    std::string name;
    double value = 0.0;
    double target = 0.0;
    double tolerance = 0.0;
    bool passed = true;
    // Informational checks are reported but never fail the report.
    bool required = true;
    std::string note;
};

struct ValidationReport {
    std::vector<Check> checks;
    std::vector<std::string> warnings;

    [[nodiscard]] bool ok() const {
        for (const auto& c : checks) {
            if (c.required && !c.passed) {
                return false;
            }
        }
        return true;
    }

    [[nodiscard]] const Check* find(const std::string& name) const {
        for (const auto& c : checks) {
            if (c.name == name) {
                return &c;
            }
        }
        return nullptr;
    }
};

} // namespace ajdn
