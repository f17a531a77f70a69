#pragma once

#include <string>
#include <vector>

namespace polypencil {

/// One named check with outcome and a short human-readable detail.
/// Mathematical failures are reported, not thrown: partial diagnostics
/// are the product.
struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct Report {
    std::vector<CheckResult> checks;

    void add(std::string name, bool passed, std::string detail = "") {
        checks.push_back({std::move(name), passed, std::move(detail)});
    }

    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }

    const CheckResult* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }

    bool failed(const std::string& name) const {
        const CheckResult* c = find(name);
        return c && !c->passed;
    }

    std::string str() const {
        std::string out;
        for (const auto& c : checks) {
            out += c.passed ? "  [pass] " : "  [FAIL] ";
            out += c.name;
            if (!c.detail.empty()) out += ": " + c.detail;
            out += "\n";
        }
        return out;
    }
};

}  // namespace polypencil
