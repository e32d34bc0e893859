#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace adhm {

struct Check {
    std::string name;
    bool pass = false;
    double residual = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct Report {
    std::string title;
    std::vector<Check> checks;

    void add(std::string name, double residual, double tolerance, std::string detail = {}) {
        checks.push_back({std::move(name), residual <= tolerance, residual, tolerance, std::move(detail)});
    }
    void add_flag(std::string name, bool ok, std::string detail = {}) {
        checks.push_back({std::move(name), ok, ok ? 0.0 : 1.0, 0.0, std::move(detail)});
    }
    void append(const Report& o) { checks.insert(checks.end(), o.checks.begin(), o.checks.end()); }

    bool passed() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return !checks.empty();
    }
    double max_residual() const {
        double m = 0.0;
        for (const auto& c : checks) m = c.residual > m ? c.residual : m;
        return m;
    }
    nlohmann::json to_json() const {
        nlohmann::json j;
        j["title"] = title;
        j["pass"] = passed();
        j["checks"] = nlohmann::json::array();
        for (const auto& c : checks) {
            nlohmann::json e{{"name", c.name}, {"pass", c.pass}, {"residual", c.residual}, {"tolerance", c.tolerance}};
            if (!c.detail.empty()) e["detail"] = c.detail;
            j["checks"].push_back(e);
        }
        return j;
    }
};

}  // namespace adhm
