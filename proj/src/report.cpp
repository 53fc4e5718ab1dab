#include "nonrigid/rigidity.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

namespace nonrigid {

bool VerificationReport::passed() const {
    return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.passed; });
}

void VerificationReport::add(Check c) { checks_.push_back(std::move(c)); }

void VerificationReport::run(const std::string& name, const std::function<void(Check&)>& body) {
    Check c;
    c.name = name;
    const auto start = std::chrono::steady_clock::now();
    body(c);
    const auto elapsed = std::chrono::steady_clock::now() - start;
    c.millis = std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
    checks_.push_back(std::move(c));
}

void VerificationReport::merge(const VerificationReport& other, const std::string& prefix) {
    for (auto c : other.checks_) {
        c.name = prefix + c.name;
        checks_.push_back(std::move(c));
    }
}

void VerificationReport::sort() {
    std::stable_sort(checks_.begin(), checks_.end(), [](const Check& a, const Check& b) { return a.name < b.name; });
}

nlohmann::json VerificationReport::to_json(bool include_timing) const {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : checks_) {
        nlohmann::json entry = {{"name", c.name}, {"passed", c.passed}, {"witness", c.witness}};
        if (include_timing) entry["millis"] = c.millis;
        checks.push_back(std::move(entry));
    }
    return {
        {"schema_version", 1},
        {"system", system_},
        {"checks", std::move(checks)},
        {"passed", passed()},
    };
}

std::string VerificationReport::to_text() const {
    std::ostringstream out;
    std::size_t width = 0;
    for (const auto& c : checks_) width = std::max(width, c.name.size());
    for (const auto& c : checks_) {
        out << (c.passed ? "PASS  " : "FAIL  ") << c.name << std::string(width - c.name.size() + 2, ' ');
        out << c.millis << " ms";
        if (!c.passed && !c.witness.is_null()) out << "  " << c.witness.dump();
        out << '\n';
    }
    out << (passed() ? "all checks passed" : "verification FAILED") << '\n';
    return out.str();
}

}  // namespace nonrigid
