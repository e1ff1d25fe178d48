#ifndef QLG_REPORT_HPP
#define QLG_REPORT_HPP

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "qlg/core.hpp"

namespace qlg {

/// One named check. Residuals pass when value < tol; margins pass when
/// value > tol.
struct ResidualEntry {
    std::string name;
    double value = 0.0;
    double tol = 0.0;
    bool pass = false;
    bool margin = false;
};

class VerificationReport {
public:
    void add_residual(std::string name, double value, double tol) {
        entries_.push_back({std::move(name), value, tol, std::isfinite(value) && value < tol, false});
    }
    void add_margin(std::string name, double value, double tol) {
        entries_.push_back({std::move(name), value, tol, std::isfinite(value) && value > tol, true});
    }
    void append(const VerificationReport& other, const std::string& prefix = {}) {
        for (auto e : other.entries_) {
            e.name = prefix + e.name;
            entries_.push_back(std::move(e));
        }
    }

    bool pass() const {
        return std::all_of(entries_.begin(), entries_.end(), [](const ResidualEntry& e) { return e.pass; });
    }
    const std::vector<ResidualEntry>& entries() const { return entries_; }
    bool has(const std::string& name) const { return find(name) != nullptr; }
    const ResidualEntry& at(const std::string& name) const {
        if (const auto* e = find(name)) return *e;
        throw Error("report has no entry '" + name + "'");
    }
    double value(const std::string& name) const { return at(name).value; }

private:
    const ResidualEntry* find(const std::string& name) const {
        for (const auto& e : entries_)
            if (e.name == name) return &e;
        return nullptr;
    }
    std::vector<ResidualEntry> entries_;
};

}  // namespace qlg

#endif  // QLG_REPORT_HPP
