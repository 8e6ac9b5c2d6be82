#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace elab {

// One record per check. `witness` is empty for clean passes and carries a
// printable counterexample or detail otherwise.
struct CheckRecord {
    std::string check;
    std::string verdict; // "pass" | "fail" | informational verdicts
    std::string witness;
    std::uint64_t seed = 0;
    bool ok = true;
};

struct Report {
    std::vector<CheckRecord> records;

    void add(std::string check, bool ok, std::string witness = "", std::uint64_t seed = 0) {
        records.push_back({std::move(check), ok ? "pass" : "fail", std::move(witness), seed, ok});
    }
    void info(std::string check, std::string verdict, std::string witness = "", std::uint64_t seed = 0) {
        records.push_back({std::move(check), std::move(verdict), std::move(witness), seed, true});
    }
    void merge(const Report& o) {
        records.insert(records.end(), o.records.begin(), o.records.end());
    }

    bool pass() const {
        for (const auto& r : records)
            if (!r.ok) return false;
        return true;
    }
    const CheckRecord* first_failure() const {
        for (const auto& r : records)
            if (!r.ok) return &r;
        return nullptr;
    }

    std::string text() const {
        std::string out;
        for (const auto& r : records) {
            out += r.check + ": " + r.verdict;
            if (!r.witness.empty()) out += "  [" + r.witness + "]";
            if (r.seed) out += "  (seed " + std::to_string(r.seed) + ")";
            out += "\n";
        }
        return out;
    }

    std::string json() const {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& r : records) {
            nlohmann::ordered_json rec;
            rec["check"] = r.check;
            rec["verdict"] = r.verdict;
            rec["witness"] = r.witness;
            rec["seed"] = r.seed;
            arr.push_back(rec);
        }
        return arr.dump(2) + "\n";
    }
};

} // namespace elab
