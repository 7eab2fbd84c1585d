#pragma once

// Check/report records shared by the verification suites and the CLI.

#include <sstream>
#include <string>
#include <vector>

#include "json_io.hpp"

namespace crossprod {

enum class Status { Pass, Fail, Skipped };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Skipped: return "skipped";
    }
    return "?";
}

inline Status status_from_string(const std::string& s) {
    if (s == "pass") return Status::Pass;
    if (s == "fail") return Status::Fail;
    if (s == "skipped") return Status::Skipped;
    throw ParseError("unknown check status '" + s + "'");
}

/// One verified statement: a short name, the mathematical fact it exercises, and its evidence.
struct Check {
    std::string name;
    std::string anchor;
    Status status = Status::Pass;
    std::string reason;  // failure datum or skip reason
    json evidence = json::object();

    bool operator==(const Check&) const = default;
};

inline Check make_check(std::string name, std::string anchor, bool ok, json evidence = json::object(),
                        std::string fail_reason = {}) {
    return Check{std::move(name), std::move(anchor), ok ? Status::Pass : Status::Fail, ok ? std::string() : std::move(fail_reason),
                 std::move(evidence)};
}

inline Check skipped_check(std::string name, std::string anchor, std::string reason) {
    return Check{std::move(name), std::move(anchor), Status::Skipped, std::move(reason), json::object()};
}

struct Report {
    std::string command;
    json system = nullptr;
    json result = nullptr;  // payload of compute/info commands
    std::vector<Check> checks;

    bool ok() const {
        for (const auto& c : checks)
            if (c.status == Status::Fail) return false;
        return true;
    }
    int exit_code() const { return ok() ? 0 : 1; }

    void add(Check c) { checks.push_back(std::move(c)); }
    void add(const std::vector<Check>& cs) { checks.insert(checks.end(), cs.begin(), cs.end()); }

    bool operator==(const Report&) const = default;
};

inline json check_to_json(const Check& c) {
    json j{{"name", c.name}, {"anchor", c.anchor}, {"status", to_string(c.status)}, {"evidence", c.evidence}};
    if (!c.reason.empty()) j["reason"] = c.reason;
    return j;
}

inline Check check_from_json(const json& j) {
    try {
        return Check{j.at("name").get<std::string>(), j.at("anchor").get<std::string>(),
                     status_from_string(j.at("status").get<std::string>()), j.value("reason", std::string()),
                     j.value("evidence", json::object())};
    } catch (const json::exception& e) {
        throw ParseError(std::string("check: ") + e.what());
    }
}

inline json report_to_json(const Report& r) {
    json checks = json::array();
    std::size_t passed = 0, failed = 0, skipped = 0;
    for (const auto& c : r.checks) {
        checks.push_back(check_to_json(c));
        (c.status == Status::Pass ? passed : c.status == Status::Fail ? failed : skipped)++;
    }
    json j{{"command", r.command}, {"checks", checks}, {"summary", {{"pass", passed}, {"fail", failed}, {"skipped", skipped}}}};
    if (!r.system.is_null()) j["system"] = r.system;
    if (!r.result.is_null()) j["result"] = r.result;
    return j;
}

inline Report report_from_json(const json& j) {
    try {
        Report r;
        r.command = j.at("command").get<std::string>();
        if (j.contains("system")) r.system = j["system"];
        if (j.contains("result")) r.result = j["result"];
        for (const auto& c : j.at("checks")) r.checks.push_back(check_from_json(c));
        return r;
    } catch (const json::exception& e) {
        throw ParseError(std::string("report: ") + e.what());
    }
}

/// Canonical serialization: sorted keys (nlohmann objects are ordered maps), shortest round-trip doubles.
inline std::string canonical(const json& j) { return j.dump(); }

inline std::string report_to_text(const Report& r) {
    std::ostringstream out;
    out << r.command << "\n";
    if (!r.result.is_null()) out << r.result.dump(2) << "\n";
    std::size_t failed = 0;
    for (const auto& c : r.checks) {
        out << "[" << to_string(c.status) << "] " << c.name << "  (" << c.anchor << ")";
        if (!c.reason.empty()) out << ": " << c.reason;
        if (!c.evidence.empty()) out << "  " << c.evidence.dump();
        out << "\n";
        if (c.status == Status::Fail) ++failed;
    }
    if (!r.checks.empty()) out << r.checks.size() << " checks, " << failed << " failed\n";
    return out.str();
}

}  // namespace crossprod
