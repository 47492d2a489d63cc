#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fertility.hpp"
#include "json.hpp"
#include "parallel.hpp"

namespace coxsort {

enum class Status { pass, fail, skipped };

inline const char* status_name(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::skipped: return "skipped";
    }
    return "?";
}

// An exact integer, or exact text for sets, permutations and fractions.
struct Value {
    std::optional<Count> integer;
    std::string text;

    static Value of(const Count& x) { return {x, {}}; }
    static Value of(std::uint64_t x) { return {Count(x), {}}; }
    static Value of(std::int64_t x) { return {Count(x), {}}; }
    static Value of(int x) { return {Count(x), {}}; }
    static Value of(std::string s) { return {std::nullopt, std::move(s)}; }
    static Value of(const char* s) { return {std::nullopt, s}; }
    static Value of(bool b) { return {std::nullopt, b ? "true" : "false"}; }

    std::string str() const { return integer ? integer->str() : text; }
    friend bool operator==(const Value& a, const Value& b) {
        return a.integer.has_value() == b.integer.has_value() && a.str() == b.str();
    }
};

struct CheckRecord {
    std::string id;
    std::string anchor;
    std::string parameters;
    std::optional<Value> expected;  // absent for evidence-only records
    Value observed;
    Status status = Status::pass;
    std::string note;
    double runtime_ms = 0;
};

struct VerificationReport {
    std::string suite;
    std::vector<CheckRecord> checks;

    std::size_t count(Status s) const {
        std::size_t k = 0;
        for (auto& c : checks) k += c.status == s;
        return k;
    }
    bool passed() const { return count(Status::fail) == 0; }
    const CheckRecord* find(const std::string& id, const std::string& parameters) const {
        for (auto& c : checks)
            if (c.id == id && c.parameters == parameters) return &c;
        return nullptr;
    }
};

struct Caps {
    std::size_t n = 0;  // 0 picks the suite default
    bool slow = false;
    std::uint64_t seed = 1;
    std::size_t samples = 200;
};

// A finding before its status is decided.
struct Finding {
    std::string id, anchor, parameters;
    std::optional<Value> expected;
    Value observed;
    std::string note;
};

// Collects deferred checks, runs them on the worker pool, and sorts the records by id
// (ties keep insertion order) so the report does not depend on scheduling.
class CheckList {
public:
    using Task = std::function<std::vector<Finding>()>;

    void add(std::string id, std::string anchor, std::string parameters,
             std::function<std::pair<Value, Value>()> expected_and_observed, std::string note = {}) {
        tasks_.push_back({id, parameters, [=, fn = std::move(expected_and_observed)] {
                              auto [e, o] = fn();
                              return std::vector<Finding>{{id, anchor, parameters, e, o, note}};
                          }});
    }
    void add_group(std::string label, std::string parameters, Task task) {
        tasks_.push_back({std::move(label), std::move(parameters), std::move(task)});
    }
    void skip(std::string id, std::string anchor, std::string parameters, std::string reason) {
        skipped_.push_back({std::move(id), std::move(anchor), std::move(parameters), std::nullopt,
                            Value::of("-"), Status::skipped, std::move(reason), 0});
    }

    VerificationReport run(const std::string& suite) const {
        std::vector<std::vector<CheckRecord>> slots(tasks_.size());
        parallel_for(tasks_.size(), [&](std::size_t t) {
            auto start = std::chrono::steady_clock::now();
            std::vector<Finding> found;
            std::string error;
            try {
                found = tasks_[t].run();
            } catch (const std::exception& e) {
                error = e.what();
            }
            double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
            if (!error.empty()) {
                slots[t].push_back({tasks_[t].label, "", tasks_[t].parameters, std::nullopt, Value::of("error"),
                                    Status::fail, error, ms});
                return;
            }
            for (auto& f : found) {
                Status s = !f.expected || *f.expected == f.observed ? Status::pass : Status::fail;
                slots[t].push_back({f.id, f.anchor, f.parameters, f.expected, f.observed, s, f.note, ms});
            }
        });
        VerificationReport rep{suite, {}};
        for (auto& s : slots) rep.checks.insert(rep.checks.end(), s.begin(), s.end());
        rep.checks.insert(rep.checks.end(), skipped_.begin(), skipped_.end());
        std::stable_sort(rep.checks.begin(), rep.checks.end(),
                         [](const CheckRecord& a, const CheckRecord& b) { return a.id < b.id; });
        return rep;
    }

private:
    struct Pending {
        std::string label, parameters;
        Task run;
    };
    std::vector<Pending> tasks_;
    std::vector<CheckRecord> skipped_;
};

// ---- output ------------------------------------------------------------------

// Integers beyond 2^53 become decimal strings so that JSON readers stay exact.
inline nlohmann::ordered_json value_json(const Value& v) {
    static const Count safe = Count(1) << 53;
    if (v.integer && *v.integer <= safe && *v.integer >= -safe) return v.integer->convert_to<std::int64_t>();
    return v.str();
}

inline nlohmann::ordered_json report_json(const std::vector<VerificationReport>& reports, bool timing) {
    auto out = nlohmann::ordered_json::array();
    for (auto& r : reports) {
        nlohmann::ordered_json suite;
        suite["suite"] = r.suite;
        suite["checks"] = nlohmann::ordered_json::array();
        for (auto& c : r.checks) {
            nlohmann::ordered_json j;
            j["id"] = c.id;
            j["anchor"] = c.anchor;
            j["parameters"] = c.parameters;
            j["expected"] = c.expected ? value_json(*c.expected) : nullptr;
            j["observed"] = value_json(c.observed);
            j["status"] = status_name(c.status);
            if (!c.note.empty()) j["note"] = c.note;
            if (timing) j["runtime_ms"] = c.runtime_ms;
            suite["checks"].push_back(std::move(j));
        }
        suite["summary"] = {{"pass", r.count(Status::pass)},
                            {"fail", r.count(Status::fail)},
                            {"skipped", r.count(Status::skipped)}};
        out.push_back(std::move(suite));
    }
    return out;
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

inline std::string report_csv(const std::vector<VerificationReport>& reports, bool timing) {
    std::ostringstream os;
    os << "suite,id,anchor,parameters,expected,observed,status,note" << (timing ? ",runtime_ms" : "") << "\n";
    for (auto& r : reports)
        for (auto& c : r.checks) {
            os << csv_field(r.suite) << ',' << csv_field(c.id) << ',' << csv_field(c.anchor) << ','
               << csv_field(c.parameters) << ',' << csv_field(c.expected ? c.expected->str() : "") << ','
               << csv_field(c.observed.str()) << ',' << status_name(c.status) << ',' << csv_field(c.note);
            if (timing) os << ',' << c.runtime_ms;
            os << "\n";
        }
    return os.str();
}

inline std::string report_table(const std::vector<VerificationReport>& reports, bool timing) {
    std::ostringstream os;
    for (auto& r : reports) {
        std::size_t wid = 2, wpar = 10;
        for (auto& c : r.checks) {
            wid = std::max(wid, c.id.size());
            wpar = std::max(wpar, c.parameters.size());
        }
        os << "suite " << r.suite << "\n";
        for (auto& c : r.checks) {
            std::string status = status_name(c.status);
            os << "  " << status << std::string(8 - status.size(), ' ') << c.id << std::string(wid + 2 - c.id.size(), ' ')
               << c.parameters << std::string(wpar + 2 - c.parameters.size(), ' ')
               << "expected " << (c.expected ? c.expected->str() : "-") << "  observed " << c.observed.str();
            if (!c.note.empty()) os << "  (" << c.note << ")";
            if (timing) os << "  [" << static_cast<long long>(c.runtime_ms) << " ms]";
            os << "\n";
        }
        os << "  " << r.checks.size() << " checks: " << r.count(Status::pass) << " pass, " << r.count(Status::fail)
           << " fail, " << r.count(Status::skipped) << " skipped\n";
    }
    return os.str();
}

inline std::string format_reports(const std::vector<VerificationReport>& reports, const std::string& format, bool timing) {
    if (format == "json") return report_json(reports, timing).dump(2) + "\n";
    if (format == "csv") return report_csv(reports, timing);
    if (format == "table") return report_table(reports, timing);
    throw std::invalid_argument("unknown output format '" + format + "'");
}

}  // namespace coxsort
