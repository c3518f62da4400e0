#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace hkw {

using json = nlohmann::json;

inline const std::vector<std::string>& provenance_tags()
{
    static const std::vector<std::string> t{"brute-force", "presented-SS", "closed-form", "crosscheck"};
    return t;
}

struct CsvRow {
    int degree = 0;
    std::optional<int> internal;
    int p_exponent = 0;
    std::string factors;
    std::string provenance;
};

struct Report {
    std::string command;
    json query = json::object();
    json payload = nullptr;
    std::string provenance = "closed-form";
    json conventions = json::object();
    std::vector<CsvRow> rows;
    std::string table;
    bool mismatch = false;
    std::vector<std::string> failures;
    double wall_ms = 0;
};

enum class Format { table, json, csv };

inline Format parse_format(const std::string& s)
{
    if (s == "table") return Format::table;
    if (s == "json") return Format::json;
    if (s == "csv") return Format::csv;
    throw std::invalid_argument("format must be table, json or csv");
}

inline void check_provenance(const Report& r)
{
    auto ok = [](const std::string& t) {
        for (const auto& a : provenance_tags())
            if (a == t) return true;
        return false;
    };
    if (!ok(r.provenance)) throw std::logic_error("report provenance '" + r.provenance + "' is not an allowed tag");
    for (const auto& row : r.rows)
        if (!ok(row.provenance)) throw std::logic_error("row provenance '" + row.provenance + "' is not an allowed tag");
}

inline json report_to_json(const Report& r)
{
    json rows = json::array();
    for (const auto& c : r.rows) {
        json j{{"degree", c.degree}, {"p_exponent", c.p_exponent}, {"factors", c.factors}, {"provenance", c.provenance}};
        j["internal_degree"] = c.internal ? json(*c.internal) : json(nullptr);
        rows.push_back(j);
    }
    return json{{"command", r.command}, {"query", r.query},     {"provenance", r.provenance}, {"conventions", r.conventions},
                {"result", r.payload},  {"rows", rows},         {"table", r.table},           {"mismatch", r.mismatch},
                {"failures", r.failures}};
}

inline Report report_from_json(const json& j)
{
    Report r;
    r.command = j.at("command").get<std::string>();
    r.query = j.at("query");
    r.provenance = j.at("provenance").get<std::string>();
    r.conventions = j.at("conventions");
    r.payload = j.at("result");
    for (const auto& c : j.at("rows")) {
        CsvRow row;
        row.degree = c.at("degree").get<int>();
        if (!c.at("internal_degree").is_null()) row.internal = c.at("internal_degree").get<int>();
        row.p_exponent = c.at("p_exponent").get<int>();
        row.factors = c.at("factors").get<std::string>();
        row.provenance = c.at("provenance").get<std::string>();
        r.rows.push_back(row);
    }
    r.table = j.at("table").get<std::string>();
    r.mismatch = j.at("mismatch").get<bool>();
    r.failures = j.at("failures").get<std::vector<std::string>>();
    return r;
}

inline std::string csv_quote(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string o = "\"";
    for (char c : s) {
        if (c == '"') o += '"';
        o += c;
    }
    return o + "\"";
}

// `config` is the full run configuration, echoed in every header.
inline std::string emit(const Report& r, Format f, const json& config, bool timing = false)
{
    std::ostringstream os;
    switch (f) {
    case Format::json: {
        json j = report_to_json(r);
        j.erase("table");
        j.erase("rows");
        j["config"] = config;
        if (timing) j["wall_ms"] = r.wall_ms;
        os << j.dump(2) << "\n";
        break;
    }
    case Format::csv:
        os << "# config: " << config.dump() << "\n";
        os << "degree,internal_degree,p_exponent,factors,provenance\n";
        for (const auto& c : r.rows)
            os << c.degree << "," << (c.internal ? std::to_string(*c.internal) : "") << "," << c.p_exponent << "," << csv_quote(c.factors) << "," << c.provenance << "\n";
        break;
    case Format::table:
        os << "# hkw " << r.command << "  config: " << config.dump() << "\n";
        os << "# provenance: " << r.provenance;
        if (!r.conventions.empty()) os << "  conventions: " << r.conventions.dump();
        os << "\n";
        if (timing) os << "# wall time: " << r.wall_ms << " ms\n";
        os << r.table;
        if (!r.failures.empty()) {
            os << "FAILURES (" << r.failures.size() << "):\n";
            for (const auto& x : r.failures) os << "  " << x << "\n";
        }
        break;
    }
    return os.str();
}

} // namespace hkw
