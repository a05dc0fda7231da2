#pragma once

#include <charconv>
#include <fstream>
#include <string>
#include <vector>

#include "morrey/config_io.hpp"

namespace morrey {

inline constexpr const char* kToolVersion = "morrey-lab 0.1.0";

// Shortest round-trip decimal representation.
inline std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

struct Report {
    json doc;

    const json& results() const { return doc.at("results"); }
    std::string results_dump() const { return doc.at("results").dump(); }
    std::string dump() const { return doc.dump(2) + "\n"; }
};

namespace detail {

inline json vec_to_json(const Vec& v) {
    json a = json::array();
    for (int i = 0; i < v.dim(); ++i) a.push_back(v[i]);
    return a;
}

inline json profile_to_json(const AverageProfile& p) {
    json a = json::array();
    for (const auto& e : p.entries) {
        json row;
        row["k"] = e.k;
        row["radius"] = e.radius;
        row["value"] = e.value;
        row["argmax"] = vec_to_json(e.argmax);
        a.push_back(row);
    }
    return a;
}

inline json fit_to_json(const DecayFit& f) {
    json j;
    j["slope"] = f.slope;
    j["residual"] = f.residual;
    j["all_zero"] = f.all_zero;
    return j;
}

inline std::string csv_point(const json& pt) {
    std::string s;
    for (const auto& c : pt) {
        if (!s.empty()) s += " ";
        s += format_double(c.get<double>());
    }
    return s;
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw IoError("write failed for '" + path + "'");
}

} // namespace detail

inline void write_report(const Report& report, const std::string& path) {
    detail::write_text_file(path, report.dump());
}

// One CSV per profile/table in the results section, named <base>_<name>.csv.
// Numeric cells use the shortest round-trip decimal form.
inline std::vector<std::string> emit_profile_csv(const Report& report, const std::string& base) {
    const json& res = report.results();
    std::vector<std::string> written;
    auto emit = [&](const std::string& name, const std::string& header,
                    const std::vector<std::string>& lines) {
        const std::string path = base + "_" + name + ".csv";
        std::string text = header + "\n";
        for (const auto& l : lines) text += l + "\n";
        detail::write_text_file(path, text);
        written.push_back(path);
    };
    if (res.contains("profile")) {
        std::vector<std::string> lines;
        for (const auto& row : res["profile"])
            lines.push_back(format_double(row["k"].get<double>()) + "," +
                            format_double(row["value"].get<double>()) + "," +
                            detail::csv_point(row["argmax"]));
        emit("profile", "k_or_N,value,argmax_center", lines);
    }
    if (res.contains("truncation")) {
        std::vector<std::string> lines;
        for (const auto& row : res["truncation"])
            lines.push_back(format_double(row["N"].get<double>()) + "," +
                            format_double(row["value"].get<double>()));
        emit("truncation", "k_or_N,value", lines);
    }
    if (res.contains("table")) {
        std::vector<std::string> lines;
        for (const auto& row : res["table"])
            lines.push_back(format_double(row["scale"].get<double>()) + "," +
                            format_double(row["error"].get<double>()));
        emit("table", "k_or_N,value", lines);
    }
    if (res.contains("moduli")) {
        std::vector<std::string> lines;
        for (const auto& row : res["moduli"])
            lines.push_back(format_double(row["xi_norm"].get<double>()) + "," +
                            format_double(row["modulus"].get<double>()));
        emit("moduli", "k_or_N,value", lines);
    }
    if (res.contains("rows") && res.contains("empirical_constant")) {
        // phi-bounds rows carry the envelope alongside the estimate.
        std::vector<std::string> lines;
        for (const auto& row : res["rows"])
            lines.push_back(format_double(row["r"].get<double>()) + "," +
                            format_double(row["sup_estimate"].get<double>()) + "," +
                            format_double(row["bound"].get<double>()));
        emit("rows", "k_or_N,value,bound", lines);
    } else if (res.contains("rows")) {
        std::vector<std::string> lines;
        for (const auto& row : res["rows"]) {
            std::string line = row["fn"].get<std::string>();
            line += "," + format_double(row["weighted"].get<double>());
            line += "," + format_double(row["morrey"].get<double>());
            line += "," + format_double(row["ratio"].get<double>());
            line += row["skipped"].get<bool>() ? ",skipped" : ",";
            lines.push_back(line);
        }
        emit("rows", "fn,weighted_norm,morrey_norm,ratio,flag", lines);
    }
    if (res.contains("small_r")) {
        std::vector<std::string> lines;
        for (const auto& row : res["small_r"])
            lines.push_back(format_double(row["r"].get<double>()) + "," +
                            format_double(row["sup_estimate"].get<double>()));
        emit("small_r", "k_or_N,value", lines);
    }
    if (written.empty()) throw ConfigError("emit_profile_csv: report contains no profile or table");
    return written;
}

} // namespace morrey
