#include "cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace vie::cli {

Format format_from_string(const std::string& s) {
    if (s == "csv") return Format::Csv;
    if (s == "json") return Format::Json;
    throw std::invalid_argument("unknown format '" + s + "' (csv or json)");
}

std::string format_real(double x) {
    if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.5e", x);
    return buf;
}

bool ConvergenceReport::failed() const {
    for (const auto& r : rows)
        if (!r.error.empty()) return true;
    return false;
}

void ConvergenceReport::fill_eoc() {
    for (std::size_t k = 0; k < rows.size(); ++k) {
        rows[k].eoc.reset();
        if (k == 0) continue;
        const ReportRow& a = rows[k - 1];
        const ReportRow& b = rows[k];
        if (!a.error.empty() || !b.error.empty()) continue;
        if (!(a.eps2 > 0.0) || !(b.eps2 > 0.0) || a.N == b.N || a.N <= 0) continue;
        rows[k].eoc = std::log(a.eps2 / b.eps2) / std::log(static_cast<double>(b.N) / a.N);
    }
}

namespace {

nlohmann::json row_json(const ReportRow& r) {
    nlohmann::json j = {{"N", r.N}, {"n", r.n}, {"wall_time_ms", r.wall_time_ms}};
    if (r.error.empty()) {
        j["eps1"] = r.eps1;
        j["eps2"] = r.eps2;
    } else {
        j["eps1"] = nullptr;
        j["eps2"] = nullptr;
        j["error"] = r.error;
    }
    j["eoc"] = r.eoc ? nlohmann::json(*r.eoc) : nlohmann::json(nullptr);
    return j;
}

} // namespace

std::string emit_report(const ConvergenceReport& r, Format f) {
    if (f == Format::Json) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& row : r.rows) rows.push_back(row_json(row));
        nlohmann::json j = {{"metadata", r.metadata}, {"rows", rows}};
        return j.dump(2) + "\n";
    }
    std::ostringstream out;
    out << "N,n,eps1,eps2,eoc,wall_time_ms\n";
    for (const auto& row : r.rows) {
        out << row.N << ',' << row.n << ',';
        if (row.error.empty()) out << format_real(row.eps1) << ',' << format_real(row.eps2);
        else out << ',';
        out << ',' << (row.eoc ? format_real(*row.eoc) : "") << ',' << row.wall_time_ms << '\n';
    }
    return out.str();
}

ConvergenceReport parse_report_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    ConvergenceReport r;
    r.metadata = j.at("metadata");
    for (const auto& jr : j.at("rows")) {
        ReportRow row;
        row.N = jr.at("N").get<int>();
        row.n = jr.at("n").get<long long>();
        row.wall_time_ms = jr.at("wall_time_ms").get<long long>();
        if (jr.contains("error")) {
            row.error = jr.at("error").get<std::string>();
        } else {
            row.eps1 = jr.at("eps1").get<double>();
            row.eps2 = jr.at("eps2").get<double>();
        }
        if (!jr.at("eoc").is_null()) row.eoc = jr.at("eoc").get<double>();
        r.rows.push_back(std::move(row));
    }
    return r;
}

std::string emit_table(const Table& t, Format f) {
    if (f == Format::Json) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& row : t.rows) {
            nlohmann::json jr = nlohmann::json::object();
            for (std::size_t c = 0; c < t.columns.size() && c < row.size(); ++c)
                std::visit([&](const auto& v) { jr[t.columns[c]] = v; }, row[c]);
            rows.push_back(jr);
        }
        return nlohmann::json{{"metadata", t.metadata}, {"rows", rows}}.dump(2) + "\n";
    }
    std::ostringstream out;
    for (std::size_t c = 0; c < t.columns.size(); ++c) out << (c ? "," : "") << t.columns[c];
    out << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ',';
            if (const auto* i = std::get_if<long long>(&row[c])) out << *i;
            else if (const auto* d = std::get_if<double>(&row[c])) out << format_real(*d);
            else out << std::get<std::string>(row[c]);
        }
        out << '\n';
    }
    return out.str();
}

} // namespace vie::cli
