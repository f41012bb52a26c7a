#pragma once

#include <optional>
#include <variant>
#include <string>
#include <vector>

#include <json.hpp>

namespace vie::cli {

enum class Format { Csv, Json };
Format format_from_string(const std::string& s);

struct ReportRow {
    int N = 0;
    long long n = 0;
    double eps1 = 0.0;
    double eps2 = 0.0;
    std::optional<double> eoc;
    long long wall_time_ms = 0;
    std::string error; ///< empty unless the row failed

    bool operator==(const ReportRow&) const = default;
};

struct ConvergenceReport {
    nlohmann::json metadata = nlohmann::json::object();
    std::vector<ReportRow> rows;

    bool failed() const;
    /// eoc of row k from eps2 of rows k-1 and k; absent for the first row and
    /// next to failed rows.
    void fill_eoc();
    bool operator==(const ConvergenceReport&) const = default;
};

/// CSV: header N,n,eps1,eps2,eoc,wall_time_ms; reals as %.5e; empty fields for
/// absent values. JSON: {"metadata": ..., "rows": [...]}.
std::string emit_report(const ConvergenceReport& r, Format f);
ConvergenceReport parse_report_json(const std::string& text);

/// Generic table for the diagnostic subcommands. Cells are either integers,
/// reals or strings.
struct Table {
    using Cell = std::variant<long long, double, std::string>;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    nlohmann::json metadata = nlohmann::json::object();
    bool failed = false;
};

std::string emit_table(const Table& t, Format f);

std::string format_real(double x);

} // namespace vie::cli
