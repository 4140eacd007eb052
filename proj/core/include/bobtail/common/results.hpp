#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace bobtail {

using Cell = std::variant<std::int64_t, double, std::string>;

/// Rows of an experiment, in a fixed column order.
struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
};

/// Resolved run configuration, echoed into every output file.
using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

enum class OutputFormat { csv, json };

OutputFormat parse_output_format(const std::string& name);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double x);

std::string render_config(const ConfigEcho& config);

/// CSV layout:
///   # config: key=value key=value ...
///   col1,col2,...
///   v1,v2,...
/// Strings containing a comma, quote or newline are double-quoted with
/// embedded quotes doubled.
///
/// JSON layout: {"config": {...}, "columns": [...], "rows": [{col: value}, ...]}.
void write_results(std::ostream& os, const ResultTable& table, const ConfigEcho& config,
                   OutputFormat format);

/// Throws std::runtime_error when the file cannot be opened for writing.
void write_results_file(const std::filesystem::path& path, const ResultTable& table,
                        const ConfigEcho& config, OutputFormat format);

/// Parses a CSV produced by write_results. Integers come back as int64,
/// other numbers as double, everything else as string.
ResultTable read_csv(std::istream& is, ConfigEcho* config = nullptr);

} // namespace bobtail
