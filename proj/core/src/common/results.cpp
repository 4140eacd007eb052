#include <bobtail/common/results.hpp>

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace bobtail {

void ResultTable::add_row(std::vector<Cell> row)
{
    if (row.size() != columns.size())
        throw std::invalid_argument("ResultTable: row width does not match columns");
    rows.push_back(std::move(row));
}

OutputFormat parse_output_format(const std::string& name)
{
    if (name == "csv")
        return OutputFormat::csv;
    if (name == "json")
        return OutputFormat::json;
    throw std::invalid_argument("unknown output format: " + name);
}

std::string format_double(double x)
{
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc{})
        throw std::runtime_error("format_double: conversion failed");
    std::string s(buf, end);
    // Keep reals distinguishable from integers on read-back.
    if (s.find_first_of(".eE") == std::string::npos)
        s += ".0";
    return s;
}

std::string render_config(const ConfigEcho& config)
{
    std::string out;
    for (const auto& [key, value] : config) {
        if (!out.empty())
            out += ' ';
        out += key;
        out += '=';
        out += value;
    }
    return out;
}

namespace {

std::string quote_csv(const std::string& s)
{
    if (s.find_first_of(",\"\n\r") == std::string::npos && !s.empty())
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string cell_text(const Cell& cell)
{
    if (const auto* i = std::get_if<std::int64_t>(&cell))
        return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&cell))
        return format_double(*d);
    return quote_csv(std::get<std::string>(cell));
}

nlohmann::json cell_json(const Cell& cell)
{
    if (const auto* i = std::get_if<std::int64_t>(&cell))
        return *i;
    if (const auto* d = std::get_if<double>(&cell)) {
        if (!std::isfinite(*d))
            return format_double(*d);
        return *d;
    }
    return std::get<std::string>(cell);
}

std::vector<std::string> split_csv_line(const std::string& line)
{
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

Cell parse_cell(const std::string& text)
{
    if (text.empty())
        return std::string{};
    const char* first = text.data();
    const char* last = first + text.size();
    if (text.find_first_of(".eEna") == std::string::npos) {
        std::int64_t i = 0;
        auto [p, ec] = std::from_chars(first, last, i);
        if (ec == std::errc{} && p == last)
            return i;
    }
    if (text == "nan")
        return std::nan("");
    if (text == "inf")
        return HUGE_VAL;
    if (text == "-inf")
        return -HUGE_VAL;
    double d = 0.0;
    auto [p, ec] = std::from_chars(first, last, d);
    if (ec == std::errc{} && p == last)
        return d;
    return text;
}

} // namespace

void write_results(std::ostream& os, const ResultTable& table, const ConfigEcho& config,
                   OutputFormat format)
{
    if (format == OutputFormat::csv) {
        os << "# config: " << render_config(config) << '\n';
        for (std::size_t c = 0; c < table.columns.size(); ++c)
            os << (c ? "," : "") << quote_csv(table.columns[c]);
        os << '\n';
        for (const auto& row : table.rows) {
            for (std::size_t c = 0; c < row.size(); ++c)
                os << (c ? "," : "") << cell_text(row[c]);
            os << '\n';
        }
        return;
    }

    nlohmann::ordered_json doc;
    doc["config"] = nlohmann::ordered_json::object();
    for (const auto& [key, value] : config)
        doc["config"][key] = value;
    doc["columns"] = table.columns;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < row.size(); ++c)
            obj[table.columns[c]] = cell_json(row[c]);
        doc["rows"].push_back(std::move(obj));
    }
    os << doc.dump(2) << '\n';
}

void write_results_file(const std::filesystem::path& path, const ResultTable& table,
                        const ConfigEcho& config, OutputFormat format)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open output file: " + path.string());
    write_results(out, table, config, format);
    out.flush();
    if (!out)
        throw std::runtime_error("failed writing output file: " + path.string());
}

ResultTable read_csv(std::istream& is, ConfigEcho* config)
{
    ResultTable table;
    std::string line;
    bool have_header = false;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.rfind("# config:", 0) == 0) {
            if (config) {
                std::istringstream kv(line.substr(9));
                std::string item;
                while (kv >> item) {
                    const auto eq = item.find('=');
                    if (eq != std::string::npos)
                        config->emplace_back(item.substr(0, eq), item.substr(eq + 1));
                }
            }
            continue;
        }
        if (line.empty())
            continue;
        auto fields = split_csv_line(line);
        if (!have_header) {
            table.columns = std::move(fields);
            have_header = true;
            continue;
        }
        std::vector<Cell> row;
        row.reserve(fields.size());
        for (const auto& f : fields)
            row.push_back(parse_cell(f));
        table.add_row(std::move(row));
    }
    return table;
}

} // namespace bobtail
