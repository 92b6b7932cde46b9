#pragma once

#include <algorithm>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "errors.hpp"
#include "extremal.hpp"
#include "numeric.hpp"

namespace leafdens {

enum class OutputFormat { csv, jsonl, pretty };

// A rectangular table of preformatted cells. All numbers are rendered as
// text by the producer, so output is byte-stable.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add(std::vector<std::string> row) {
        if (row.size() != columns.size())
            throw std::logic_error("row has " + std::to_string(row.size()) + " cells, table has " +
                                   std::to_string(columns.size()) + " columns");
        rows.push_back(std::move(row));
    }
};

namespace detail {

inline std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace detail

inline void emit_report(const Table& table, OutputFormat format, std::ostream& out) {
    switch (format) {
        case OutputFormat::csv:
            for (std::size_t c = 0; c < table.columns.size(); ++c)
                out << (c ? "," : "") << detail::csv_cell(table.columns[c]);
            out << '\n';
            for (const auto& row : table.rows) {
                for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << detail::csv_cell(row[c]);
                out << '\n';
            }
            break;
        case OutputFormat::jsonl:
            for (const auto& row : table.rows) {
                nlohmann::ordered_json j;
                for (std::size_t c = 0; c < row.size(); ++c) j[table.columns[c]] = row[c];
                out << j.dump() << '\n';
            }
            break;
        case OutputFormat::pretty: {
            std::vector<std::size_t> width(table.columns.size());
            for (std::size_t c = 0; c < table.columns.size(); ++c) width[c] = table.columns[c].size();
            for (const auto& row : table.rows)
                for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
            auto line = [&](const std::vector<std::string>& cells) {
                for (std::size_t c = 0; c < cells.size(); ++c) {
                    out << (c ? "  " : "") << cells[c];
                    if (c + 1 < cells.size()) out << std::string(width[c] - cells[c].size(), ' ');
                }
                out << '\n';
            };
            line(table.columns);
            for (const auto& row : table.rows) line(row);
            break;
        }
    }
    if (!out) throw std::runtime_error("failed writing report");
}

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) s += sep;
        s += parts[i];
    }
    return s;
}

// One row per n. Multiple minimizers are joined with ';'.
inline Table search_table(const SearchReport& rep) {
    Table t;
    t.columns = {"n", "min_count", "min_density_num", "min_density_den", "argmin_code", "min_density_decimal"};
    const bool has_strict = std::any_of(rep.rows.begin(), rep.rows.end(),
                                        [](const SearchRow& r) { return r.strict_min_count.has_value(); });
    const bool has_even = std::any_of(rep.rows.begin(), rep.rows.end(),
                                      [](const SearchRow& r) { return r.even_count.has_value(); });
    const bool has_verdict = std::any_of(rep.rows.begin(), rep.rows.end(),
                                         [](const SearchRow& r) { return r.verdict.has_value(); });
    if (has_strict) {
        t.columns.push_back("strict_min_count");
        t.columns.push_back("strict_min_density");
    }
    if (has_even) t.columns.push_back("even_tree_count");
    if (has_verdict) t.columns.push_back("verdict");
    for (const auto& r : rep.rows) {
        std::vector<std::string> row = {std::to_string(r.n),
                                        r.min_count.get_str(),
                                        r.min_density.get_num().get_str(),
                                        r.min_density.get_den().get_str(),
                                        join(r.argmin, ";"),
                                        to_decimal(r.min_density)};
        if (has_strict) {
            row.push_back(r.strict_min_count ? r.strict_min_count->get_str() : "");
            row.push_back(r.strict_min_density ? r.strict_min_density->get_str() : "");
        }
        if (has_even) row.push_back(r.even_count ? r.even_count->get_str() : "");
        if (has_verdict) row.push_back(r.verdict ? (*r.verdict ? "true" : "false") : "");
        t.add(std::move(row));
    }
    return t;
}

}  // namespace leafdens
