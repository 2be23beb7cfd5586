#ifndef VOLTCAST_CSV_HPP
#define VOLTCAST_CSV_HPP

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "voltcast/common.hpp"

namespace voltcast {

// Minimal CSV layer: comma separated, first row is the header, LF or CRLF
// line endings, empty cell means missing. No quoting; every producer in this
// project emits plain numeric cells.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cell);
            cell.clear();
        } else if (c != '\r') {
            cell.push_back(c);
        }
    }
    cells.push_back(cell);
    return cells;
}

inline CsvTable read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot open file: " + path);

    CsvTable table;
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (!have_header && line.empty()) continue;
        if (!have_header) {
            table.header = split_csv_line(line);
            have_header = true;
            continue;
        }
        if (line.empty()) continue;
        table.rows.push_back(split_csv_line(line));
    }
    if (!have_header || table.header.empty()) {
        throw EmptyInputError("empty CSV file: " + path);
    }
    return table;
}

// Parses a numeric cell with from_chars so the decimal point never depends on
// the process locale. Throws ParseError with the 1-based data row number.
inline double parse_csv_number(const std::string& cell, size_t row, const std::string& column) {
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    while (first < last && (*first == ' ' || *first == '\t')) ++first;
    while (last > first && (*(last - 1) == ' ' || *(last - 1) == '\t')) --last;
    double value = 0.0;
    auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr != last) {
        std::ostringstream msg;
        msg << "unparseable numeric cell \"" << cell << "\" at row " << row << ", column "
            << column;
        throw ParseError(msg.str());
    }
    return value;
}

inline void write_csv_file(const std::string& path, const CsvTable& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParameterError("cannot open file for writing: " + path);
    for (size_t j = 0; j < table.header.size(); ++j) {
        if (j) out << ',';
        out << table.header[j];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (size_t j = 0; j < row.size(); ++j) {
            if (j) out << ',';
            out << row[j];
        }
        out << '\n';
    }
}

}  // namespace voltcast

#endif  // VOLTCAST_CSV_HPP
