#include "mpflow/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mpflow {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path, std::ios::binary);  // binary: keep LF endings everywhere
    require(out.good(), errc::io, "cannot open CSV for writing: " + path);
    for (std::size_t c = 0; c < columns.size(); ++c)
        out << (c ? "," : "") << columns[c];
    out << "\n";
    for (const auto& row : rows) {
        require(row.size() == columns.size(), errc::internal, "CSV row width mismatch");
        for (std::size_t c = 0; c < row.size(); ++c)
            out << (c ? "," : "") << format_g17(row[c]);
        out << "\n";
    }
    require(out.good(), errc::io, "CSV write failed: " + path);
}

int CsvTable::column_index(const std::string& name) const {
    for (std::size_t c = 0; c < columns.size(); ++c)
        if (columns[c] == name) return int(c);
    fail(errc::invalid_argument, "CSV has no column named '" + name + "'");
}

std::vector<double> CsvTable::column(const std::string& name) const {
    const int c = column_index(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(row[c]);
    return out;
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), errc::io, "cannot open CSV: " + path);
    CsvTable table;
    std::string line;
    bool header = true;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (header) {
            table.columns = cells;
            header = false;
            continue;
        }
        require(cells.size() == table.columns.size(), errc::parse,
                path + ": line " + std::to_string(line_no) + ": wrong number of fields");
        std::vector<double> row;
        for (const auto& c : cells) {
            try {
                row.push_back(std::stod(c));
            } catch (const std::exception&) {
                fail(errc::parse, path + ": line " + std::to_string(line_no) +
                                      ": not a number: '" + c + "'");
            }
        }
        table.rows.push_back(std::move(row));
    }
    require(!table.columns.empty(), errc::parse, path + ": empty CSV");
    return table;
}

}  // namespace mpflow
