#pragma once

#include <string>
#include <vector>

#include "mpflow/errors.hpp"

namespace mpflow {

/// CSV contract: comma-separated, one header row, 17-significant-digit
/// decimal floats, LF line endings.  Byte-exact for identical inputs.
void write_csv(const std::string& path, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows);

std::string format_g17(double v);

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    int column_index(const std::string& name) const;
    std::vector<double> column(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);

}  // namespace mpflow
