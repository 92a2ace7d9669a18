#pragma once

#include <string>
#include <vector>

#include "mpflow/field.hpp"

namespace mpflow {

/// Snapshot on disk: <stem>.json header (grid n, L, time, field names,
/// endianness) plus one raw little-endian float64 binary per field with
/// row-major physical samples.
void write_snapshot(const std::string& stem, double time,
                    const std::vector<std::pair<std::string, const ScalarField*>>& fields);

struct Snapshot {
    int n = 0;
    double length = 0.0;
    double time = 0.0;
    std::vector<std::string> field_names;
    std::vector<std::vector<double>> data;  // physical samples per field
};

Snapshot read_snapshot(const std::string& stem);

}  // namespace mpflow
