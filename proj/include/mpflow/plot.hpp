#pragma once

#include <string>
#include <vector>

#include "mpflow/csv.hpp"

namespace mpflow {

struct PlotOptions {
    std::string x_column = "t";
    std::vector<std::string> y_columns;  // empty: every column except x
    bool log_x = false;
    bool log_y = false;
    std::string title;
};

/// Render the selected CSV columns as a standalone SVG line chart.
/// Deterministic byte output for identical input.  Non-finite and (on log
/// axes) nonpositive samples are skipped; an empty series is an error.
void plot_csv(const CsvTable& table, const PlotOptions& options, const std::string& svg_path);

}  // namespace mpflow
