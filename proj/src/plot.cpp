#include "mpflow/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace mpflow {

namespace {

constexpr double W = 900.0, H = 600.0;
constexpr double ML = 80.0, MR = 30.0, MT = 40.0, MB = 60.0;

const char* PALETTE[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                         "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct Axis {
    double lo = 0.0, hi = 1.0;
    bool log = false;

    double place(double v, double a, double b) const {
        const double x = log ? std::log10(v) : v;
        const double l = log ? std::log10(lo) : lo;
        const double h = log ? std::log10(hi) : hi;
        return a + (x - l) / (h - l) * (b - a);
    }

    std::vector<double> ticks() const {
        std::vector<double> out;
        if (log) {
            const int d0 = int(std::ceil(std::log10(lo) - 1e-9));
            const int d1 = int(std::floor(std::log10(hi) + 1e-9));
            for (int d = d0; d <= d1; ++d) out.push_back(std::pow(10.0, d));
        } else {
            const double span = hi - lo;
            const double step = std::pow(10.0, std::floor(std::log10(span / 4.0)));
            const double mult = span / step > 8.0 ? 2.0 : 1.0;
            const double s = step * mult;
            for (double v = std::ceil(lo / s) * s; v <= hi + 1e-12 * span; v += s)
                out.push_back(v);
        }
        return out;
    }
};

}  // namespace

void plot_csv(const CsvTable& table, const PlotOptions& options, const std::string& svg_path) {
    require(!table.rows.empty(), errc::invalid_argument, "plot: CSV has no data rows");
    const std::vector<double> xs = table.column(options.x_column);
    std::vector<std::string> names = options.y_columns;
    if (names.empty())
        for (const auto& c : table.columns)
            if (c != options.x_column) names.push_back(c);
    require(!names.empty(), errc::invalid_argument, "plot: no y columns selected");

    struct Series {
        std::string name;
        std::vector<std::pair<double, double>> pts;
    };
    std::vector<Series> series;
    Axis ax{0, 1, options.log_x}, ay{0, 1, options.log_y};
    bool first = true;
    for (const auto& name : names) {
        Series s{name, {}};
        const std::vector<double> ys = table.column(name);
        for (std::size_t i = 0; i < ys.size(); ++i) {
            const double x = xs[i], y = ys[i];
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            if (options.log_x && x <= 0.0) continue;
            if (options.log_y && y <= 0.0) continue;
            s.pts.emplace_back(x, y);
            if (first) {
                ax.lo = ax.hi = x;
                ay.lo = ay.hi = y;
                first = false;
            }
            ax.lo = std::min(ax.lo, x);
            ax.hi = std::max(ax.hi, x);
            ay.lo = std::min(ay.lo, y);
            ay.hi = std::max(ay.hi, y);
        }
        require(!s.pts.empty(), errc::invalid_argument,
                "plot: series '" + name + "' has no plottable points");
        series.push_back(std::move(s));
    }
    if (ax.lo == ax.hi) {
        ax.lo -= 0.5;
        ax.hi += 0.5;
    }
    if (ay.lo == ay.hi) {
        if (options.log_y) {
            ay.lo *= 0.5;
            ay.hi *= 2.0;
        } else {
            ay.lo -= 0.5;
            ay.hi += 0.5;
        }
    }

    std::ofstream out(svg_path, std::ios::binary);
    require(out.good(), errc::io, "plot: cannot open " + svg_path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    out << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    if (!options.title.empty())
        out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
            << options.title << "</text>\n";
    // axes box
    out << "<rect x=\"" << ML << "\" y=\"" << MT << "\" width=\"" << W - ML - MR << "\" height=\""
        << H - MT - MB << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (double tx : ax.ticks()) {
        const double px = ax.place(tx, ML, W - MR);
        if (px < ML - 1e-6 || px > W - MR + 1e-6) continue;
        out << "<line x1=\"" << fmt(px) << "\" y1=\"" << H - MB << "\" x2=\"" << fmt(px)
            << "\" y2=\"" << H - MB + 6 << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << fmt(px) << "\" y=\"" << H - MB + 22
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << fmt(tx)
            << "</text>\n";
    }
    for (double ty : ay.ticks()) {
        const double py = ay.place(ty, H - MB, MT);
        if (py < MT - 1e-6 || py > H - MB + 1e-6) continue;
        out << "<line x1=\"" << ML - 6 << "\" y1=\"" << fmt(py) << "\" x2=\"" << ML << "\" y2=\""
            << fmt(py) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << ML - 10 << "\" y=\"" << fmt(py + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" << fmt(ty)
            << "</text>\n";
    }
    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = PALETTE[s % (sizeof PALETTE / sizeof PALETTE[0])];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : series[s].pts)
            out << fmt(ax.place(x, ML, W - MR)) << "," << fmt(ay.place(y, H - MB, MT)) << " ";
        out << "\"/>\n";
        // legend entry
        const double ly = MT + 18.0 + 18.0 * double(s);
        out << "<line x1=\"" << W - MR - 150 << "\" y1=\"" << fmt(ly - 4) << "\" x2=\""
            << W - MR - 125 << "\" y2=\"" << fmt(ly - 4) << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << W - MR - 118 << "\" y=\"" << fmt(ly)
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << series[s].name << "</text>\n";
    }
    out << "</svg>\n";
    require(out.good(), errc::io, "plot: write failed: " + svg_path);
}

}  // namespace mpflow
