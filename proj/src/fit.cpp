#include "mpflow/fit.hpp"

#include <cmath>

namespace mpflow {

DecayFit decay_slope_fit(const std::vector<std::pair<double, double>>& series, double t_lo,
                         double t_hi) {
    require(t_lo < t_hi, errc::invalid_argument, "decay_slope_fit: window is empty");
    std::vector<double> x, y;
    for (const auto& [t, v] : series) {
        if (t < t_lo || t > t_hi || t <= 0.0) continue;
        require(v > 0.0, errc::invalid_argument,
                "decay_slope_fit: nonpositive value at t=" + std::to_string(t));
        x.push_back(std::log(t));
        y.push_back(std::log(v));
    }
    require(x.size() >= 8, errc::invalid_argument,
            "decay_slope_fit: need at least 8 samples in the window, have " +
                std::to_string(x.size()));
    double xmin = x.front(), xmax = x.front();
    for (double v : x) {
        xmin = std::min(xmin, v);
        xmax = std::max(xmax, v);
    }
    require(xmax - xmin >= std::log(10.0) * (1.0 - 1e-9), errc::invalid_argument,
            "decay_slope_fit: window spans less than one decade");

    const double n = double(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double icept = (sy - slope * sx) / n;
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (slope * x[i] + icept);
        ss += r * r;
    }
    DecayFit fit;
    fit.gamma_hat = -slope;
    fit.t_lo = t_lo;
    fit.t_hi = t_hi;
    fit.rms_residual = std::sqrt(ss / n);
    fit.samples = int(x.size());
    return fit;
}

MonotonicityReport monotonicity_report(const std::vector<std::pair<double, double>>& series,
                                       double slack) {
    require(series.size() >= 2, errc::invalid_argument,
            "monotonicity_report: need at least 2 samples");
    const double tol = slack * std::abs(series.front().second);
    MonotonicityReport rep;
    for (std::size_t i = 1; i < series.size(); ++i) {
        const double up = series[i].second - series[i - 1].second;
        if (up > tol) {
            ++rep.violations;
            rep.max_uptick = std::max(rep.max_uptick, up);
        }
    }
    return rep;
}

}  // namespace mpflow
