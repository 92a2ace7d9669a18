#pragma once

#include <utility>
#include <vector>

#include "mpflow/errors.hpp"

namespace mpflow {

/// Least-squares fit of log(value) against log(t); gamma_hat is the decay
/// exponent (minus the slope).
struct DecayFit {
    double gamma_hat = 0.0;
    double t_lo = 0.0, t_hi = 0.0;
    double rms_residual = 0.0;
    int samples = 0;
};

/// Requires >= 8 samples with positive values spanning at least one decade
/// inside [t_lo, t_hi].
DecayFit decay_slope_fit(const std::vector<std::pair<double, double>>& series, double t_lo,
                         double t_hi);

struct MonotonicityReport {
    int violations = 0;
    double max_uptick = 0.0;
};

/// Counts strict increases beyond slack * value(first sample).
MonotonicityReport monotonicity_report(const std::vector<std::pair<double, double>>& series,
                                       double slack = 1e-10);

}  // namespace mpflow
