#pragma once

#include <map>
#include <string>
#include <vector>

#include "mpflow/params.hpp"

namespace mpflow {

/// Per-decade maxima of the weighted symbol-error quantities
///   e11:  t   * sup_R |e11 - e^{-mu t R}|
///   e22:  t^2 * sup_R |e22 - (R/4) e^{-mu t R}|
///   e21:  t   * sup_R |e21 - (1/2) e^{-mu t R}|
/// (for gamma = 0 the allowed extra terms C e^{-c t}/(1+R), resp. C e^{-c t}
/// for e22, are subtracted first, with c the large-R limit of the slow decay
/// rate and C fitted from the sweep itself), plus the L1-L2 quantities
///   prop53_k:  t^((1+k)/2) * ( pi * int R^k |K(R,t)|_F^2 dR )^(1/2),  k = 0, 1
/// which are only meaningful for gamma > 0.  Boundedness of every sequence is
/// the paper's claim; the pass condition is max/min < ratio_limit per entry.
struct BoundsReport {
    MaterialParams params;
    std::vector<double> r_grid;
    std::vector<double> t_grid;
    std::map<std::string, std::vector<double>> per_decade_maxima;
    std::map<std::string, double> fitted_constants;
    std::map<std::string, double> decade_ratio;  // max/min per quantity
    double ratio_limit = 1.5;
    bool passed = false;
};

std::vector<double> log_spaced(double lo, double hi, int count);

/// Default grids: R log-spaced over [1e-8, 1e8], t log-spaced over [1, 1e4].
BoundsReport sweep_symbol_bounds(const MaterialParams& params, const std::vector<double>& r_grid,
                                 const std::vector<double>& t_grid, double ratio_limit = 1.5);

std::string bounds_report_to_json(const BoundsReport& report);

}  // namespace mpflow
