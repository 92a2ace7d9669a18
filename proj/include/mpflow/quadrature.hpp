#pragma once

#include <functional>

#include "mpflow/errors.hpp"

namespace mpflow {

struct QuadResult {
    double value;
    double abs_error;
    int intervals;
};

/// Adaptive Gauss-Kronrod (G7, K15) integration of f over [a, b].
/// Bisects the interval with the largest error estimate until the summed
/// estimate falls below rel_tol * |value| (or abs_floor).  Fails with a
/// numerical error when the interval budget is exhausted.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double rel_tol = 1e-8, double abs_floor = 1e-300,
                              int max_intervals = 4000);

}  // namespace mpflow
