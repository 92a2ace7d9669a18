#pragma once

#include <cmath>

#include "mpflow/errors.hpp"

namespace mpflow {

/// Viscosities of the 2D micropolar system.  mu (kinematic) and chi (vortex)
/// are strictly positive; gamma (spin) may vanish, which is the regime with
/// no smoothing in the microrotation equation.
struct MaterialParams {
    double mu = 1.0;
    double chi = 1.0;
    double gamma = 0.0;

    void validate() const {
        require(std::isfinite(mu) && mu > 0.0, errc::invalid_argument, "mu must be finite and > 0");
        require(std::isfinite(chi) && chi > 0.0, errc::invalid_argument, "chi must be finite and > 0");
        require(std::isfinite(gamma) && gamma >= 0.0, errc::invalid_argument,
                "gamma must be finite and >= 0");
    }
};

}  // namespace mpflow
