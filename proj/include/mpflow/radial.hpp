#pragma once

#include <string>

#include "mpflow/params.hpp"

namespace mpflow {

/// Built-in radial spectral profiles Phi: continuous, Phi(0) != 0 and
/// Phi = O(|xi|^-2) at infinity.
enum class PhiKind { algebraic, gaussian };  // (1+|xi|^2)^-1  /  exp(-|xi|^2)

double phi_value(PhiKind kind, double rho);

/// Which parts of the power-law pair
///   u0_hat = (a_u/2) i xi_perp |xi|^(Gamma-2) Phi,   h0_hat = a_h |xi|^(Gamma-2) Phi
/// carry the amplitude.  enhanced_pair sets both, which makes
/// u0 - (1/2) perp_grad h0 vanish identically.
enum class RadialDataKind { velocity_only, micro_only, enhanced_pair };

struct RadialDataSpec {
    double Gamma = 1.0;  // in (0, 2]
    PhiKind phi = PhiKind::algebraic;
    double amplitude = 1.0;
    RadialDataKind kind = RadialDataKind::velocity_only;

    void validate() const {
        require(Gamma > 0.0 && Gamma <= 2.0, errc::invalid_argument,
                "RadialDataSpec: Gamma must lie in (0, 2]");
        require(std::isfinite(amplitude), errc::invalid_argument,
                "RadialDataSpec: amplitude must be finite");
    }
};

enum class RadialWhich { u_L, h_L, profile_error_u, profile_error_h, heat_u };

RadialWhich radial_which_from_name(const std::string& name);

/// Exact R^2 squared L2 norm of the selected quantity at time t, by adaptive
/// 1D quadrature in rho = |xi| (relative tolerance 1e-8).  The domain is
/// split at rho = 1 and truncated where the integrand falls below 1e-16 of
/// its peak.
double radial_norm_sq(const RadialDataSpec& spec, RadialWhich which, double t,
                      const MaterialParams& params);

}  // namespace mpflow
