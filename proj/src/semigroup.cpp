#include "mpflow/semigroup.hpp"

#include <cmath>

namespace mpflow {

SpectralState apply_semigroup(const SpectralState& z0, double t, const MaterialParams& params) {
    require(std::isfinite(t) && t >= 0.0, errc::invalid_argument,
            "apply_semigroup: t must be >= 0");
    const TorusGrid& g = z0.grid();
    require(g.same_as(z0.h_hat.grid()), errc::invalid_argument, "apply_semigroup: grid mismatch");
    SpectralState out = z0;
    if (t == 0.0) return out;
    const auto& w0 = z0.omega_hat.spec();
    const auto& h0 = z0.h_hat.spec();
    auto& w = out.omega_hat.spec();
    auto& h = out.h_hat.spec();
    for (std::size_t m = 0; m < g.size(); ++m) {
        const double R = g.ksq()[m];
        const SymbolMatrix E = symbol(R, t, params);
        w[m] = E.e11 * w0[m] + R * E.e12 * h0[m];
        h[m] = E.e21 * w0[m] + E.e22 * h0[m];
    }
    return out;
}

ScalarField heat_semigroup(const ScalarField& f, double nu, double t) {
    require(nu > 0.0, errc::invalid_argument, "heat_semigroup: nu must be > 0");
    require(std::isfinite(t) && t >= 0.0, errc::invalid_argument,
            "heat_semigroup: t must be >= 0");
    const TorusGrid& g = f.grid();
    ScalarField out = f;
    if (t == 0.0) return out;
    for (std::size_t m = 0; m < g.size(); ++m) out.spec()[m] *= std::exp(-nu * t * g.ksq()[m]);
    return out;
}

ScalarField profile_omega_hat(const SpectralState& z0, double t, const MaterialParams& params) {
    // curl of profile_u: e^{-mu t R} (omega0 + (R/2) h0)
    const TorusGrid& g = z0.grid();
    ScalarField out = ScalarField::zeros_spectral(z0.omega_hat.grid_ptr());
    const auto& w0 = z0.omega_hat.spec();
    const auto& h0 = z0.h_hat.spec();
    for (std::size_t m = 0; m < g.size(); ++m) {
        const double R = g.ksq()[m];
        out.spec()[m] = std::exp(-params.mu * t * R) * (w0[m] + 0.5 * R * h0[m]);
    }
    return out;
}

ScalarField profile_h_hat(const SpectralState& z0, double t, const MaterialParams& params) {
    // (1/2) e^{-mu t R} omega0 + (R/4) e^{-mu t R} h0
    const TorusGrid& g = z0.grid();
    ScalarField out = ScalarField::zeros_spectral(z0.h_hat.grid_ptr());
    const auto& w0 = z0.omega_hat.spec();
    const auto& h0 = z0.h_hat.spec();
    for (std::size_t m = 0; m < g.size(); ++m) {
        const double R = g.ksq()[m];
        out.spec()[m] = std::exp(-params.mu * t * R) * (0.5 * w0[m] + 0.25 * R * h0[m]);
    }
    return out;
}

std::pair<ScalarField, ScalarField> profile_u(const SpectralState& z0, double t,
                                              const MaterialParams& params) {
    require(t > 0.0, errc::invalid_argument, "profile_u: t must be > 0");
    return biot_savart(profile_omega_hat(z0, t, params));
}

ScalarField profile_h(const SpectralState& z0, double t, const MaterialParams& params) {
    require(t > 0.0, errc::invalid_argument, "profile_h: t must be > 0");
    return profile_h_hat(z0, t, params);
}

}  // namespace mpflow
