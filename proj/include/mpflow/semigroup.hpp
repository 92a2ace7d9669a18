#pragma once

#include "mpflow/state.hpp"
#include "mpflow/symbol.hpp"

namespace mpflow {

/// Exact linear evolution: per mode,
///   omega_hat(t) = e11 * omega0 + R * e12 * h0
///   h_hat(t)     = e21 * omega0 + e22 * h0.
/// At t = 0 the state is returned unchanged bit-for-bit.
SpectralState apply_semigroup(const SpectralState& z0, double t, const MaterialParams& params);

/// Heat flow: multiply each mode by exp(-nu t |k|^2).
ScalarField heat_semigroup(const ScalarField& f, double nu, double t);

/// First-order large-time profiles of the linear solution:
///   profile_u = e^{mu t Lap} u0 - (1/2) perp_grad e^{mu t Lap} h0
///   profile_h = (1/2) curl e^{mu t Lap} u0 - (1/4) Lap e^{mu t Lap} h0.
/// Returned in velocity form (u1, u2) resp. as a scalar field; computed from
/// the vorticity-form initial state.
std::pair<ScalarField, ScalarField> profile_u(const SpectralState& z0, double t,
                                              const MaterialParams& params);
ScalarField profile_h(const SpectralState& z0, double t, const MaterialParams& params);

/// Spectral vorticity of profile_u and spectral profile_h; cheaper building
/// blocks used by the diagnostics.
ScalarField profile_omega_hat(const SpectralState& z0, double t, const MaterialParams& params);
ScalarField profile_h_hat(const SpectralState& z0, double t, const MaterialParams& params);

}  // namespace mpflow
