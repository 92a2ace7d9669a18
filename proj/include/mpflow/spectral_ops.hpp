#pragma once

#include <utility>

#include "mpflow/field.hpp"

namespace mpflow {

/// Fourier-multiplier operators.  All take and return spectral fields.
std::pair<ScalarField, ScalarField> gradient(const ScalarField& f);
std::pair<ScalarField, ScalarField> perp_gradient(const ScalarField& f);
ScalarField laplacian(const ScalarField& f);
ScalarField curl(const ScalarField& u1, const ScalarField& u2);

/// Velocity from vorticity: u_hat = -i xi_perp / |xi|^2 * omega_hat.
/// Requires a mean-free vorticity (zero mode below 1e-12 of the field norm).
std::pair<ScalarField, ScalarField> biot_savart(const ScalarField& omega_hat);

/// Zero every coefficient outside the two-thirds mask.  Idempotent.
ScalarField dealias(const ScalarField& f);
void dealias_inplace(const TorusGrid& grid, cplx* spec);

/// L2 norms over the box (Plancherel on the spectral side).
double l2_norm_sq(const ScalarField& f);
double h1_seminorm_sq(const ScalarField& f);

/// Sum of |coefficient|^2 (in the L2 normalization) over modes |k| <= radius,
/// accumulated in ascending mode index for determinism.
double low_freq_energy(const ScalarField& f, double radius);

/// Largest |spec(k) - conj(spec(-k))| relative to the field's max coefficient.
double hermitian_asymmetry(const ScalarField& f);
/// Overwrite with the Hermitian-symmetric part, making the physical field real.
void hermitian_project(const TorusGrid& grid, cplx* spec);

}  // namespace mpflow
