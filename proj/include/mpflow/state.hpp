#pragma once

#include "mpflow/spectral_ops.hpp"

namespace mpflow {

/// Evolving state of the vorticity formulation: spectral vorticity
/// omega = curl u (mean-free on the torus) and spectral microrotation h.
struct SpectralState {
    ScalarField omega_hat;
    ScalarField h_hat;

    static SpectralState zeros(GridPtr grid) {
        return {ScalarField::zeros_spectral(grid), ScalarField::zeros_spectral(grid)};
    }

    const TorusGrid& grid() const { return omega_hat.grid(); }

    /// Force the invariants: omega zero mode exactly 0, both fields Hermitian.
    void enforce_invariants() {
        hermitian_project(grid(), omega_hat.spec().data());
        hermitian_project(grid(), h_hat.spec().data());
        omega_hat.spec()[0] = cplx(0.0, 0.0);
    }
};

}  // namespace mpflow
