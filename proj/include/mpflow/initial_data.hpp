#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mpflow/radial.hpp"
#include "mpflow/state.hpp"

namespace mpflow {

enum class InitialDataKind {
    power_law_velocity,  // u0_hat = (A/2) i k_perp |k|^(Gamma-2) Phi, h0 = 0
    power_law_micro,     // h0_hat = A |k|^(Gamma-2) Phi, u0 = 0
    enhanced_pair,       // u0 = (1/2) perp_grad h0, exactly, mode by mode
    gaussian_vortex,
    random_field,
    single_mode
};

InitialDataKind initial_data_kind_from_name(const std::string& name);
std::string initial_data_kind_name(InitialDataKind kind);

struct InitialDataSpec {
    InitialDataKind kind = InitialDataKind::gaussian_vortex;
    double amplitude = 1.0;

    // power-law kinds
    double Gamma = 1.0;
    PhiKind phi = PhiKind::algebraic;
    // smooth spectral cutoff exp(-(|k|/k_cut)^8); 0 means the default, two
    // thirds of the dealias limit.  Keeps torus power-law data resolved.
    double cutoff_k = 0.0;

    // microrotation channel (gaussian_vortex / random_field / single_mode)
    double h_amplitude = 0.0;

    // gaussian_vortex: center as fractions of the box side
    double center_x = 0.5, center_y = 0.5;
    double width = 0.0;    // 0 means L/16
    double h_width = 0.0;  // 0 means width

    // random_field
    std::uint64_t seed = 1;
    double spectrum_exponent = 0.0;

    // single_mode
    int mode_m1 = 1, mode_m2 = 0;

    void validate() const;
};

struct BuildResult {
    SpectralState state;
    // velocity-space initial data retained for profile computations
    ScalarField u0x, u0y;
    ScalarField h0;
    double lowest_shell_fraction = 0.0;  // of the velocity energy
    std::vector<std::string> warnings;
};

BuildResult build_initial_data(const InitialDataSpec& spec, GridPtr grid);

/// Vorticity is amplitude * (Gaussian(width) - its mean); h0 a Gaussian bump
/// of h_amplitude (mean kept).  Torus stand-in for localized L^1 data.
BuildResult gaussian_vortex(const InitialDataSpec& spec, GridPtr grid);

/// Reproducible Hermitian-paired random coefficients with |c| ~ |k|^exponent
/// under a smooth cutoff.
BuildResult random_field(const InitialDataSpec& spec, GridPtr grid);

}  // namespace mpflow
