#pragma once

#include <optional>

#include "mpflow/diagnostics.hpp"

namespace mpflow {

enum class RunMode {
    nonlinear,
    linear,       // nonlinearity off: every step is the exact propagator
    ns_reference  // Navier-Stokes comparator: viscosity mu, coupling and h off
};

struct SolverConfig {
    double dt = 1e-2;
    double t_end = 1.0;
    int save_every = 1;
    double cfl_limit = 0.5;
    bool enforce_dealias = true;
    bool strict = false;  // promote the CFL warning to an error
    RunMode mode = RunMode::nonlinear;

    void validate() const {
        require(std::isfinite(dt) && dt > 0.0, errc::validation, "time.dt must be > 0");
        require(std::isfinite(t_end) && t_end > 0.0, errc::validation, "time.t_end must be > 0");
        require(dt <= t_end, errc::validation, "time.dt must not exceed t_end");
        require(save_every >= 1, errc::validation, "time.save_every must be >= 1");
        require(cfl_limit > 0.0, errc::validation, "time.cfl_limit must be > 0");
    }
};

struct SolverDiagnostics {
    std::optional<GSchedule> g_schedule;  // samples low_freq_u at g(t)
    bool profile_errors = false;          // profile_err_* / diff_lin_* columns
    bool sup_norms = false;               // linf_zL column
};

struct Trajectory {
    std::vector<DiagnosticsRecord> records;              // strictly increasing t, first t = 0
    std::vector<DissipationAccumulators> accums;         // one per record
    SpectralState z0;
    SpectralState final_state;
    double validity_t_max = 0.0;  // torus window 0.1 / (mu k_min^2)
    std::vector<std::string> warnings;
};

/// Transport right-hand side N = (-u . grad omega, -u . grad h) with u from
/// the Biot-Savart law, products in physical space, result dealiased and
/// mean-free.
std::pair<ScalarField, ScalarField> nonlinear_rhs(const SpectralState& state,
                                                  const MaterialParams& params);

/// One integrating-factor RK4 step.  With the nonlinearity off this is the
/// exact propagator.
SpectralState step_ifrk4(const SpectralState& state, double dt, const MaterialParams& params,
                         RunMode mode = RunMode::nonlinear, bool enforce_dealias = true);

Trajectory simulate(const SpectralState& z0, const MaterialParams& params,
                    const SolverConfig& config, const SolverDiagnostics& diag = {});

}  // namespace mpflow
