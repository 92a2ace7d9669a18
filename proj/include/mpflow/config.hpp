#pragma once

#include <optional>

#include "mpflow/initial_data.hpp"
#include "mpflow/solver.hpp"

namespace mpflow {

struct OutputOptions {
    std::string directory = "out";
    bool emit_csv = true;
    bool emit_json = true;
    bool emit_snapshots = false;
    bool emit_svg = false;
};

struct SlopeCheck {
    std::string quantity = "energy_u";  // column of the trajectory CSV
    double target = -1.0;               // expected log-log slope
    double tol = 0.15;
    double t_lo = 0.0, t_hi = 0.0;  // 0,0: derived from the validity window
};

/// Checks are enabled by the presence of their config table.
struct ChecksConfig {
    std::optional<double> energy_equality_tol;          // residual per unit time / E(0)
    std::optional<double> psi_monotonicity_slack;       // gamma = 0
    std::optional<double> identity_tol;                 // per unit time / scale
    std::optional<GSchedule> fourier_splitting;         // + ratio_max below
    double fourier_splitting_ratio_max = 2.0;
    std::optional<double> little_o_factor;              // final window vs peak
    std::vector<SlopeCheck> slopes;
    std::optional<double> linear_match_tol;             // vs apply_semigroup
};

struct LinearDecayConfig {
    RadialDataSpec data;
    double t_lo = 30.0, t_hi = 3000.0;
    int points = 13;
    std::optional<double> u_slope_target, u_slope_tol;
    std::optional<double> h_slope_target, h_slope_tol;
};

struct SymbolVerifyConfig {
    double r_lo = 1e-8, r_hi = 1e8;
    int r_points = 2041;
    double t_lo = 1.0, t_hi = 1e4;
    int t_points = 129;
    double ratio_limit = 1.5;
};

struct ProfileErrorConfig {
    double zeta_Gamma = 1.5;           // exponent used in zeta(t, Gamma)
    double ratio_max = 5.0;            // max/min of err_lin_u^2 / zeta over the window
    double h_ratio_slope_target = 1.0; // slope of err_lin_u^2 / err_lin_h^2
    double h_ratio_slope_tol = 0.4;
    double t_lo = 0.0, t_hi = 0.0;
};

struct CompareNsConfig {
    double final_ratio_max = 0.5;  // micropolar final ||u||^2 vs NS
    double slope_gap_min = 0.3;
    double t_lo = 0.0, t_hi = 0.0;
};

struct ExperimentConfig {
    MaterialParams params;
    int n = 128;
    double length = 2.0 * std::numbers::pi;
    SolverConfig time;
    InitialDataSpec initial;
    OutputOptions outputs;
    ChecksConfig checks;
    LinearDecayConfig linear_decay;
    SymbolVerifyConfig symbol_verify;
    ProfileErrorConfig profile_error;
    CompareNsConfig compare_ns;
    bool diag_profile_errors = false;
    bool diag_sup_norms = false;
    std::uint64_t seed = 1;
    int threads = 1;
    bool strict = false;
};

/// Parse and validate a TOML-subset experiment config.  Unknown keys are
/// rejected by name and line; defaults are applied explicitly.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

/// Canonical echo of the effective configuration (for the manifest).
std::string config_echo_json(const ExperimentConfig& config);

}  // namespace mpflow
