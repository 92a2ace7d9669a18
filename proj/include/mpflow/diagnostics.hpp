#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "mpflow/fit.hpp"
#include "mpflow/semigroup.hpp"

namespace mpflow {

/// One time sample of every quantity the verification campaigns track.
/// The CSV contract emits exactly these fields in this order.
struct DiagnosticsRecord {
    double t = 0.0;
    double energy_u = 0.0;           // ||u||^2
    double energy_h = 0.0;           // ||h||^2
    double grad_u_sq = 0.0;          // ||grad u||^2 = ||omega||^2
    double grad_h_sq = 0.0;
    double omega_minus_2h_sq = 0.0;  // ||omega - 2h||^2
    double theta_sq = 0.0;           // theta = h - (chi+mu)/(2chi) omega
    double grad_theta_sq = 0.0;
    double psi = 0.0;                // mu*energy_h + chi*theta_sq, verbatim
    double eps_sq = 0.0;             // eps = h - omega/2
    double diss_u_cum = 0.0;         // int ||grad u||^2
    double diss_h_cum = 0.0;         // int ||grad h||^2
    double diss_coupling_cum = 0.0;  // int ||omega - 2h||^2
    double low_freq_u = 0.0;         // I_u at the configured radius schedule
    double linf_zL = 0.0;            // optional
    double profile_err_u = 0.0;      // optional
    double profile_err_h = 0.0;      // optional
    double diff_lin_u = 0.0;         // optional: ||u - u_L||
    double diff_lin_h = 0.0;         // optional: ||h - h_L||

    static const std::vector<std::string>& csv_columns();
    std::vector<double> csv_row() const;
};

/// Instantaneous quadratic functionals of a state, one spectral pass.
struct InstantRates {
    double energy_u = 0.0, energy_h = 0.0;
    double grad_u_sq = 0.0, grad_h_sq = 0.0;
    double omega_minus_2h_sq = 0.0;
    double theta_sq = 0.0, grad_theta_sq = 0.0;
    double eps_sq = 0.0;
    double eps_mix_sq = 0.0;   // ||grad eps - (mu/2chi) grad omega||^2
    double grad_omega_sq = 0.0;
};

InstantRates instant_rates(const SpectralState& state, const MaterialParams& params);

/// Running time integrals, trapezoid at full step resolution.
struct DissipationAccumulators {
    double grad_u = 0.0;      // int ||grad u||^2
    double grad_h = 0.0;      // int ||grad h||^2
    double coupling = 0.0;    // int ||omega - 2h||^2
    double grad_theta = 0.0;  // int ||grad theta||^2              (gamma = 0 identity)
    double eps = 0.0;         // int ||eps||^2                     (gamma > 0 identity)
    double eps_mix = 0.0;     // int ||grad eps - (mu/2chi) grad omega||^2
    double grad_omega = 0.0;  // int ||grad omega||^2

    void advance(const InstantRates& a, const InstantRates& b, double dt);
};

ScalarField theta_field(const SpectralState& state, const MaterialParams& params);
ScalarField epsilon_field(const SpectralState& state);

/// a = (gamma chi + mu chi + 2 mu gamma) / (4 chi^2); the minimizer of the
/// quadratic form constraint 16 chi^2 a^2 - 8(gamma chi + mu chi + 2 mu gamma) a
/// + (gamma - mu)^2 <= 0.
double a_coeff(const MaterialParams& params);
/// Value of that quadratic at a (must be <= 0 up to rounding).
double a_coeff_constraint(const MaterialParams& params, double a);

/// delta = mu + 5 chi - sqrt(mu^2 + 25 chi^2 - 6 chi mu), the Fourier
/// splitting damping rate; solves delta = 2(mu+chi-2 chi eta) = 8 chi - 4 chi/eta.
double delta_fs(const MaterialParams& params);
/// Residual of the defining system at delta (0 up to rounding).
double delta_fs_consistency(const MaterialParams& params);

/// zeta_Gamma(t): (1+t)^(-2 Gamma) for Gamma < 1, (1+t)^-2 log(e+t)^2 at
/// Gamma = 1, (1+t)^-2 for Gamma > 1.  Domain: t >= 0, 0 <= Gamma <= 2.
double zeta(double t, double Gamma);

struct RecordOptions {
    std::optional<double> low_freq_radius;  // g(t) for I_u
    const SpectralState* z0 = nullptr;      // enables profile/linear errors at t > 0
    bool sup_norms = false;                 // fills linf_zL (needs z0)
};

DiagnosticsRecord record(const SpectralState& state, const MaterialParams& params, double t,
                         const DissipationAccumulators& acc, const RecordOptions& opts = {});

/// Signed residual of the energy equality between two record indices:
///   E(t) - E(s) + 2 mu int ||grad u||^2 + 2 gamma int ||grad h||^2
///                + 2 chi int ||omega - 2h||^2.
double energy_equality_residual(const std::vector<DiagnosticsRecord>& records, std::size_t s_index,
                                std::size_t t_index, const MaterialParams& params);

/// gamma = 0: psi(t) - psi(s) + 2 chi (chi+mu) int [ ||omega-2h||^2 + ||grad theta||^2 ].
double identity_residual_gamma0(const std::vector<DiagnosticsRecord>& records,
                                const std::vector<DissipationAccumulators>& accums,
                                std::size_t s_index, std::size_t t_index,
                                const MaterialParams& params);

/// gamma > 0: (1/2)[||eps||^2 + a ||omega||^2](s..t) + int [ 4 chi ||eps||^2
///   + (gamma+chi) ||grad eps - (mu/2chi) grad omega||^2
///   + (mu gamma (mu+chi)/(4 chi^2)) ||grad omega||^2 ].
double identity_residual_gammapos(const std::vector<DiagnosticsRecord>& records,
                                  const std::vector<DissipationAccumulators>& accums,
                                  std::size_t s_index, std::size_t t_index,
                                  const MaterialParams& params);

/// Splitting radius schedule g(t)^2 = alpha / (delta (t + A)).
struct GSchedule {
    double alpha = 3.0;
    double A = 10.0;

    double g_sq(double t, double delta) const { return alpha / (delta * (t + A)); }
    double g(double t, double delta) const { return std::sqrt(g_sq(t, delta)); }
};

struct FourierSplittingReport {
    std::vector<double> times;
    std::vector<double> ratio;  // LHS/RHS along the trajectory
    double max_ratio = 0.0;
};

/// Evaluates ||z(t)||^2 e(t)  vs  ||z0||^2 + delta int e g^2 I_u, with
/// e(t) = exp(delta int g^2) by trapezoid over the record times.  Requires
/// records whose low_freq_u was sampled with the same schedule.
FourierSplittingReport fourier_splitting_check(const std::vector<DiagnosticsRecord>& records,
                                               const MaterialParams& params,
                                               const GSchedule& schedule);

struct ProfileErrors {
    double err_profile_u = 0.0;
    double err_profile_h = 0.0;
    double err_lin_u = 0.0;
    double err_lin_h = 0.0;
};

/// L2 distances of the current state to the heat-flow profiles and to the
/// exact linear evolution of z0.
ProfileErrors profile_errors(const SpectralState& state, const SpectralState& z0, double t,
                             const MaterialParams& params);

/// Max over grid points of |z_L| and |grad z_L| for the linear evolution of z0.
std::array<double, 2> sup_norm_zL(const SpectralState& z0, double t, const MaterialParams& params);

}  // namespace mpflow
