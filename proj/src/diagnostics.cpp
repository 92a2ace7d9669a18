#include "mpflow/diagnostics.hpp"

#include <algorithm>
#include <cmath>

namespace mpflow {

const std::vector<std::string>& DiagnosticsRecord::csv_columns() {
    static const std::vector<std::string> cols = {
        "t",          "energy_u",   "energy_h",          "grad_u_sq",  "grad_h_sq",
        "omega_minus_2h_sq", "theta_sq", "grad_theta_sq", "psi",       "eps_sq",
        "diss_u_cum", "diss_h_cum", "diss_coupling_cum", "low_freq_u", "linf_zL",
        "profile_err_u", "profile_err_h", "diff_lin_u", "diff_lin_h"};
    return cols;
}

std::vector<double> DiagnosticsRecord::csv_row() const {
    return {t,
            energy_u,
            energy_h,
            grad_u_sq,
            grad_h_sq,
            omega_minus_2h_sq,
            theta_sq,
            grad_theta_sq,
            psi,
            eps_sq,
            diss_u_cum,
            diss_h_cum,
            diss_coupling_cum,
            low_freq_u,
            linf_zL,
            profile_err_u,
            profile_err_h,
            diff_lin_u,
            diff_lin_h};
}

InstantRates instant_rates(const SpectralState& state, const MaterialParams& params) {
    const TorusGrid& g = state.grid();
    const auto& w = state.omega_hat.spec();
    const auto& h = state.h_hat.spec();
    const double ct = (params.chi + params.mu) / (2.0 * params.chi);
    const double cm = params.mu / (2.0 * params.chi);
    InstantRates r;
    for (std::size_t m = 0; m < g.size(); ++m) {
        const double R = g.ksq()[m];
        const cplx wc = w[m], hc = h[m];
        const double nw = std::norm(wc), nh = std::norm(hc);
        if (R > 0.0) r.energy_u += nw / R;
        r.energy_h += nh;
        r.grad_u_sq += nw;
        r.grad_h_sq += R * nh;
        r.omega_minus_2h_sq += std::norm(wc - 2.0 * hc);
        const double ntheta = std::norm(hc - ct * wc);
        r.theta_sq += ntheta;
        r.grad_theta_sq += R * ntheta;
        const cplx ec = hc - 0.5 * wc;
        r.eps_sq += std::norm(ec);
        r.eps_mix_sq += R * std::norm(ec - cm * wc);
        r.grad_omega_sq += R * nw;
    }
    const double n2 = double(g.n()) * g.n();
    const double scale = g.length() * g.length() / (n2 * n2);
    r.energy_u *= scale;
    r.energy_h *= scale;
    r.grad_u_sq *= scale;
    r.grad_h_sq *= scale;
    r.omega_minus_2h_sq *= scale;
    r.theta_sq *= scale;
    r.grad_theta_sq *= scale;
    r.eps_sq *= scale;
    r.eps_mix_sq *= scale;
    r.grad_omega_sq *= scale;
    return r;
}

void DissipationAccumulators::advance(const InstantRates& a, const InstantRates& b, double dt) {
    const double half = 0.5 * dt;
    grad_u += half * (a.grad_u_sq + b.grad_u_sq);
    grad_h += half * (a.grad_h_sq + b.grad_h_sq);
    coupling += half * (a.omega_minus_2h_sq + b.omega_minus_2h_sq);
    grad_theta += half * (a.grad_theta_sq + b.grad_theta_sq);
    eps += half * (a.eps_sq + b.eps_sq);
    eps_mix += half * (a.eps_mix_sq + b.eps_mix_sq);
    grad_omega += half * (a.grad_omega_sq + b.grad_omega_sq);
}

ScalarField theta_field(const SpectralState& state, const MaterialParams& params) {
    params.validate();
    const double ct = (params.chi + params.mu) / (2.0 * params.chi);
    ScalarField out = state.h_hat;
    const auto& w = state.omega_hat.spec();
    for (std::size_t m = 0; m < out.spec().size(); ++m) out.spec()[m] -= ct * w[m];
    return out;
}

ScalarField epsilon_field(const SpectralState& state) {
    ScalarField out = state.h_hat;
    const auto& w = state.omega_hat.spec();
    for (std::size_t m = 0; m < out.spec().size(); ++m) out.spec()[m] -= 0.5 * w[m];
    return out;
}

double a_coeff(const MaterialParams& params) {
    params.validate();
    return (params.gamma * params.chi + params.mu * params.chi + 2.0 * params.mu * params.gamma) /
           (4.0 * params.chi * params.chi);
}

double a_coeff_constraint(const MaterialParams& params, double a) {
    const double B = params.gamma * params.chi + params.mu * params.chi +
                     2.0 * params.mu * params.gamma;
    const double gm = params.gamma - params.mu;
    return 16.0 * params.chi * params.chi * a * a - 8.0 * B * a + gm * gm;
}

double delta_fs(const MaterialParams& params) {
    params.validate();
    const double mu = params.mu, chi = params.chi;
    return mu + 5.0 * chi - std::sqrt(mu * mu + 25.0 * chi * chi - 6.0 * chi * mu);
}

double delta_fs_consistency(const MaterialParams& params) {
    const double mu = params.mu, chi = params.chi;
    const double delta = delta_fs(params);
    // eta solves delta = 2(mu + chi - 2 chi eta); the second equation
    // delta = 8 chi - 4 chi / eta must then hold as well
    const double eta = (mu + chi - 0.5 * delta) / (2.0 * chi);
    return (8.0 * chi - 4.0 * chi / eta) - delta;
}

double zeta(double t, double Gamma) {
    require(t >= 0.0, errc::invalid_argument, "zeta: t must be >= 0");
    require(Gamma >= 0.0 && Gamma <= 2.0, errc::invalid_argument, "zeta: Gamma out of [0, 2]");
    if (Gamma < 1.0) return std::pow(1.0 + t, -2.0 * Gamma);
    if (Gamma == 1.0) {
        const double lg = std::log(std::exp(1.0) + t);
        return lg * lg / ((1.0 + t) * (1.0 + t));
    }
    return 1.0 / ((1.0 + t) * (1.0 + t));
}

namespace {

// ||u - v||^2 for the velocities induced by two vorticities
double velocity_diff_sq(const TorusGrid& g, const std::vector<cplx>& wa,
                        const std::vector<cplx>& wb) {
    double s = 0.0;
    for (std::size_t m = 0; m < g.size(); ++m) {
        const double R = g.ksq()[m];
        if (R > 0.0) s += std::norm(wa[m] - wb[m]) / R;
    }
    const double n2 = double(g.n()) * g.n();
    return s * g.length() * g.length() / (n2 * n2);
}

double field_diff_sq(const TorusGrid& g, const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double s = 0.0;
    for (std::size_t m = 0; m < g.size(); ++m) s += std::norm(a[m] - b[m]);
    const double n2 = double(g.n()) * g.n();
    return s * g.length() * g.length() / (n2 * n2);
}

}  // namespace

ProfileErrors profile_errors(const SpectralState& state, const SpectralState& z0, double t,
                             const MaterialParams& params) {
    require(t > 0.0, errc::invalid_argument, "profile_errors: t must be > 0");
    const TorusGrid& g = state.grid();
    ProfileErrors out;
    const ScalarField wp = profile_omega_hat(z0, t, params);
    const ScalarField hp = profile_h_hat(z0, t, params);
    out.err_profile_u = std::sqrt(velocity_diff_sq(g, state.omega_hat.spec(), wp.spec()));
    out.err_profile_h = std::sqrt(field_diff_sq(g, state.h_hat.spec(), hp.spec()));
    const SpectralState zL = apply_semigroup(z0, t, params);
    out.err_lin_u = std::sqrt(velocity_diff_sq(g, state.omega_hat.spec(), zL.omega_hat.spec()));
    out.err_lin_h = std::sqrt(field_diff_sq(g, state.h_hat.spec(), zL.h_hat.spec()));
    return out;
}

std::array<double, 2> sup_norm_zL(const SpectralState& z0, double t, const MaterialParams& params) {
    require(t > 0.0, errc::invalid_argument, "sup_norm_zL: t must be > 0");
    const SpectralState zL = apply_semigroup(z0, t, params);
    auto [u1, u2] = biot_savart(zL.omega_hat);
    const ScalarField u1p = to_physical(u1), u2p = to_physical(u2), hp = to_physical(zL.h_hat);
    double linf_z = 0.0;
    for (std::size_t m = 0; m < u1p.phys().size(); ++m) {
        const double zmag = std::sqrt(u1p.phys()[m] * u1p.phys()[m] +
                                      u2p.phys()[m] * u2p.phys()[m] + hp.phys()[m] * hp.phys()[m]);
        linf_z = std::max(linf_z, zmag);
    }
    auto [u1x, u1y] = gradient(u1);
    auto [u2x, u2y] = gradient(u2);
    auto [hx, hy] = gradient(zL.h_hat);
    const ScalarField g1 = to_physical(u1x), g2 = to_physical(u1y), g3 = to_physical(u2x),
                      g4 = to_physical(u2y), g5 = to_physical(hx), g6 = to_physical(hy);
    double linf_grad = 0.0;
    for (std::size_t m = 0; m < g1.phys().size(); ++m) {
        const double v = g1.phys()[m] * g1.phys()[m] + g2.phys()[m] * g2.phys()[m] +
                         g3.phys()[m] * g3.phys()[m] + g4.phys()[m] * g4.phys()[m] +
                         g5.phys()[m] * g5.phys()[m] + g6.phys()[m] * g6.phys()[m];
        linf_grad = std::max(linf_grad, std::sqrt(v));
    }
    return {linf_z, linf_grad};
}

DiagnosticsRecord record(const SpectralState& state, const MaterialParams& params, double t,
                         const DissipationAccumulators& acc, const RecordOptions& opts) {
    const InstantRates r = instant_rates(state, params);
    DiagnosticsRecord rec;
    rec.t = t;
    rec.energy_u = r.energy_u;
    rec.energy_h = r.energy_h;
    rec.grad_u_sq = r.grad_u_sq;
    rec.grad_h_sq = r.grad_h_sq;
    rec.omega_minus_2h_sq = r.omega_minus_2h_sq;
    rec.theta_sq = r.theta_sq;
    rec.grad_theta_sq = r.grad_theta_sq;
    rec.psi = params.mu * rec.energy_h + params.chi * rec.theta_sq;
    rec.eps_sq = r.eps_sq;
    rec.diss_u_cum = acc.grad_u;
    rec.diss_h_cum = acc.grad_h;
    rec.diss_coupling_cum = acc.coupling;
    if (opts.low_freq_radius) {
        // low-frequency velocity energy I_u over |k| <= radius
        const TorusGrid& g = state.grid();
        const double r2 = *opts.low_freq_radius * *opts.low_freq_radius;
        double s = 0.0;
        for (std::size_t m = 0; m < g.size(); ++m) {
            const double R = g.ksq()[m];
            if (R > 0.0 && R <= r2) s += std::norm(state.omega_hat.spec()[m]) / R;
        }
        const double n2 = double(g.n()) * g.n();
        rec.low_freq_u = s * g.length() * g.length() / (n2 * n2);
    }
    if (opts.z0 != nullptr && t > 0.0) {
        const ProfileErrors pe = profile_errors(state, *opts.z0, t, params);
        rec.profile_err_u = pe.err_profile_u;
        rec.profile_err_h = pe.err_profile_h;
        rec.diff_lin_u = pe.err_lin_u;
        rec.diff_lin_h = pe.err_lin_h;
        if (opts.sup_norms) rec.linf_zL = sup_norm_zL(*opts.z0, t, params)[0];
    }
    return rec;
}

double energy_equality_residual(const std::vector<DiagnosticsRecord>& records, std::size_t s_index,
                                std::size_t t_index, const MaterialParams& params) {
    require(s_index < records.size() && t_index < records.size() && s_index <= t_index,
            errc::invalid_argument, "energy_equality_residual: bad indices");
    const DiagnosticsRecord& a = records[s_index];
    const DiagnosticsRecord& b = records[t_index];
    const double Eb = b.energy_u + b.energy_h;
    const double Ea = a.energy_u + a.energy_h;
    return Eb - Ea + 2.0 * params.mu * (b.diss_u_cum - a.diss_u_cum) +
           2.0 * params.gamma * (b.diss_h_cum - a.diss_h_cum) +
           2.0 * params.chi * (b.diss_coupling_cum - a.diss_coupling_cum);
}

double identity_residual_gamma0(const std::vector<DiagnosticsRecord>& records,
                                const std::vector<DissipationAccumulators>& accums,
                                std::size_t s_index, std::size_t t_index,
                                const MaterialParams& params) {
    require(params.gamma == 0.0, errc::invalid_argument,
            "identity_residual_gamma0: gamma must be 0");
    require(s_index < records.size() && t_index < records.size() && s_index <= t_index &&
                records.size() == accums.size(),
            errc::invalid_argument, "identity_residual_gamma0: bad indices");
    const double c = 2.0 * params.chi * (params.chi + params.mu);
    const double dcoupling = accums[t_index].coupling - accums[s_index].coupling;
    const double dtheta = accums[t_index].grad_theta - accums[s_index].grad_theta;
    return records[t_index].psi - records[s_index].psi + c * (dcoupling + dtheta);
}

double identity_residual_gammapos(const std::vector<DiagnosticsRecord>& records,
                                  const std::vector<DissipationAccumulators>& accums,
                                  std::size_t s_index, std::size_t t_index,
                                  const MaterialParams& params) {
    require(params.gamma > 0.0, errc::invalid_argument,
            "identity_residual_gammapos: gamma must be > 0");
    require(s_index < records.size() && t_index < records.size() && s_index <= t_index &&
                records.size() == accums.size(),
            errc::invalid_argument, "identity_residual_gammapos: bad indices");
    const double a = a_coeff(params);
    auto quad = [&](const DiagnosticsRecord& r) { return 0.5 * (r.eps_sq + a * r.grad_u_sq); };
    const auto& As = accums[s_index];
    const auto& At = accums[t_index];
    const double c_mix = params.gamma + params.chi;
    const double c_gw = params.mu * params.gamma * (params.mu + params.chi) /
                        (4.0 * params.chi * params.chi);
    return quad(records[t_index]) - quad(records[s_index]) +
           4.0 * params.chi * (At.eps - As.eps) + c_mix * (At.eps_mix - As.eps_mix) +
           c_gw * (At.grad_omega - As.grad_omega);
}

FourierSplittingReport fourier_splitting_check(const std::vector<DiagnosticsRecord>& records,
                                               const MaterialParams& params,
                                               const GSchedule& schedule) {
    require(records.size() >= 2, errc::invalid_argument,
            "fourier_splitting_check: need at least 2 records");
    const double delta = delta_fs(params);
    require(schedule.g(records.front().t, delta) <= 1.0, errc::invalid_argument,
            "fourier_splitting_check: schedule violates g <= 1");
    FourierSplittingReport rep;
    const double z0sq = records.front().energy_u + records.front().energy_h;
    double exponent = 0.0;  // delta int g^2, trapezoid
    double rhs_int = 0.0;   // int e g^2 I_u, trapezoid
    double prev_e = 1.0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const DiagnosticsRecord& r = records[i];
        if (i > 0) {
            const DiagnosticsRecord& p = records[i - 1];
            const double dt = r.t - p.t;
            exponent += 0.5 * dt * delta * (schedule.g_sq(p.t, delta) + schedule.g_sq(r.t, delta));
            const double e_now = std::exp(exponent);
            rhs_int += 0.5 * dt *
                       (prev_e * schedule.g_sq(p.t, delta) * p.low_freq_u +
                        e_now * schedule.g_sq(r.t, delta) * r.low_freq_u);
            prev_e = e_now;
        }
        const double lhs = (r.energy_u + r.energy_h) * prev_e;
        const double rhs = z0sq + delta * rhs_int;
        const double ratio = rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? HUGE_VAL : 0.0);
        rep.times.push_back(r.t);
        rep.ratio.push_back(ratio);
        rep.max_ratio = std::max(rep.max_ratio, ratio);
    }
    return rep;
}

}  // namespace mpflow
