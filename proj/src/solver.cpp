#include "mpflow/solver.hpp"

#include <algorithm>
#include <cmath>

namespace mpflow {

namespace {

using Vec = std::vector<cplx>;

struct Propagator {
    // per-mode 2x2 matrix acting on (omega_hat, h_hat)
    std::vector<double> m11, m12, m21, m22;
};

Propagator build_propagator(const TorusGrid& g, double dt, const MaterialParams& params,
                            RunMode mode) {
    Propagator p;
    const std::size_t sz = g.size();
    p.m11.resize(sz);
    p.m12.resize(sz);
    p.m21.resize(sz);
    p.m22.resize(sz);
    for (std::size_t m = 0; m < sz; ++m) {
        const double R = g.ksq()[m];
        if (mode == RunMode::ns_reference) {
            p.m11[m] = std::exp(-params.mu * dt * R);
            p.m12[m] = p.m21[m] = 0.0;
            p.m22[m] = 1.0;
        } else {
            const SymbolMatrix E = symbol(R, dt, params);
            p.m11[m] = E.e11;
            p.m12[m] = R * E.e12;
            p.m21[m] = E.e21;
            p.m22[m] = E.e22;
        }
    }
    return p;
}

void apply_propagator(const Propagator& p, const Vec& w_in, const Vec& h_in, Vec& w_out,
                      Vec& h_out) {
    const std::size_t sz = w_in.size();
    for (std::size_t m = 0; m < sz; ++m) {
        const cplx w = w_in[m], h = h_in[m];
        w_out[m] = p.m11[m] * w + p.m12[m] * h;
        h_out[m] = p.m21[m] * w + p.m22[m] * h;
    }
}

// z_out = a + c * b
void axpy(const Vec& a, double c, const Vec& b, Vec& out) {
    for (std::size_t m = 0; m < a.size(); ++m) out[m] = a[m] + c * b[m];
}

class Stepper {
public:
    Stepper(GridPtr grid, const MaterialParams& params, double dt, RunMode mode,
            bool enforce_dealias)
        : grid_(std::move(grid)), params_(params), mode_(mode), dealias_(enforce_dealias), dt_(dt) {
        const std::size_t sz = grid_->size();
        for (Vec* v : {&u1_, &u2_, &fx_, &fy_, &gx_, &gy_, &nw_, &nh_})
            v->assign(sz, cplx(0.0, 0.0));
    }

    // propagator tables and stage buffers are only needed for stepping
    void prepare_stepping() {
        if (!stage_ready_) {
            half_ = build_propagator(*grid_, 0.5 * dt_, params_, mode_);
            full_ = build_propagator(*grid_, dt_, params_, mode_);
            const std::size_t sz = grid_->size();
            for (Vec* v : {&ew_, &eh_, &e1w_, &e1h_, &k1w_, &k1h_, &k2w_, &k2h_, &k3w_, &k3h_,
                           &tw_, &th_, &sw_, &sh_})
                v->assign(sz, cplx(0.0, 0.0));
            stage_ready_ = true;
        }
    }

    // N = (-u . grad omega, -u . grad h); the h channel is skipped in the
    // Navier-Stokes reference mode.
    void rhs(const Vec& w, const Vec& h, Vec& out_w, Vec& out_h) {
        const TorusGrid& g = *grid_;
        const std::size_t sz = g.size();
        const bool with_h = mode_ != RunMode::ns_reference;
        // velocity and gradients in spectral form
        for (int i = 0; i < g.n(); ++i) {
            const double k1 = g.wavenumber(i);
            for (int j = 0; j < g.n(); ++j) {
                const std::size_t m = g.index(i, j);
                const double k2 = g.wavenumber(j);
                const double R = g.ksq()[m];
                const cplx wc = w[m];
                const cplx iwc(-wc.imag(), wc.real());  // i * w
                if (R > 0.0) {
                    u1_[m] = (k2 / R) * iwc;
                    u2_[m] = -(k1 / R) * iwc;
                } else {
                    u1_[m] = u2_[m] = cplx(0.0, 0.0);
                }
                fx_[m] = k1 * iwc;
                fy_[m] = k2 * iwc;
                if (with_h) {
                    const cplx hc = h[m];
                    const cplx ihc(-hc.imag(), hc.real());
                    gx_[m] = k1 * ihc;
                    gy_[m] = k2 * ihc;
                }
            }
        }
        fft_inverse(g, u1_.data(), u1_.data());
        fft_inverse(g, u2_.data(), u2_.data());
        fft_inverse(g, fx_.data(), fx_.data());
        fft_inverse(g, fy_.data(), fy_.data());
        if (with_h) {
            fft_inverse(g, gx_.data(), gx_.data());
            fft_inverse(g, gy_.data(), gy_.data());
        }
        for (std::size_t m = 0; m < sz; ++m) {
            const double a = u1_[m].real(), b = u2_[m].real();
            nw_[m] = cplx(-(a * fx_[m].real() + b * fy_[m].real()), 0.0);
            if (with_h) nh_[m] = cplx(-(a * gx_[m].real() + b * gy_[m].real()), 0.0);
        }
        fft_forward(g, nw_.data(), out_w.data());
        if (with_h)
            fft_forward(g, nh_.data(), out_h.data());
        else
            std::fill(out_h.begin(), out_h.end(), cplx(0.0, 0.0));
        dealias_inplace(g, out_w.data());
        if (with_h) dealias_inplace(g, out_h.data());
        // transport preserves the mean for divergence-free u
        out_w[0] = cplx(0.0, 0.0);
        out_h[0] = cplx(0.0, 0.0);
    }

    void step(Vec& w, Vec& h) {
        prepare_stepping();
        if (mode_ == RunMode::linear) {
            apply_propagator(full_, w, h, tw_, th_);
            w.swap(tw_);
            h.swap(th_);
            w[0] = cplx(0.0, 0.0);
            return;
        }
        const double dt = dt_;
        rhs(w, h, k1w_, k1h_);                          // k1 = N(z)
        apply_propagator(half_, w, h, ew_, eh_);        // E1/2 z
        apply_propagator(half_, k1w_, k1h_, tw_, th_);  // E1/2 k1; k1 itself is done
        axpy(ew_, 0.5 * dt, tw_, sw_);
        axpy(eh_, 0.5 * dt, th_, sh_);
        rhs(sw_, sh_, k2w_, k2h_);  // k2 = N(E1/2 z + dt/2 E1/2 k1)
        axpy(ew_, 0.5 * dt, k2w_, sw_);
        axpy(eh_, 0.5 * dt, k2h_, sh_);
        rhs(sw_, sh_, k3w_, k3h_);                        // k3 = N(E1/2 z + dt/2 k2)
        apply_propagator(full_, w, h, e1w_, e1h_);        // E1 z
        apply_propagator(half_, k3w_, k3h_, k1w_, k1h_);  // E1/2 k3, into the free k1 buffer
        axpy(e1w_, dt, k1w_, sw_);
        axpy(e1h_, dt, k1h_, sh_);
        rhs(sw_, sh_, w, h);  // k4 = N(E1 z + dt E1/2 k3), written into the state buffers
        // z' = E1 z + dt/6 (E1 k1 + 2 E1/2 (k2 + k3) + k4)
        apply_propagator(half_, tw_, th_, tw_, th_);  // E1 k1 = E1/2 (E1/2 k1)
        for (std::size_t m = 0; m < sw_.size(); ++m) {
            sw_[m] = k2w_[m] + k3w_[m];
            sh_[m] = k2h_[m] + k3h_[m];
        }
        apply_propagator(half_, sw_, sh_, sw_, sh_);  // E1/2 (k2 + k3)
        const double c = dt / 6.0;
        for (std::size_t m = 0; m < sw_.size(); ++m) {
            w[m] = e1w_[m] + c * (tw_[m] + 2.0 * sw_[m] + w[m]);
            h[m] = e1h_[m] + c * (th_[m] + 2.0 * sh_[m] + h[m]);
        }
        if (dealias_) {
            dealias_inplace(*grid_, w.data());
            dealias_inplace(*grid_, h.data());
        }
        w[0] = cplx(0.0, 0.0);
    }

private:
    GridPtr grid_;
    MaterialParams params_;
    RunMode mode_;
    bool dealias_;
    double dt_;
    bool stage_ready_ = false;
    Propagator half_, full_;
    Vec u1_, u2_, fx_, fy_, gx_, gy_, nw_, nh_;
    Vec ew_, eh_, e1w_, e1h_, k1w_, k1h_, k2w_, k2h_, k3w_, k3h_, tw_, th_, sw_, sh_;
};

double max_speed(const SpectralState& state) {
    auto [u1, u2] = biot_savart(state.omega_hat);
    const ScalarField p1 = to_physical(u1), p2 = to_physical(u2);
    double umax = 0.0;
    for (std::size_t m = 0; m < p1.phys().size(); ++m)
        umax = std::max(umax,
                        std::sqrt(p1.phys()[m] * p1.phys()[m] + p2.phys()[m] * p2.phys()[m]));
    return umax;
}

}  // namespace

std::pair<ScalarField, ScalarField> nonlinear_rhs(const SpectralState& state,
                                                  const MaterialParams& params) {
    params.validate();
    Stepper st(state.omega_hat.grid_ptr(), params, 1.0, RunMode::nonlinear, true);
    ScalarField nw = ScalarField::zeros_spectral(state.omega_hat.grid_ptr());
    ScalarField nh = ScalarField::zeros_spectral(state.omega_hat.grid_ptr());
    st.rhs(state.omega_hat.spec(), state.h_hat.spec(), nw.spec(), nh.spec());
    for (const cplx& z : nw.spec())
        require(std::isfinite(z.real()) && std::isfinite(z.imag()), errc::diverged,
                "nonlinear_rhs: non-finite value (blow-up)");
    return {std::move(nw), std::move(nh)};
}

SpectralState step_ifrk4(const SpectralState& state, double dt, const MaterialParams& params,
                         RunMode mode, bool enforce_dealias) {
    require(dt > 0.0, errc::invalid_argument, "step_ifrk4: dt must be > 0");
    params.validate();
    Stepper st(state.omega_hat.grid_ptr(), params, dt, mode, enforce_dealias);
    SpectralState out = state;
    st.step(out.omega_hat.spec(), out.h_hat.spec());
    return out;
}

Trajectory simulate(const SpectralState& z0, const MaterialParams& params,
                    const SolverConfig& config, const SolverDiagnostics& diag) {
    params.validate();
    config.validate();
    const TorusGrid& g = z0.grid();
    GridPtr grid = z0.omega_hat.grid_ptr();

    Trajectory traj{{}, {}, z0, z0, 0.0, {}};
    const double kmin = g.k_min();
    traj.validity_t_max = 0.1 / (params.mu * kmin * kmin);

    long long steps = std::llround(config.t_end / config.dt);
    if (steps < 1) steps = 1;
    if (std::abs(steps * config.dt - config.t_end) > 1e-9 * std::max(1.0, config.t_end))
        traj.warnings.push_back("t_end adjusted to an integer number of steps: " +
                                std::to_string(steps * config.dt));

    // CFL advisory against the initial velocity
    if (config.mode != RunMode::linear) {
        const double umax = max_speed(z0);
        if (umax > 0.0) {
            const double dt_adv = config.cfl_limit * g.dx() / umax;
            if (config.dt > dt_adv) {
                const std::string msg = "CFL advisory: dt=" + std::to_string(config.dt) +
                                        " exceeds " + std::to_string(dt_adv);
                require(!config.strict, errc::validation, msg);
                traj.warnings.push_back(msg);
            }
        }
    }

    SpectralState z = z0;
    if (config.enforce_dealias) {
        dealias_inplace(g, z.omega_hat.spec().data());
        dealias_inplace(g, z.h_hat.spec().data());
    }
    z.enforce_invariants();

    const double delta = delta_fs(params);
    DissipationAccumulators acc;
    InstantRates prev_rates = instant_rates(z, params);

    auto make_record = [&](double t) {
        RecordOptions opts;
        if (diag.g_schedule) opts.low_freq_radius = diag.g_schedule->g(t, delta);
        if ((diag.profile_errors || diag.sup_norms) && t > 0.0) {
            opts.z0 = &traj.z0;
            opts.sup_norms = diag.sup_norms;
        }
        traj.records.push_back(record(z, params, t, acc, opts));
        traj.accums.push_back(acc);
    };
    make_record(0.0);

    Stepper st(grid, params, config.dt, config.mode, config.enforce_dealias);
    double last_saved_energy = traj.records.front().energy_u + traj.records.front().energy_h;
    for (long long s = 1; s <= steps; ++s) {
        st.step(z.omega_hat.spec(), z.h_hat.spec());
        const double t = double(s) * config.dt;
        const InstantRates rates = instant_rates(z, params);
        const double energy = rates.energy_u + rates.energy_h;
        require(std::isfinite(energy), errc::diverged,
                "solver diverged (non-finite energy); last valid time t=" +
                    std::to_string(traj.records.back().t));
        acc.advance(prev_rates, rates, config.dt);
        prev_rates = rates;
        if (s % config.save_every == 0 || s == steps) {
            require(energy <= 10.0 * last_saved_energy + 1e-300, errc::diverged,
                    "solver diverged (energy grew more than 10x between saves); last valid time "
                    "t=" +
                        std::to_string(traj.records.back().t));
            last_saved_energy = std::max(energy, 1e-300);
            make_record(t);
        }
    }
    traj.final_state = std::move(z);
    return traj;
}

}  // namespace mpflow
