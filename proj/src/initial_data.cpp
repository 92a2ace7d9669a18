#include "mpflow/initial_data.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

namespace mpflow {

InitialDataKind initial_data_kind_from_name(const std::string& name) {
    if (name == "power_law_velocity") return InitialDataKind::power_law_velocity;
    if (name == "power_law_micro") return InitialDataKind::power_law_micro;
    if (name == "enhanced_pair") return InitialDataKind::enhanced_pair;
    if (name == "gaussian_vortex") return InitialDataKind::gaussian_vortex;
    if (name == "random_field") return InitialDataKind::random_field;
    if (name == "single_mode") return InitialDataKind::single_mode;
    fail(errc::validation, "unknown initial data kind: " + name);
}

std::string initial_data_kind_name(InitialDataKind kind) {
    switch (kind) {
        case InitialDataKind::power_law_velocity: return "power_law_velocity";
        case InitialDataKind::power_law_micro: return "power_law_micro";
        case InitialDataKind::enhanced_pair: return "enhanced_pair";
        case InitialDataKind::gaussian_vortex: return "gaussian_vortex";
        case InitialDataKind::random_field: return "random_field";
        case InitialDataKind::single_mode: return "single_mode";
    }
    fail(errc::internal, "bad InitialDataKind");
}

void InitialDataSpec::validate() const {
    require(std::isfinite(amplitude), errc::validation, "initial_data: amplitude must be finite");
    const bool power_law = kind == InitialDataKind::power_law_velocity ||
                           kind == InitialDataKind::power_law_micro ||
                           kind == InitialDataKind::enhanced_pair;
    if (power_law)
        require(Gamma > 0.0 && Gamma <= 2.0, errc::validation,
                "initial_data: Gamma must lie in (0, 2]");
    require(cutoff_k >= 0.0, errc::validation, "initial_data: cutoff_k must be >= 0");
}

namespace {

const cplx I(0.0, 1.0);

double default_cutoff(const TorusGrid& g) {
    const int mmax = (g.n() - 1) / 3;
    return g.k_min() * mmax * (2.0 / 3.0);
}

double smooth_cutoff(double rho, double k_cut) {
    const double x = rho / k_cut;
    const double x2 = x * x;
    const double x8 = x2 * x2 * x2 * x2;
    return std::exp(-x8);
}

struct VelocityBuild {
    ScalarField u0x, u0y;
};

// u0_hat = a * i k_perp * g(|k|), zero at k = 0 and at Nyquist rows
VelocityBuild velocity_from_radial(GridPtr grid, double a,
                                   const std::function<double(double)>& radial) {
    const TorusGrid& g = *grid;
    ScalarField ux = ScalarField::zeros_spectral(grid);
    ScalarField uy = ScalarField::zeros_spectral(grid);
    for (int i = 0; i < g.n(); ++i) {
        const double k1 = g.wavenumber(i);
        for (int j = 0; j < g.n(); ++j) {
            const std::size_t m = g.index(i, j);
            if (!g.dealias_mask()[m] || m == 0) continue;
            const double k2 = g.wavenumber(j);
            const double rho = std::sqrt(g.ksq()[m]);
            const double gval = a * radial(rho);
            // k_perp = (-k2, k1)
            ux.spec()[m] = I * (-k2) * gval;
            uy.spec()[m] = I * k1 * gval;
        }
    }
    return {std::move(ux), std::move(uy)};
}

double lowest_shell_energy_fraction(const ScalarField& u0x, const ScalarField& u0y) {
    const TorusGrid& g = u0x.grid();
    const double total = l2_norm_sq(u0x) + l2_norm_sq(u0y);
    if (total <= 0.0) return 0.0;
    const double kmin2 = g.k_min() * g.k_min();
    double shell = 0.0;
    const double n2 = double(g.n()) * g.n();
    const double scale = g.length() * g.length() / (n2 * n2);
    for (std::size_t m = 0; m < g.size(); ++m)
        if (g.ksq()[m] > 0.0 && g.ksq()[m] <= kmin2 * (1.0 + 1e-9))
            shell += (std::norm(u0x.spec()[m]) + std::norm(u0y.spec()[m])) * scale;
    return shell / total;
}

BuildResult finish_from_velocity(GridPtr grid, VelocityBuild vel, ScalarField h0) {
    BuildResult out{SpectralState::zeros(grid), std::move(vel.u0x), std::move(vel.u0y),
                    std::move(h0), 0.0, {}};
    out.state.omega_hat = curl(out.u0x, out.u0y);
    out.state.h_hat = out.h0;
    out.state.enforce_invariants();
    out.lowest_shell_fraction = lowest_shell_energy_fraction(out.u0x, out.u0y);
    if (out.lowest_shell_fraction > 0.2)
        out.warnings.push_back("initial data: lowest wavenumber shell carries " +
                               std::to_string(100.0 * out.lowest_shell_fraction) +
                               "% of the velocity energy; the torus truncation of the power-law "
                               "spectrum is severe at this resolution");
    return out;
}

BuildResult build_power_law(const InitialDataSpec& spec, GridPtr grid) {
    const TorusGrid& g = *grid;
    const double k_cut = spec.cutoff_k > 0.0 ? spec.cutoff_k : default_cutoff(g);
    // R^2 Fourier amplitudes map to DFT storage through c_k = f_hat(k) / L^2
    // and spec = c_k n^2, so the builder carries n^2 / L^2
    const double n2 = double(g.n()) * g.n();
    const double scale = n2 / (g.length() * g.length());
    auto radial = [&spec, k_cut, scale](double rho) {
        return scale * std::pow(rho, spec.Gamma - 2.0) * phi_value(spec.phi, rho) *
               smooth_cutoff(rho, k_cut);
    };

    ScalarField h0 = ScalarField::zeros_spectral(grid);
    const bool with_h =
        spec.kind == InitialDataKind::power_law_micro || spec.kind == InitialDataKind::enhanced_pair;
    const bool with_u = spec.kind == InitialDataKind::power_law_velocity ||
                        spec.kind == InitialDataKind::enhanced_pair;
    if (with_h) {
        for (int i = 0; i < g.n(); ++i) {
            for (int j = 0; j < g.n(); ++j) {
                const std::size_t m = g.index(i, j);
                if (!g.dealias_mask()[m] || m == 0) continue;
                h0.spec()[m] = spec.amplitude * radial(std::sqrt(g.ksq()[m]));
            }
        }
    }

    VelocityBuild vel{ScalarField::zeros_spectral(grid), ScalarField::zeros_spectral(grid)};
    if (with_u) {
        if (spec.kind == InitialDataKind::enhanced_pair) {
            // u0 = (1/2) perp_grad h0, assembled mode by mode so that the pair
            // identity u0_hat - (1/2) i k_perp h0_hat = 0 holds exactly
            for (int i = 0; i < g.n(); ++i) {
                const double k1 = g.wavenumber(i);
                for (int j = 0; j < g.n(); ++j) {
                    const std::size_t m = g.index(i, j);
                    const cplx hv = h0.spec()[m];
                    if (hv == cplx(0.0, 0.0)) continue;
                    vel.u0x.spec()[m] = 0.5 * I * (-g.wavenumber(j)) * hv;
                    vel.u0y.spec()[m] = 0.5 * I * k1 * hv;
                }
            }
        } else {
            vel = velocity_from_radial(grid, 0.5 * spec.amplitude, radial);
        }
    }
    return finish_from_velocity(grid, std::move(vel), std::move(h0));
}

BuildResult build_single_mode(const InitialDataSpec& spec, GridPtr grid) {
    const TorusGrid& g = *grid;
    require(std::abs(spec.mode_m1) < g.n() / 2 && std::abs(spec.mode_m2) < g.n() / 2,
            errc::validation, "single_mode: mode exceeds the grid");
    require(spec.mode_m1 != 0 || spec.mode_m2 != 0, errc::validation,
            "single_mode: mode must be nonzero");
    auto index_of = [&g](int m1, int m2) {
        const int i = m1 >= 0 ? m1 : m1 + g.n();
        const int j = m2 >= 0 ? m2 : m2 + g.n();
        return g.index(i, j);
    };
    const double n2 = double(g.n()) * g.n();
    SpectralState state = SpectralState::zeros(grid);
    // omega = amplitude * cos(k . x): conjugate pair of coefficients
    const cplx half(0.5 * spec.amplitude * n2, 0.0);
    state.omega_hat.spec()[index_of(spec.mode_m1, spec.mode_m2)] = half;
    state.omega_hat.spec()[index_of(-spec.mode_m1, -spec.mode_m2)] = half;
    if (spec.h_amplitude != 0.0) {
        const cplx hhalf(0.5 * spec.h_amplitude * n2, 0.0);
        state.h_hat.spec()[index_of(spec.mode_m1, spec.mode_m2)] = hhalf;
        state.h_hat.spec()[index_of(-spec.mode_m1, -spec.mode_m2)] = hhalf;
    }
    auto [ux, uy] = biot_savart(state.omega_hat);
    ScalarField h0 = state.h_hat;
    return {std::move(state), std::move(ux), std::move(uy), std::move(h0), 0.0, {}};
}

}  // namespace

BuildResult gaussian_vortex(const InitialDataSpec& spec, GridPtr grid) {
    const TorusGrid& g = *grid;
    const double L = g.length();
    const double w = spec.width > 0.0 ? spec.width : L / 16.0;
    const double hw = spec.h_width > 0.0 ? spec.h_width : w;
    BuildResult out{SpectralState::zeros(grid), ScalarField::zeros_spectral(grid),
                    ScalarField::zeros_spectral(grid), ScalarField::zeros_spectral(grid), 0.0, {}};
    if (w >= L / 4.0) out.warnings.push_back("gaussian_vortex: width >= L/4, periodic images overlap");

    auto bump = [&](double cx, double cy, double width, double amp) {
        std::vector<double> vals(g.size());
        for (int i = 0; i < g.n(); ++i) {
            double dx = i * g.dx() - cx * L;
            dx -= L * std::round(dx / L);
            for (int j = 0; j < g.n(); ++j) {
                double dy = j * g.dx() - cy * L;
                dy -= L * std::round(dy / L);
                vals[g.index(i, j)] = amp * std::exp(-(dx * dx + dy * dy) / (2.0 * width * width));
            }
        }
        return ScalarField::from_physical(grid, std::move(vals));
    };

    out.state.omega_hat = to_spectral(bump(spec.center_x, spec.center_y, w, spec.amplitude));
    out.state.omega_hat.spec()[0] = cplx(0.0, 0.0);  // subtract the mean
    if (spec.h_amplitude != 0.0)
        out.state.h_hat = to_spectral(bump(spec.center_x, spec.center_y, hw, spec.h_amplitude));
    out.state.enforce_invariants();
    auto [ux, uy] = biot_savart(out.state.omega_hat);
    out.u0x = std::move(ux);
    out.u0y = std::move(uy);
    out.h0 = out.state.h_hat;
    return out;
}

BuildResult random_field(const InitialDataSpec& spec, GridPtr grid) {
    const TorusGrid& g = *grid;
    const double k_cut = spec.cutoff_k > 0.0 ? spec.cutoff_k : default_cutoff(g);
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> unif(0.0, 2.0 * std::numbers::pi);

    auto draw_field = [&](double amp) {
        ScalarField f = ScalarField::zeros_spectral(grid);
        if (amp == 0.0) return f;
        for (int i = 0; i < g.n(); ++i) {
            for (int j = 0; j < g.n(); ++j) {
                const std::size_t m = g.index(i, j);
                const std::size_t mc = g.index(g.conj_index(i), g.conj_index(j));
                if (mc < m || !g.dealias_mask()[m] || m == 0) continue;
                const double rho = std::sqrt(g.ksq()[m]);
                const double mag = amp * std::pow(rho, spec.spectrum_exponent) *
                                   smooth_cutoff(rho, k_cut);
                const double phase = unif(rng);
                if (mc == m) {
                    f.spec()[m] = cplx(mag * std::cos(phase), 0.0);
                } else {
                    f.spec()[m] = mag * std::exp(I * phase);
                    f.spec()[mc] = std::conj(f.spec()[m]);
                }
            }
        }
        // the magnitudes above are Fourier-series coefficients; store unscaled DFT
        const double n2 = double(g.n()) * g.n();
        for (auto& z : f.spec()) z *= n2;
        return f;
    };

    BuildResult out{SpectralState::zeros(grid), ScalarField::zeros_spectral(grid),
                    ScalarField::zeros_spectral(grid), ScalarField::zeros_spectral(grid), 0.0, {}};
    out.state.omega_hat = draw_field(spec.amplitude);
    out.state.h_hat = draw_field(spec.h_amplitude);
    out.state.enforce_invariants();
    auto [ux, uy] = biot_savart(out.state.omega_hat);
    out.u0x = std::move(ux);
    out.u0y = std::move(uy);
    out.h0 = out.state.h_hat;
    return out;
}

BuildResult build_initial_data(const InitialDataSpec& spec, GridPtr grid) {
    spec.validate();
    switch (spec.kind) {
        case InitialDataKind::power_law_velocity:
        case InitialDataKind::power_law_micro:
        case InitialDataKind::enhanced_pair: return build_power_law(spec, grid);
        case InitialDataKind::gaussian_vortex: return gaussian_vortex(spec, grid);
        case InitialDataKind::random_field: return random_field(spec, grid);
        case InitialDataKind::single_mode: return build_single_mode(spec, grid);
    }
    fail(errc::internal, "bad InitialDataKind");
}

}  // namespace mpflow
