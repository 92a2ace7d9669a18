#include "mpflow/spectral_ops.hpp"

#include <algorithm>
#include <cmath>

namespace mpflow {

namespace {

const cplx I(0.0, 1.0);

double max_abs(const std::vector<cplx>& v) {
    double m = 0.0;
    for (const cplx& z : v) m = std::max(m, std::abs(z));
    return m;
}

}  // namespace

std::pair<ScalarField, ScalarField> gradient(const ScalarField& f) {
    const TorusGrid& g = f.grid();
    const auto& in = f.spec();
    ScalarField fx = ScalarField::zeros_spectral(f.grid_ptr());
    ScalarField fy = ScalarField::zeros_spectral(f.grid_ptr());
    for (int i = 0; i < g.n(); ++i) {
        const double k1 = g.wavenumber(i);
        for (int j = 0; j < g.n(); ++j) {
            const std::size_t m = g.index(i, j);
            fx.spec()[m] = I * k1 * in[m];
            fy.spec()[m] = I * g.wavenumber(j) * in[m];
        }
    }
    return {std::move(fx), std::move(fy)};
}

std::pair<ScalarField, ScalarField> perp_gradient(const ScalarField& f) {
    auto [fx, fy] = gradient(f);
    // perp gradient = (-d2 f, d1 f)
    for (auto& z : fy.spec()) z = -z;
    return {std::move(fy), std::move(fx)};
}

ScalarField laplacian(const ScalarField& f) {
    const TorusGrid& g = f.grid();
    const auto& in = f.spec();
    ScalarField out = ScalarField::zeros_spectral(f.grid_ptr());
    for (std::size_t m = 0; m < g.size(); ++m) out.spec()[m] = -g.ksq()[m] * in[m];
    return out;
}

ScalarField curl(const ScalarField& u1, const ScalarField& u2) {
    const TorusGrid& g = u1.grid();
    require(g.same_as(u2.grid()), errc::invalid_argument, "curl: grid mismatch");
    ScalarField out = ScalarField::zeros_spectral(u1.grid_ptr());
    for (int i = 0; i < g.n(); ++i) {
        const double k1 = g.wavenumber(i);
        for (int j = 0; j < g.n(); ++j) {
            const std::size_t m = g.index(i, j);
            out.spec()[m] = I * (k1 * u2.spec()[m] - g.wavenumber(j) * u1.spec()[m]);
        }
    }
    return out;
}

std::pair<ScalarField, ScalarField> biot_savart(const ScalarField& omega_hat) {
    const TorusGrid& g = omega_hat.grid();
    const auto& w = omega_hat.spec();
    require(std::abs(w[0]) <= 1e-12 * std::max(1e-300, max_abs(w)), errc::invalid_argument,
            "biot_savart: vorticity has a nonzero mean");
    ScalarField u1 = ScalarField::zeros_spectral(omega_hat.grid_ptr());
    ScalarField u2 = ScalarField::zeros_spectral(omega_hat.grid_ptr());
    for (int i = 0; i < g.n(); ++i) {
        const double k1 = g.wavenumber(i);
        for (int j = 0; j < g.n(); ++j) {
            const std::size_t m = g.index(i, j);
            const double R = g.ksq()[m];
            if (R == 0.0) continue;
            // u_hat = -i (-k2, k1) / R * omega_hat
            u1.spec()[m] = I * (g.wavenumber(j) / R) * w[m];
            u2.spec()[m] = -I * (k1 / R) * w[m];
        }
    }
    return {std::move(u1), std::move(u2)};
}

void dealias_inplace(const TorusGrid& grid, cplx* spec) {
    const auto& mask = grid.dealias_mask();
    for (std::size_t m = 0; m < grid.size(); ++m)
        if (!mask[m]) spec[m] = cplx(0.0, 0.0);
}

ScalarField dealias(const ScalarField& f) {
    ScalarField out = f;
    dealias_inplace(out.grid(), out.spec().data());
    return out;
}

double l2_norm_sq(const ScalarField& f) {
    const TorusGrid& g = f.grid();
    double s = 0.0;
    if (f.is_spectral()) {
        for (const cplx& z : f.spec()) s += std::norm(z);
        const double n2 = double(g.n()) * g.n();
        return s * g.length() * g.length() / (n2 * n2);
    }
    for (double v : f.phys()) s += v * v;
    return s * g.dx() * g.dx();
}

double h1_seminorm_sq(const ScalarField& f) {
    const TorusGrid& g = f.grid();
    const auto& in = f.spec();
    double s = 0.0;
    for (std::size_t m = 0; m < g.size(); ++m) s += g.ksq()[m] * std::norm(in[m]);
    const double n2 = double(g.n()) * g.n();
    return s * g.length() * g.length() / (n2 * n2);
}

double low_freq_energy(const ScalarField& f, double radius) {
    require(radius >= 0.0, errc::invalid_argument, "low_freq_energy: radius must be >= 0");
    const TorusGrid& g = f.grid();
    const auto& in = f.spec();
    const double r2 = radius * radius;
    double s = 0.0;
    for (std::size_t m = 0; m < g.size(); ++m)
        if (g.ksq()[m] <= r2) s += std::norm(in[m]);
    const double n2 = double(g.n()) * g.n();
    return s * g.length() * g.length() / (n2 * n2);
}

double hermitian_asymmetry(const ScalarField& f) {
    const TorusGrid& g = f.grid();
    const auto& in = f.spec();
    const double scale = std::max(1e-300, max_abs(in));
    double worst = 0.0;
    for (int i = 0; i < g.n(); ++i) {
        const int ic = g.conj_index(i);
        for (int j = 0; j < g.n(); ++j) {
            const cplx z = in[g.index(i, j)];
            const cplx zc = std::conj(in[g.index(ic, g.conj_index(j))]);
            worst = std::max(worst, std::abs(z - zc));
        }
    }
    return worst / scale;
}

void hermitian_project(const TorusGrid& grid, cplx* spec) {
    for (int i = 0; i < grid.n(); ++i) {
        const int ic = grid.conj_index(i);
        for (int j = 0; j < grid.n(); ++j) {
            const int jc = grid.conj_index(j);
            const std::size_t m = grid.index(i, j);
            const std::size_t mc = grid.index(ic, jc);
            if (mc < m) continue;
            if (mc == m) {
                spec[m] = cplx(spec[m].real(), 0.0);
            } else {
                const cplx avg = 0.5 * (spec[m] + std::conj(spec[mc]));
                spec[m] = avg;
                spec[mc] = std::conj(avg);
            }
        }
    }
}

}  // namespace mpflow
