#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mpflow/spectral_ops.hpp"

using namespace mpflow;

namespace {

GridPtr make_grid(int n, double L = 2.0 * std::numbers::pi) {
    return std::make_shared<const TorusGrid>(n, L);
}

ScalarField random_real_field(GridPtr grid, unsigned seed, bool smooth = false) {
    const TorusGrid& g = *grid;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<double> vals(g.size());
    for (auto& v : vals) v = unif(rng);
    ScalarField f = to_spectral(ScalarField::from_physical(grid, std::move(vals)));
    if (smooth) {
        for (std::size_t m = 0; m < g.size(); ++m)
            f.spec()[m] *= std::exp(-0.5 * g.ksq()[m]);
    }
    return f;
}

double max_err(const ScalarField& a, const ScalarField& b) {
    double err = 0.0, scale = 0.0;
    for (std::size_t m = 0; m < a.phys().size(); ++m) {
        err = std::max(err, std::abs(a.phys()[m] - b.phys()[m]));
        scale = std::max(scale, std::abs(a.phys()[m]));
    }
    return err / std::max(scale, 1e-300);
}

}  // namespace

TEST_CASE("grid wavenumbers and dealias mask") {
    auto grid = make_grid(12, 3.0);
    const TorusGrid& g = *grid;
    CHECK(g.mode(0) == 0);
    CHECK(g.mode(5) == 5);
    CHECK(g.mode(6) == -6);
    CHECK(g.mode(11) == -1);
    const double k0 = 2.0 * std::numbers::pi / 3.0;
    CHECK(g.wavenumber(1) == doctest::Approx(k0));
    CHECK(g.wavenumber(11) == doctest::Approx(-k0));
    // antisymmetry away from Nyquist
    for (int i = 1; i < 6; ++i) CHECK(g.wavenumber(i) == -g.wavenumber(g.conj_index(i)));
    // mask: |m| < 4 on both axes for n = 12
    CHECK(g.dealias_mask()[g.index(3, 3)]);
    CHECK(!g.dealias_mask()[g.index(4, 0)]);
    CHECK(!g.dealias_mask()[g.index(0, 4)]);
    CHECK(g.dealias_mask()[g.index(12 - 3, 3)]);
    CHECK_THROWS_AS(TorusGrid(7, 1.0), error);
    CHECK_THROWS_AS(TorusGrid(8, -1.0), error);
}

TEST_CASE("transform: constant field becomes the DC mode") {
    auto grid = make_grid(16);
    std::vector<double> vals(grid->size(), 3.25);
    const ScalarField f = to_spectral(ScalarField::from_physical(grid, vals));
    CHECK(f.spec()[0].real() == doctest::Approx(3.25 * 16 * 16).epsilon(1e-14));
    double off = 0.0;
    for (std::size_t m = 1; m < f.spec().size(); ++m) off = std::max(off, std::abs(f.spec()[m]));
    CHECK(off <= 1e-12 * std::abs(f.spec()[0]));
}

TEST_CASE("transform: single cosine hits two conjugate modes") {
    auto grid = make_grid(16);
    const TorusGrid& g = *grid;
    std::vector<double> vals(g.size());
    for (int i = 0; i < g.n(); ++i)
        for (int j = 0; j < g.n(); ++j) vals[g.index(i, j)] = std::cos(3.0 * i * g.dx());
    const ScalarField f = to_spectral(ScalarField::from_physical(grid, std::move(vals)));
    const double big = 0.5 * 16 * 16;
    CHECK(f.spec()[g.index(3, 0)].real() == doctest::Approx(big).epsilon(1e-12));
    CHECK(f.spec()[g.index(13, 0)].real() == doctest::Approx(big).epsilon(1e-12));
    int nonzero = 0;
    for (const auto& z : f.spec())
        if (std::abs(z) > 1e-9 * big) ++nonzero;
    CHECK(nonzero == 2);
}

TEST_CASE("transform round trip and Plancherel on a random field") {
    auto grid = make_grid(32, 5.0);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<double> vals(grid->size());
    for (auto& v : vals) v = unif(rng);
    const ScalarField phys = ScalarField::from_physical(grid, vals);
    const ScalarField spec = to_spectral(phys);
    const ScalarField back = to_physical(spec);
    CHECK(max_err(phys, back) <= 1e-12);
    // Plancherel: physical L2 == spectral L2
    const double np = l2_norm_sq(phys);
    const double ns = l2_norm_sq(spec);
    CHECK(std::abs(np - ns) <= 1e-12 * ns);
    // Hermitian symmetry of the transform of a real field
    CHECK(hermitian_asymmetry(spec) <= 1e-12);
}

TEST_CASE("differential operators on a single mode") {
    auto grid = make_grid(32);
    const TorusGrid& g = *grid;
    // f = cos(2 x1): gradient_x = -2 sin(2 x1), gradient_y = 0
    std::vector<double> vals(g.size());
    for (int i = 0; i < g.n(); ++i)
        for (int j = 0; j < g.n(); ++j) vals[g.index(i, j)] = std::cos(2.0 * i * g.dx());
    const ScalarField f = to_spectral(ScalarField::from_physical(grid, std::move(vals)));
    auto [fx, fy] = gradient(f);
    const ScalarField fxp = to_physical(fx);
    double err = 0.0;
    for (int i = 0; i < g.n(); ++i)
        for (int j = 0; j < g.n(); ++j)
            err = std::max(err, std::abs(fxp.phys()[g.index(i, j)] +
                                         2.0 * std::sin(2.0 * i * g.dx())));
    CHECK(err <= 1e-12 * 2.0);
    CHECK(l2_norm_sq(fy) <= 1e-24 * l2_norm_sq(fx));

    // laplacian of a constant is zero
    std::vector<double> ones(g.size(), 1.0);
    const ScalarField c = to_spectral(ScalarField::from_physical(grid, std::move(ones)));
    CHECK(l2_norm_sq(laplacian(c)) <= 1e-24);
}

TEST_CASE("curl of a gradient vanishes; curl(perp_gradient) = laplacian") {
    auto grid = make_grid(32);
    const ScalarField f = random_real_field(grid, 11, true);
    auto [fx, fy] = gradient(f);
    const ScalarField cg = curl(fx, fy);
    CHECK(std::sqrt(l2_norm_sq(cg)) <= 1e-12 * std::sqrt(h1_seminorm_sq(f)));

    auto [px, py] = perp_gradient(f);
    const ScalarField cp = curl(px, py);
    const ScalarField lap = laplacian(f);
    double num = 0.0, den = 0.0;
    for (std::size_t m = 0; m < cp.spec().size(); ++m) {
        num += std::norm(cp.spec()[m] - lap.spec()[m]);
        den += std::norm(lap.spec()[m]);
    }
    CHECK(std::sqrt(num) <= 1e-12 * std::sqrt(den));
}

TEST_CASE("biot_savart: zero, single mode, round trip, divergence, gradient norm") {
    auto grid = make_grid(48, 2.0 * std::numbers::pi);
    const TorusGrid& g = *grid;

    SUBCASE("zero vorticity gives zero velocity") {
        const ScalarField zero = ScalarField::zeros_spectral(grid);
        auto [u1, u2] = biot_savart(zero);
        CHECK(l2_norm_sq(u1) == 0.0);
        CHECK(l2_norm_sq(u2) == 0.0);
    }

    SUBCASE("rejects nonzero mean vorticity") {
        ScalarField bad = ScalarField::zeros_spectral(grid);
        bad.spec()[0] = cplx(1.0, 0.0);
        CHECK_THROWS_AS(biot_savart(bad), error);
    }

    SUBCASE("single mode matches the closed form") {
        ScalarField w = ScalarField::zeros_spectral(grid);
        const int i = 2, j = 5;
        w.spec()[g.index(i, j)] = cplx(0.7, -0.3);
        w.spec()[g.index(g.conj_index(i), g.conj_index(j))] = cplx(0.7, 0.3);
        auto [u1, u2] = biot_savart(w);
        const double k1 = g.wavenumber(i), k2 = g.wavenumber(j);
        const double R = k1 * k1 + k2 * k2;
        const cplx expected1 = cplx(0.0, 1.0) * (k2 / R) * cplx(0.7, -0.3);
        const cplx expected2 = -cplx(0.0, 1.0) * (k1 / R) * cplx(0.7, -0.3);
        CHECK(std::abs(u1.spec()[g.index(i, j)] - expected1) <= 1e-15);
        CHECK(std::abs(u2.spec()[g.index(i, j)] - expected2) <= 1e-15);
    }

    SUBCASE("curl(biot_savart(w)) = w, divergence-free, and |grad u| = |w|") {
        // resolved Gaussian vortex, mean removed
        std::vector<double> vals(g.size());
        const double L = g.length();
        for (int i = 0; i < g.n(); ++i)
            for (int j = 0; j < g.n(); ++j) {
                const double x = i * g.dx() - 0.5 * L, y = j * g.dx() - 0.5 * L;
                vals[g.index(i, j)] = std::exp(-(x * x + y * y) / 0.18);
            }
        ScalarField w = to_spectral(ScalarField::from_physical(grid, std::move(vals)));
        w.spec()[0] = cplx(0.0, 0.0);
        auto [u1, u2] = biot_savart(w);
        const ScalarField w2 = curl(u1, u2);
        double num = 0.0, den = 0.0, div = 0.0, umax = 0.0;
        for (int i = 0; i < g.n(); ++i)
            for (int j = 0; j < g.n(); ++j) {
                const std::size_t m = g.index(i, j);
                num += std::norm(w2.spec()[m] - w.spec()[m]);
                den += std::norm(w.spec()[m]);
                const cplx d = g.wavenumber(i) * u1.spec()[m] + g.wavenumber(j) * u2.spec()[m];
                div = std::max(div, std::abs(d));
                umax = std::max(umax, std::max(std::abs(u1.spec()[m]), std::abs(u2.spec()[m])));
            }
        CHECK(std::sqrt(num / den) <= 1e-12);
        CHECK(div <= 1e-12 * umax);
        const double grad_u_sq = h1_seminorm_sq(u1) + h1_seminorm_sq(u2);
        const double w_sq = l2_norm_sq(w);
        CHECK(std::abs(grad_u_sq - w_sq) <= 1e-10 * w_sq);
    }
}

TEST_CASE("dealias: inside unchanged, outside zeroed, idempotent") {
    auto grid = make_grid(12);
    const TorusGrid& g = *grid;
    ScalarField inside = ScalarField::zeros_spectral(grid);
    inside.spec()[g.index(3, 2)] = cplx(1.0, 2.0);
    const ScalarField in2 = dealias(inside);
    CHECK(in2.spec()[g.index(3, 2)] == inside.spec()[g.index(3, 2)]);

    ScalarField outside = ScalarField::zeros_spectral(grid);
    outside.spec()[g.index(5, 0)] = cplx(1.0, 0.0);
    CHECK(l2_norm_sq(dealias(outside)) == 0.0);

    const ScalarField f = random_real_field(grid, 3);
    const ScalarField d1 = dealias(f);
    const ScalarField d2 = dealias(d1);
    for (std::size_t m = 0; m < d1.spec().size(); ++m) CHECK(d1.spec()[m] == d2.spec()[m]);
}

TEST_CASE("norms and low-frequency energy") {
    auto grid = make_grid(16, 4.0);
    const ScalarField zero = ScalarField::zeros_spectral(grid);
    CHECK(l2_norm_sq(zero) == 0.0);
    CHECK(h1_seminorm_sq(zero) == 0.0);

    const ScalarField f = random_real_field(grid, 5);
    // radius 0: only the DC mode contributes
    const double n2 = 16.0 * 16.0;
    const double dc = std::norm(f.spec()[0]) * 16.0 / (n2 * n2);
    CHECK(low_freq_energy(f, 0.0) == doctest::Approx(dc).epsilon(1e-14));
    // radius beyond the grid: the whole L2 norm
    CHECK(low_freq_energy(f, 1e9) == doctest::Approx(l2_norm_sq(f)).epsilon(1e-14));
    CHECK_THROWS_AS(low_freq_energy(f, -1.0), error);
}
