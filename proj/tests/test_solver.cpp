#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mpflow/initial_data.hpp"
#include "mpflow/solver.hpp"

using namespace mpflow;

namespace {

GridPtr make_grid(int n, double L = 2.0 * std::numbers::pi) {
    return std::make_shared<const TorusGrid>(n, L);
}

SpectralState smooth_random_state(GridPtr grid, unsigned seed, double h_scale = 1.0) {
    const TorusGrid& g = *grid;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    SpectralState z = SpectralState::zeros(grid);
    const double n2 = double(g.n()) * g.n();
    for (std::size_t m = 0; m < g.size(); ++m) {
        const double damp = std::exp(-1.5 * g.ksq()[m]) * n2 / g.length();
        z.omega_hat.spec()[m] = cplx(unif(rng), unif(rng)) * damp;
        z.h_hat.spec()[m] = cplx(unif(rng), unif(rng)) * damp * h_scale;
    }
    z.enforce_invariants();
    dealias_inplace(g, z.omega_hat.spec().data());
    dealias_inplace(g, z.h_hat.spec().data());
    return z;
}

double state_distance(const SpectralState& a, const SpectralState& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t m = 0; m < a.omega_hat.spec().size(); ++m) {
        num += std::norm(a.omega_hat.spec()[m] - b.omega_hat.spec()[m]) +
               std::norm(a.h_hat.spec()[m] - b.h_hat.spec()[m]);
        den += std::norm(b.omega_hat.spec()[m]) + std::norm(b.h_hat.spec()[m]);
    }
    return std::sqrt(num / std::max(den, 1e-300));
}

const cplx I(0.0, 1.0);

}  // namespace

TEST_CASE("nonlinear rhs: zero state gives zero") {
    auto grid = make_grid(32);
    const auto [nw, nh] = nonlinear_rhs(SpectralState::zeros(grid), MaterialParams{1, 1, 0});
    CHECK(l2_norm_sq(nw) == 0.0);
    CHECK(l2_norm_sq(nh) == 0.0);
}

TEST_CASE("nonlinear rhs: radially symmetric vortex transports nothing") {
    // the residual is dominated by the vortex's periodic images (falls like
    // (width/L)^4), so the 1e-8 gate needs a well-separated core
    auto grid = make_grid(1024);
    InitialDataSpec spec;
    spec.kind = InitialDataKind::gaussian_vortex;
    spec.amplitude = 1.0;
    spec.width = 2.0 * std::numbers::pi / 256.0;
    const BuildResult built = build_initial_data(spec, grid);
    const auto [nw, nh] = nonlinear_rhs(built.state, MaterialParams{1, 1, 0});
    const double wnorm = std::sqrt(l2_norm_sq(built.state.omega_hat));
    CHECK(std::sqrt(l2_norm_sq(nw)) <= 1e-8 * wnorm);
}

TEST_CASE("nonlinear rhs matches a brute-force convolution over the active modes") {
    auto grid = make_grid(32);
    const TorusGrid& g = *grid;
    SpectralState z = SpectralState::zeros(grid);
    // vorticity on one conjugate pair, microrotation on another
    const int w1 = 2, w2 = 1, h1 = 1, h2 = 3;
    const cplx wv(0.7, 0.2), hv(-0.4, 0.5);
    z.omega_hat.spec()[g.index(w1, w2)] = wv;
    z.omega_hat.spec()[g.index(g.conj_index(w1), g.conj_index(w2))] = std::conj(wv);
    z.h_hat.spec()[g.index(h1, h2)] = hv;
    z.h_hat.spec()[g.index(g.conj_index(h1), g.conj_index(h2))] = std::conj(hv);

    const auto [nw, nh] = nonlinear_rhs(z, MaterialParams{1, 1, 0});

    // Brute-force convolution in Fourier-series units c = spec / n^2:
    //   c_N(k) = - sum_{p+q=k} c_u(p) . (i q) c_f(q)
    // with c_u(p) = -i p_perp / |p|^2 c_w(p).  Stored output is n^2 c_N.
    struct Mode {
        int m1, m2;
        cplx v;
    };
    const double n2 = double(g.n()) * g.n();
    const std::vector<Mode> wmodes = {{w1, w2, wv / n2}, {-w1, -w2, std::conj(wv) / n2}};
    const std::vector<Mode> hmodes = {{h1, h2, hv / n2}, {-h1, -h2, std::conj(hv) / n2}};
    auto velocity = [&](const Mode& mo) {
        const double k1 = g.k_min() * mo.m1, k2 = g.k_min() * mo.m2;
        const double R = k1 * k1 + k2 * k2;
        return std::pair<cplx, cplx>{I * (k2 / R) * mo.v, -I * (k1 / R) * mo.v};
    };
    auto expected = [&](const std::vector<Mode>& fmodes, int m1, int m2) {
        cplx acc(0.0, 0.0);
        for (const Mode& P : wmodes)
            for (const Mode& Q : fmodes) {
                if (P.m1 + Q.m1 != m1 || P.m2 + Q.m2 != m2) continue;
                const auto [u1, u2] = velocity(P);
                const double q1 = g.k_min() * Q.m1, q2 = g.k_min() * Q.m2;
                acc -= (u1 * (I * q1) + u2 * (I * q2)) * Q.v;
            }
        return acc * n2;
    };
    auto at = [&](const ScalarField& f, int m1, int m2) {
        const int i = m1 >= 0 ? m1 : m1 + g.n();
        const int j = m2 >= 0 ? m2 : m2 + g.n();
        return f.spec()[g.index(i, j)];
    };
    // u . grad w of a single vorticity wave vanishes (p_perp . p = 0)
    CHECK(std::abs(at(nw, 2 * w1, 2 * w2)) <= 1e-14);
    CHECK(std::abs(at(nw, 0, 0)) == 0.0);
    // h transport lives on (w +- h) modes
    for (auto [m1, m2] : {std::pair{w1 + h1, w2 + h2}, {w1 - h1, w2 - h2},
                          {-w1 + h1, -w2 + h2}, {-w1 - h1, -w2 - h2}}) {
        const cplx want = expected(hmodes, m1, m2);
        CHECK(std::abs(want) > 1e-6);  // the interaction is genuinely nonzero
        CHECK(std::abs(at(nh, m1, m2) - want) <= 1e-12 * std::abs(want) + 1e-14);
    }
    CHECK(std::abs(at(nh, 0, 0)) == 0.0);
}

TEST_CASE("linearized step reproduces the exact propagator") {
    auto grid = make_grid(32);
    const MaterialParams p{1.0, 0.7, 0.3};
    const SpectralState z = smooth_random_state(grid, 17);
    const double dt = 0.05;
    const SpectralState stepped = step_ifrk4(z, dt, p, RunMode::linear);
    const SpectralState exact = apply_semigroup(z, dt, p);
    CHECK(state_distance(stepped, exact) <= 1e-13);
}

TEST_CASE("gamma = 0 zero-mode law for h") {
    auto grid = make_grid(32);
    const MaterialParams p{1.0, 1.0, 0.0};
    SpectralState z = smooth_random_state(grid, 23);
    z.h_hat.spec()[0] = cplx(0.7, 0.0);
    SolverConfig cfg;
    cfg.dt = 1e-2;
    cfg.t_end = 1.0;
    cfg.save_every = 100;
    const Trajectory traj = simulate(z, p, cfg);
    const double expect = 0.7 * std::exp(-4.0 * p.chi * 1.0);
    CHECK(std::abs(traj.final_state.h_hat.spec()[0].real() - expect) <= 1e-10 * 0.7);
    CHECK(traj.final_state.omega_hat.spec()[0] == cplx(0.0, 0.0));
}

TEST_CASE("steps preserve Hermitian symmetry and the omega zero mode") {
    auto grid = make_grid(32);
    const MaterialParams p{0.8, 1.2, 0.5};
    SpectralState z = smooth_random_state(grid, 29);
    for (int s = 0; s < 20; ++s) z = step_ifrk4(z, 0.02, p);
    CHECK(hermitian_asymmetry(z.omega_hat) <= 1e-11);
    CHECK(hermitian_asymmetry(z.h_hat) <= 1e-11);
    CHECK(z.omega_hat.spec()[0] == cplx(0.0, 0.0));
}

TEST_CASE("dt refinement: fitted order at least 3.5") {
    auto grid = make_grid(48);
    const MaterialParams p{0.05, 0.05, 0.02};  // slow decay keeps the nonlinearity active
    SpectralState z0 = smooth_random_state(grid, 37);
    for (auto& c : z0.omega_hat.spec()) c *= 40.0;  // strong advection
    for (auto& c : z0.h_hat.spec()) c *= 40.0;
    const double T = 0.5;
    auto run_with = [&](double dt) {
        SolverConfig cfg;
        cfg.dt = dt;
        cfg.t_end = T;
        cfg.save_every = 1 << 20;
        return simulate(z0, p, cfg).final_state;
    };
    const SpectralState ref = run_with(T / 640.0);
    std::vector<double> errs;
    for (double dt : {T / 20.0, T / 40.0, T / 80.0}) errs.push_back(state_distance(run_with(dt), ref));
    const double p1 = std::log2(errs[0] / errs[1]);
    const double p2 = std::log2(errs[1] / errs[2]);
    CAPTURE(errs[0]);
    CAPTURE(errs[1]);
    CAPTURE(errs[2]);
    CHECK(0.5 * (p1 + p2) >= 3.5);
}

TEST_CASE("energy equality residual on a short resolved run") {
    auto grid = make_grid(64);
    const MaterialParams p{1.0, 1.0, 1.0};
    InitialDataSpec spec;
    spec.kind = InitialDataKind::gaussian_vortex;
    spec.amplitude = 1.0;
    spec.width = 0.9;
    spec.h_amplitude = 0.5;
    spec.h_width = 1.1;
    spec.center_x = 0.45;
    spec.center_y = 0.55;
    const BuildResult built = build_initial_data(spec, grid);
    SolverConfig cfg;
    cfg.dt = 5e-4;
    cfg.t_end = 1.0;
    cfg.save_every = 200;
    const Trajectory traj = simulate(built.state, p, cfg);
    const double E0 = traj.records.front().energy_u + traj.records.front().energy_h;
    const double res = energy_equality_residual(traj.records, 0, traj.records.size() - 1, p);
    CHECK(std::abs(res) / 1.0 <= 1e-6 * E0);
}

TEST_CASE("ns_reference mode: h stays identically zero") {
    auto grid = make_grid(32);
    const MaterialParams p{1.0, 1.0, 0.0};
    SpectralState z = smooth_random_state(grid, 43, 0.0);
    SolverConfig cfg;
    cfg.dt = 0.02;
    cfg.t_end = 0.2;
    cfg.mode = RunMode::ns_reference;
    const Trajectory traj = simulate(z, p, cfg);
    CHECK(l2_norm_sq(traj.final_state.h_hat) == 0.0);
    CHECK(traj.records.back().energy_h == 0.0);
}

TEST_CASE("zero data stays zero; trajectory times well formed") {
    auto grid = make_grid(16);
    SolverConfig cfg;
    cfg.dt = 0.1;
    cfg.t_end = 1.0;
    cfg.save_every = 3;
    const Trajectory traj = simulate(SpectralState::zeros(grid), MaterialParams{1, 1, 0}, cfg);
    CHECK(traj.records.front().t == 0.0);
    for (std::size_t i = 1; i < traj.records.size(); ++i)
        CHECK(traj.records[i].t > traj.records[i - 1].t);
    CHECK(traj.records.back().t == doctest::Approx(1.0));
    for (const auto& r : traj.records) CHECK(r.energy_u + r.energy_h == 0.0);
}

TEST_CASE("blow-up detection aborts with a diverged error") {
    auto grid = make_grid(32);
    const MaterialParams p{1e-6, 1e-6, 0.0};  // essentially inviscid
    SpectralState z = smooth_random_state(grid, 51);
    for (auto& c : z.omega_hat.spec()) c *= 2000.0;  // violent vortex, huge CFL violation
    SolverConfig cfg;
    cfg.dt = 0.5;
    cfg.t_end = 50.0;
    cfg.save_every = 1;
    CHECK_THROWS_AS(simulate(z, p, cfg), error);
}

TEST_CASE("strict mode turns the CFL advisory into an error") {
    auto grid = make_grid(32);
    const MaterialParams p{1.0, 1.0, 0.0};
    SpectralState z = smooth_random_state(grid, 53);
    SolverConfig cfg;
    cfg.dt = 10.0;
    cfg.t_end = 10.0;
    cfg.strict = true;
    CHECK_THROWS_AS(simulate(z, p, cfg), error);
    cfg.strict = false;
    const Trajectory traj = simulate(z, p, cfg);
    CHECK(!traj.warnings.empty());
}
