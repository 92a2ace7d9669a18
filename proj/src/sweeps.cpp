#include "mpflow/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <json.hpp>

#include "mpflow/symbol.hpp"

namespace mpflow {

std::vector<double> log_spaced(double lo, double hi, int count) {
    require(lo > 0.0 && hi >= lo && count >= 2, errc::invalid_argument,
            "log_spaced: need 0 < lo <= hi and count >= 2");
    std::vector<double> out(count);
    const double a = std::log(lo), b = std::log(hi);
    for (int i = 0; i < count; ++i) out[i] = std::exp(a + (b - a) * i / (count - 1));
    out.front() = lo;
    out.back() = hi;
    return out;
}

namespace {

struct ErrorTriple {
    double d11, d21, d22;  // |e11-H|, |e21-H/2|, |e22-RH/4|
};

ErrorTriple symbol_errors(const MaterialParams& p, double R, double t) {
    const SymbolMatrix E = symbol(R, t, p);
    const double H = std::exp(-p.mu * t * R);
    return {std::abs(E.e11 - H), std::abs(E.e21 - 0.5 * H), std::abs(E.e22 - 0.25 * R * H)};
}

// Frobenius magnitude of the 3x3 symbol K at (R, t):
//   |K|_F^2 = 2 e11^2 + R (e12^2 + e21^2) + e22^2
double symbol_frob_sq(const MaterialParams& p, double R, double t) {
    const SymbolMatrix E = symbol(R, t, p);
    return 2.0 * E.e11 * E.e11 + R * (E.e12 * E.e12 + E.e21 * E.e21) + E.e22 * E.e22;
}

int decade_of(double t) { return std::max(0, int(std::floor(std::log10(t) * (1.0 + 1e-12)))); }

}  // namespace

BoundsReport sweep_symbol_bounds(const MaterialParams& params, const std::vector<double>& r_grid,
                                 const std::vector<double>& t_grid, double ratio_limit) {
    params.validate();
    require(!r_grid.empty() && !t_grid.empty(), errc::invalid_argument,
            "sweep_symbol_bounds: grids must be nonempty");
    for (double t : t_grid)
        require(t >= 1.0, errc::invalid_argument,
                "sweep_symbol_bounds: the symbol bounds hold for t >= 1 only");

    BoundsReport rep;
    rep.params = params;
    rep.r_grid = r_grid;
    rep.t_grid = t_grid;
    rep.ratio_limit = ratio_limit;

    const bool gamma0 = params.gamma == 0.0;
    double C11 = 0.0, C21 = 0.0, C22 = 0.0;
    const double c0 = 4.0 * params.chi * params.mu / (params.mu + params.chi);
    if (gamma0) {
        // Fit the amplitude of the non-decaying-in-R branch at large R and
        // early t, where that branch dominates the heat-comparison error.
        for (double t = 1.0; t <= 3.0 + 1e-9; t += 0.25) {
            const double et = std::exp(c0 * t);
            for (double R : r_grid) {
                if (R <= 10.0) continue;
                const ErrorTriple e = symbol_errors(params, R, t);
                C11 = std::max(C11, e.d11 * (1.0 + R) * et);
                C21 = std::max(C21, e.d21 * (1.0 + R) * et);
                C22 = std::max(C22, e.d22 * et);
            }
        }
        rep.fitted_constants = {{"c0", c0}, {"C11", C11}, {"C21", C21}, {"C22", C22}};
    }

    const int ndec = decade_of(t_grid.back()) + 1;
    auto& pdm = rep.per_decade_maxima;
    for (const char* key : {"e11", "e22", "e21", "prop53_k0", "prop53_k1"})
        pdm[key] = std::vector<double>(ndec, 0.0);

    for (double t : t_grid) {
        double q11 = 0.0, q21 = 0.0, q22 = 0.0;
        const double extra = gamma0 ? std::exp(-c0 * t) : 0.0;
        for (double R : r_grid) {
            ErrorTriple e = symbol_errors(params, R, t);
            if (gamma0) {
                e.d11 = std::max(0.0, e.d11 - C11 * extra / (1.0 + R));
                e.d21 = std::max(0.0, e.d21 - C21 * extra / (1.0 + R));
                e.d22 = std::max(0.0, e.d22 - C22 * extra);
            }
            q11 = std::max(q11, e.d11);
            q21 = std::max(q21, e.d21);
            q22 = std::max(q22, e.d22);
        }
        const int d = std::min(decade_of(t), ndec - 1);
        pdm["e11"][d] = std::max(pdm["e11"][d], t * q11);
        pdm["e21"][d] = std::max(pdm["e21"][d], t * q21);
        pdm["e22"][d] = std::max(pdm["e22"][d], t * t * q22);

        if (!gamma0) {
            // trapezoid in R on the log grid for the L1-L2 integral quantities
            double i0 = 0.0, i1 = 0.0;
            for (std::size_t i = 0; i + 1 < r_grid.size(); ++i) {
                const double Ra = r_grid[i], Rb = r_grid[i + 1];
                const double fa = symbol_frob_sq(params, Ra, t);
                const double fb = symbol_frob_sq(params, Rb, t);
                i0 += 0.5 * (fa + fb) * (Rb - Ra);
                i1 += 0.5 * (Ra * fa + Rb * fb) * (Rb - Ra);
            }
            pdm["prop53_k0"][d] =
                std::max(pdm["prop53_k0"][d], std::sqrt(t * std::numbers::pi * i0));
            pdm["prop53_k1"][d] =
                std::max(pdm["prop53_k1"][d], t * std::sqrt(std::numbers::pi * i1));
        }
    }
    if (gamma0) {
        pdm.erase("prop53_k0");
        pdm.erase("prop53_k1");
    }

    rep.passed = true;
    for (const char* key : {"e11", "e22", "e21"}) {
        const auto& v = pdm[key];
        const double hi = *std::max_element(v.begin(), v.end());
        const double lo = *std::min_element(v.begin(), v.end());
        const double ratio = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
        rep.decade_ratio[key] = ratio;
        if (!(ratio < ratio_limit)) rep.passed = false;
    }
    return rep;
}

std::string bounds_report_to_json(const BoundsReport& rep) {
    nlohmann::json j;
    j["params"] = {{"mu", rep.params.mu}, {"chi", rep.params.chi}, {"gamma", rep.params.gamma}};
    j["r_grid"] = {{"lo", rep.r_grid.front()}, {"hi", rep.r_grid.back()},
                   {"count", rep.r_grid.size()}};
    j["t_grid"] = {{"lo", rep.t_grid.front()}, {"hi", rep.t_grid.back()},
                   {"count", rep.t_grid.size()}};
    j["per_decade_maxima"] = rep.per_decade_maxima;
    j["fitted_constants"] = rep.fitted_constants;
    j["decade_ratio"] = rep.decade_ratio;
    j["ratio_limit"] = rep.ratio_limit;
    j["passed"] = rep.passed;
    return j.dump(2);
}

}  // namespace mpflow
