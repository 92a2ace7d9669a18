#include "mpflow/radial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mpflow/quadrature.hpp"
#include "mpflow/symbol.hpp"

namespace mpflow {

double phi_value(PhiKind kind, double rho) {
    const double R = rho * rho;
    switch (kind) {
        case PhiKind::algebraic: return 1.0 / (1.0 + R);
        case PhiKind::gaussian: return std::exp(-R);
    }
    fail(errc::internal, "unknown PhiKind");
}

RadialWhich radial_which_from_name(const std::string& name) {
    if (name == "u_L") return RadialWhich::u_L;
    if (name == "h_L") return RadialWhich::h_L;
    if (name == "profile-error-u") return RadialWhich::profile_error_u;
    if (name == "profile-error-h") return RadialWhich::profile_error_h;
    if (name == "heat-u") return RadialWhich::heat_u;
    fail(errc::invalid_argument, "unknown radial quantity: " + name);
}

namespace {

// Radial integrand of the squared L2 norm.  With g(rho) = rho^(Gamma-2) Phi,
// every quantity reduces to  (1/2pi) * integral of  M(rho,t)^2 * weight,
// where the velocity-type quantities carry weight rho^(2 Gamma - 1) and the
// scalar (h) quantities rho^(2 Gamma - 3).
struct Integrand {
    const RadialDataSpec* spec;
    RadialWhich which;
    double t;
    const MaterialParams* params;

    double operator()(double rho) const {
        const double R = rho * rho;
        const double Phi = phi_value(spec->phi, rho);
        const double A = spec->amplitude;
        const double au = spec->kind == RadialDataKind::micro_only ? 0.0 : A;
        const double ah = spec->kind == RadialDataKind::velocity_only ? 0.0 : A;
        double M = 0.0;
        double weight_exp = 2.0 * spec->Gamma - 1.0;
        switch (which) {
            case RadialWhich::heat_u:
                M = 0.5 * au * std::exp(-params->mu * t * R);
                break;
            case RadialWhich::u_L: {
                const SymbolMatrix E = symbol(R, t, *params);
                M = 0.5 * au * E.e11 - ah * E.e12;
                break;
            }
            case RadialWhich::profile_error_u: {
                const SymbolMatrix E = symbol(R, t, *params);
                const double H = std::exp(-params->mu * t * R);
                M = 0.5 * au * (E.e11 - H) - ah * (E.e12 - 0.5 * H);
                break;
            }
            case RadialWhich::h_L: {
                const SymbolMatrix E = symbol(R, t, *params);
                M = -0.5 * au * R * E.e21 + ah * E.e22;
                weight_exp = 2.0 * spec->Gamma - 3.0;
                break;
            }
            case RadialWhich::profile_error_h: {
                const SymbolMatrix E = symbol(R, t, *params);
                const double H = std::exp(-params->mu * t * R);
                M = -0.5 * au * R * (E.e21 - 0.5 * H) + ah * (E.e22 - 0.25 * R * H);
                weight_exp = 2.0 * spec->Gamma - 3.0;
                break;
            }
        }
        return M * M * std::pow(rho, weight_exp) * Phi * Phi;
    }
};

}  // namespace

double radial_norm_sq(const RadialDataSpec& spec, RadialWhich which, double t,
                      const MaterialParams& params) {
    spec.validate();
    params.validate();
    require(std::isfinite(t) && t >= 0.0, errc::invalid_argument, "radial_norm_sq: t must be >= 0");
    if (which == RadialWhich::profile_error_u || which == RadialWhich::profile_error_h)
        require(t > 0.0, errc::invalid_argument, "radial_norm_sq: profile errors need t > 0");

    Integrand f{&spec, which, t, &params};

    // locate the peak on a coarse log grid, then truncate where the tail has
    // dropped below 1e-16 of it
    double peak = 0.0;
    for (int i = 0; i <= 160; ++i) {
        const double rho = std::pow(10.0, -6.0 + 10.0 * i / 160.0);
        peak = std::max(peak, f(rho));
    }
    if (peak <= 0.0) return 0.0;
    double upper = 1.0;
    while (upper < 1e12 && f(upper) > 1e-16 * peak) upper *= 2.0;

    auto fn = [&f](double rho) { return f(rho); };
    const QuadResult lo = integrate_adaptive(fn, 0.0, std::min(1.0, upper), 1e-8, 1e-18 * peak);
    QuadResult hi{0.0, 0.0, 0};
    if (upper > 1.0) hi = integrate_adaptive(fn, 1.0, upper, 1e-8, 1e-18 * peak);
    return (lo.value + hi.value) / (2.0 * std::numbers::pi);
}

}  // namespace mpflow
