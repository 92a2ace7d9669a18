#include "mpflow/symbol.hpp"

#include <algorithm>
#include <cmath>

namespace mpflow {

SymbolIntermediates intermediates(double R, const MaterialParams& params) {
    params.validate();
    require(std::isfinite(R) && R >= 0.0, errc::invalid_argument, "intermediates: R must be >= 0");
    const double mu = params.mu, chi = params.chi, gamma = params.gamma;
    SymbolIntermediates s;
    s.R = R;
    s.alpha = 0.5 * (mu + chi + gamma) * R + 2.0 * chi;
    s.beta = 0.5 * (mu + chi - gamma) * R - 2.0 * chi;
    s.D = s.beta * s.beta + 4.0 * chi * chi * R;
    s.sqrtD = std::sqrt(s.D);
    s.decay_fast = s.alpha + s.sqrtD;
    s.decay_slow = (4.0 * chi * mu * R + gamma * (chi + mu) * R * R) / s.decay_fast;
    return s;
}

SymbolMatrix symbol(double R, double t, const MaterialParams& params) {
    require(std::isfinite(t) && t >= 0.0, errc::invalid_argument, "symbol: t must be >= 0");
    if (t == 0.0) return {1.0, 0.0, 0.0, 1.0};
    const SymbolIntermediates s = intermediates(R, params);
    const double es = std::exp(-t * s.decay_slow);
    const double ef = std::exp(-t * s.decay_fast);
    // es - ef without cancellation when the spectral gap is small
    const double gap = 2.0 * s.sqrtD;
    const double diff = es * (-std::expm1(-t * gap));
    const double half = 0.5 / s.sqrtD;
    SymbolMatrix m;
    m.e11 = half * (es * (s.sqrtD - s.beta) + ef * (s.sqrtD + s.beta));
    m.e12 = params.chi / s.sqrtD * diff;
    m.e21 = m.e12;
    m.e22 = half * (es * (s.sqrtD + s.beta) + ef * (s.sqrtD - s.beta));
    return m;
}

namespace {

using Mat2 = std::array<double, 4>;

Mat2 matmul(const Mat2& a, const Mat2& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

double max_abs(const Mat2& a) {
    return std::max(std::max(std::abs(a[0]), std::abs(a[1])),
                    std::max(std::abs(a[2]), std::abs(a[3])));
}

// One Dormand-Prince 5(4) step for X' = A X; returns the embedded error.
Mat2 dopri5_step(const Mat2& A, const Mat2& X, double h, double& err) {
    auto rhs = [&A](const Mat2& Y) { return matmul(A, Y); };
    auto axpy = [](const Mat2& Y, double c, const Mat2& K) {
        return Mat2{Y[0] + c * K[0], Y[1] + c * K[1], Y[2] + c * K[2], Y[3] + c * K[3]};
    };
    const Mat2 k1 = rhs(X);
    const Mat2 k2 = rhs(axpy(X, h / 5.0, k1));
    Mat2 y = axpy(X, 3.0 * h / 40.0, k1);
    y = axpy(y, 9.0 * h / 40.0, k2);
    const Mat2 k3 = rhs(y);
    y = axpy(X, 44.0 * h / 45.0, k1);
    y = axpy(y, -56.0 * h / 15.0, k2);
    y = axpy(y, 32.0 * h / 9.0, k3);
    const Mat2 k4 = rhs(y);
    y = axpy(X, 19372.0 * h / 6561.0, k1);
    y = axpy(y, -25360.0 * h / 2187.0, k2);
    y = axpy(y, 64448.0 * h / 6561.0, k3);
    y = axpy(y, -212.0 * h / 729.0, k4);
    const Mat2 k5 = rhs(y);
    y = axpy(X, 9017.0 * h / 3168.0, k1);
    y = axpy(y, -355.0 * h / 33.0, k2);
    y = axpy(y, 46732.0 * h / 5247.0, k3);
    y = axpy(y, 49.0 * h / 176.0, k4);
    y = axpy(y, -5103.0 * h / 18656.0, k5);
    const Mat2 k6 = rhs(y);
    Mat2 x5 = axpy(X, 35.0 * h / 384.0, k1);
    x5 = axpy(x5, 500.0 * h / 1113.0, k3);
    x5 = axpy(x5, 125.0 * h / 192.0, k4);
    x5 = axpy(x5, -2187.0 * h / 6784.0, k5);
    x5 = axpy(x5, 11.0 * h / 84.0, k6);
    const Mat2 k7 = rhs(x5);
    // difference between 5th and embedded 4th order solutions
    Mat2 e{};
    const double d1 = 71.0 / 57600.0, d3 = -71.0 / 16695.0, d4 = 71.0 / 1920.0,
                 d5 = -17253.0 / 339200.0, d6 = 22.0 / 525.0, d7 = -1.0 / 40.0;
    for (int i = 0; i < 4; ++i)
        e[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
    err = max_abs(e);
    return x5;
}

Mat2 integrate_expm(const Mat2& A, double t) {
    Mat2 X{1.0, 0.0, 0.0, 1.0};
    if (t == 0.0) return X;
    const double tol = 1e-12;
    double h = std::min(t, 0.1 / std::max(1.0, max_abs(A)));
    double s = 0.0;
    int steps = 0;
    while (s < t) {
        h = std::min(h, t - s);
        require(h > t * 1e-17 && steps < 2'000'000, errc::numerical,
                "expm_oracle: step size underflow");
        double err = 0.0;
        const Mat2 Xn = dopri5_step(A, X, h, err);
        const double scale = std::max(max_abs(X), 1e-300);
        if (err <= tol * scale) {
            X = Xn;
            s += h;
        }
        const double ratio = err > 0.0 ? tol * scale / err : 10.0;
        h *= std::clamp(0.9 * std::pow(ratio, 0.2), 0.2, 5.0);
        ++steps;
    }
    return X;
}

}  // namespace

std::array<double, 4> expm_oracle(double R, double t, const MaterialParams& params) {
    params.validate();
    require(std::isfinite(R) && R >= 0.0, errc::invalid_argument, "expm_oracle: R must be >= 0");
    require(std::isfinite(t) && t >= 0.0, errc::invalid_argument, "expm_oracle: t must be >= 0");
    const double mu = params.mu, chi = params.chi, gamma = params.gamma;
    const Mat2 A{-(mu + chi) * R, 2.0 * chi * R, 2.0 * chi, -(gamma * R + 4.0 * chi)};
    // Integrate over a span short enough for the explicit scheme, then use the
    // semigroup property X(t) = X(t/2^m)^(2^m).  All entries of X are
    // nonnegative, so the repeated squaring is cancellation-free.
    int m = 0;
    double tau = t;
    while (tau * max_abs(A) > 1.0 && m < 60) {
        tau *= 0.5;
        ++m;
    }
    Mat2 X = integrate_expm(A, tau);
    for (int i = 0; i < m; ++i) X = matmul(X, X);
    return X;
}

}  // namespace mpflow
