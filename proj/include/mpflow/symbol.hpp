#pragma once

#include <array>

#include "mpflow/params.hpp"

namespace mpflow {

/// Scalar quantities entering the per-mode 2x2 propagator at R = |xi|^2:
///   alpha = (mu+chi+gamma)R/2 + 2chi
///   beta  = (mu+chi-gamma)R/2 - 2chi
///   D     = beta^2 + 4chi^2 R        (always > 0 for chi > 0)
/// The eigenvalues of the linear generator are -decay_slow and -decay_fast
/// with decay_slow = alpha - sqrt(D), decay_fast = alpha + sqrt(D).
/// decay_slow is evaluated in the rationalized form
///   (4 chi mu R + gamma (chi+mu) R^2) / (alpha + sqrt(D))
/// because the naive difference cancels catastrophically for small R.
struct SymbolIntermediates {
    double R;
    double alpha;
    double beta;
    double D;
    double sqrtD;
    double decay_slow;
    double decay_fast;
};

SymbolIntermediates intermediates(double R, const MaterialParams& params);

/// Entries of the 2x2 linear propagator at one (R, t).  e12 and e21 are the
/// same expression and are assigned from a single evaluation.
struct SymbolMatrix {
    double e11;
    double e12;
    double e21;
    double e22;
};

SymbolMatrix symbol(double R, double t, const MaterialParams& params);

/// Ground-truth matrix exponential of t*A, with A the Fourier-side generator
///   A = [ -(mu+chi)R   2 chi R  ]
///       [  2 chi       -(gamma R + 4 chi) ],
/// obtained by adaptive Runge-Kutta integration of dX/dt = A X, X(0) = I
/// (local tolerance 1e-12), combined with the semigroup property
/// X(t) = X(t/2)^2 to keep stiff cases affordable.  Independent of the
/// closed-form symbol above.  Note: the top-right entry equals R * e12.
std::array<double, 4> expm_oracle(double R, double t, const MaterialParams& params);

}  // namespace mpflow
