#include "mpflow/field.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace mpflow {

namespace {

struct PlanPair {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
};

// One plan pair per grid size.  Plan creation is not thread-safe in FFTW, so
// it is guarded; fftw_execute_dft on distinct buffers is safe.  Plans are
// created with FFTW_ESTIMATE so that plan selection (and hence rounding) does
// not depend on runtime timing measurements.
PlanPair& plans_for(int n) {
    static std::mutex mtx;
    static std::map<int, PlanPair> cache;
    std::scoped_lock lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    PlanPair p;
    std::vector<cplx> a(std::size_t(n) * n), b(std::size_t(n) * n);
    auto* fa = reinterpret_cast<fftw_complex*>(a.data());
    auto* fb = reinterpret_cast<fftw_complex*>(b.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    p.forward = fftw_plan_dft_2d(n, n, fa, fb, FFTW_FORWARD, flags);
    p.backward = fftw_plan_dft_2d(n, n, fa, fb, FFTW_BACKWARD, flags);
    require(p.forward && p.backward, errc::internal, "FFTW plan creation failed");
    return cache.emplace(n, p).first->second;
}

}  // namespace

namespace {

// The cached plans are out-of-place; FFTW forbids executing them in place,
// so aliased calls go through a per-thread scratch buffer.
const cplx* staged_input(const TorusGrid& grid, const cplx* in, const cplx* out) {
    if (in != out) return in;
    thread_local std::vector<cplx> scratch;
    scratch.assign(in, in + grid.size());
    return scratch.data();
}

}  // namespace

void fft_forward(const TorusGrid& grid, const cplx* in, cplx* out) {
    PlanPair& p = plans_for(grid.n());
    const cplx* src = staged_input(grid, in, out);
    fftw_execute_dft(p.forward, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(src)),
                     reinterpret_cast<fftw_complex*>(out));
}

void fft_inverse(const TorusGrid& grid, const cplx* in, cplx* out) {
    PlanPair& p = plans_for(grid.n());
    const cplx* src = staged_input(grid, in, out);
    fftw_execute_dft(p.backward, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(src)),
                     reinterpret_cast<fftw_complex*>(out));
    const double scale = 1.0 / (double(grid.n()) * grid.n());
    for (std::size_t m = 0; m < grid.size(); ++m) out[m] *= scale;
}

ScalarField to_spectral(const ScalarField& f) {
    if (f.is_spectral()) return f;
    const TorusGrid& g = f.grid();
    std::vector<cplx> in(g.size()), out(g.size());
    const auto& phys = f.phys();
    for (std::size_t m = 0; m < g.size(); ++m) in[m] = cplx(phys[m], 0.0);
    fft_forward(g, in.data(), out.data());
    return ScalarField::from_spectral(f.grid_ptr(), std::move(out));
}

ScalarField to_physical(const ScalarField& f) {
    if (!f.is_spectral()) return f;
    const TorusGrid& g = f.grid();
    std::vector<cplx> out(g.size());
    fft_inverse(g, f.spec().data(), out.data());
    std::vector<double> phys(g.size());
    for (std::size_t m = 0; m < g.size(); ++m) phys[m] = out[m].real();
    return ScalarField::from_physical(f.grid_ptr(), std::move(phys));
}

}  // namespace mpflow
