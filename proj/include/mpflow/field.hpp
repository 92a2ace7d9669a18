#pragma once

#include <complex>
#include <memory>
#include <utility>
#include <vector>

#include "mpflow/grid.hpp"

namespace mpflow {

using cplx = std::complex<double>;
using GridPtr = std::shared_ptr<const TorusGrid>;

/// Scalar field on a torus grid, stored either as n*n real physical samples
/// (row-major) or as n*n complex spectral coefficients in DFT ordering.
/// Spectral coefficients follow the convention: forward transform unscaled,
/// inverse scaled by 1/n^2, so the Fourier-series coefficient of mode k is
/// spec[k] / n^2 and the L2 norm over the box is (L^2/n^4) * sum |spec|^2.
class ScalarField {
public:
    enum class Repr { physical, spectral };

    static ScalarField zeros_spectral(GridPtr grid) {
        ScalarField f;
        f.grid_ = std::move(grid);
        f.repr_ = Repr::spectral;
        f.spec_.assign(f.grid_->size(), cplx(0.0, 0.0));
        return f;
    }

    static ScalarField zeros_physical(GridPtr grid) {
        ScalarField f;
        f.grid_ = std::move(grid);
        f.repr_ = Repr::physical;
        f.phys_.assign(f.grid_->size(), 0.0);
        return f;
    }

    static ScalarField from_spectral(GridPtr grid, std::vector<cplx> data) {
        require(data.size() == grid->size(), errc::invalid_argument,
                "spectral data size does not match grid");
        ScalarField f;
        f.grid_ = std::move(grid);
        f.repr_ = Repr::spectral;
        f.spec_ = std::move(data);
        return f;
    }

    static ScalarField from_physical(GridPtr grid, std::vector<double> data) {
        require(data.size() == grid->size(), errc::invalid_argument,
                "physical data size does not match grid");
        ScalarField f;
        f.grid_ = std::move(grid);
        f.repr_ = Repr::physical;
        f.phys_ = std::move(data);
        return f;
    }

    const TorusGrid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    Repr repr() const { return repr_; }
    bool is_spectral() const { return repr_ == Repr::spectral; }

    std::vector<cplx>& spec() {
        require(is_spectral(), errc::invalid_argument, "field is not in spectral form");
        return spec_;
    }
    const std::vector<cplx>& spec() const {
        require(is_spectral(), errc::invalid_argument, "field is not in spectral form");
        return spec_;
    }
    std::vector<double>& phys() {
        require(!is_spectral(), errc::invalid_argument, "field is not in physical form");
        return phys_;
    }
    const std::vector<double>& phys() const {
        require(!is_spectral(), errc::invalid_argument, "field is not in physical form");
        return phys_;
    }

private:
    ScalarField() = default;
    GridPtr grid_;
    Repr repr_ = Repr::spectral;
    std::vector<double> phys_;
    std::vector<cplx> spec_;
};

/// Forward transform (physical -> spectral, unscaled DFT).
ScalarField to_spectral(const ScalarField& f);
/// Inverse transform (spectral -> physical, scaled by 1/n^2, real part).
ScalarField to_physical(const ScalarField& f);

/// Raw-buffer transforms used by the solver hot path.  Deterministic: plans
/// are created with FFTW_ESTIMATE and execution is single-threaded.
void fft_forward(const TorusGrid& grid, const cplx* in, cplx* out);
void fft_inverse(const TorusGrid& grid, const cplx* in, cplx* out);

}  // namespace mpflow
