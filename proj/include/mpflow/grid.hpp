#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "mpflow/errors.hpp"

namespace mpflow {

/// Uniform n x n grid on the periodic box [0, L)^2 with the usual DFT mode
/// ordering (0, 1, ..., n/2-1, -n/2, ..., -1 per axis).  Wavenumbers are
/// k_m = (2*pi/L) * m.  The dealias mask implements the two-thirds rule:
/// true exactly where both integer modes satisfy |m| < n/3.
class TorusGrid {
public:
    TorusGrid(int n, double length) : n_(n), length_(length) {
        require(n > 0 && n % 2 == 0, errc::invalid_argument, "grid n must be positive and even");
        require(std::isfinite(length) && length > 0.0, errc::invalid_argument,
                "grid length must be finite and > 0");
        const double k0 = 2.0 * std::numbers::pi / length_;
        wavenumbers_.resize(n_);
        for (int i = 0; i < n_; ++i) wavenumbers_[i] = k0 * mode(i);
        ksq_.resize(std::size_t(n_) * n_);
        mask_.resize(std::size_t(n_) * n_);
        for (int i = 0; i < n_; ++i) {
            const double k1 = wavenumbers_[i];
            const bool in1 = 3 * std::abs(mode(i)) < n_;
            for (int j = 0; j < n_; ++j) {
                const double k2 = wavenumbers_[j];
                ksq_[index(i, j)] = k1 * k1 + k2 * k2;
                mask_[index(i, j)] = in1 && (3 * std::abs(mode(j)) < n_);
            }
        }
    }

    int n() const { return n_; }
    double length() const { return length_; }
    double dx() const { return length_ / n_; }
    double k_min() const { return 2.0 * std::numbers::pi / length_; }
    double k_max_dealiased() const {
        // largest |k| with both components inside the mask
        const int mmax = (n_ - 1) / 3;
        return k_min() * mmax * std::numbers::sqrt2;
    }

    std::size_t size() const { return std::size_t(n_) * n_; }
    std::size_t index(int i, int j) const { return std::size_t(i) * n_ + j; }

    /// signed integer mode for row/column index i in [0, n)
    int mode(int i) const { return i < n_ / 2 ? i : i - n_; }
    /// row/column index of the conjugate mode -m
    int conj_index(int i) const { return i == 0 ? 0 : n_ - i; }

    double wavenumber(int i) const { return wavenumbers_[i]; }
    const std::vector<double>& ksq() const { return ksq_; }
    const std::vector<std::uint8_t>& dealias_mask() const { return mask_; }

    bool same_as(const TorusGrid& other) const {
        return n_ == other.n_ && length_ == other.length_;
    }

private:
    int n_;
    double length_;
    std::vector<double> wavenumbers_;
    std::vector<double> ksq_;
    std::vector<std::uint8_t> mask_;
};

}  // namespace mpflow
