#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "sg/errors.hpp"

namespace sg {

/// Square banded matrix with equal lower/upper half-bandwidth, stored by rows.
///
/// Row i keeps the 2*bw+1 entries for columns i-bw .. i+bw; entries outside [0, n) are unused
/// and stay zero.
class BandedMatrix {
public:
    BandedMatrix() = default;
    BandedMatrix(int n, int bw) : n_(n), bw_(bw), band_(static_cast<std::size_t>(n) * (2 * bw + 1), 0.0) {}

    int size() const { return n_; }
    int bandwidth() const { return bw_; }

    double operator()(int i, int j) const {
        if (j < i - bw_ || j > i + bw_) return 0.0;
        return band_[slot(i, j)];
    }

    void set(int i, int j, double v) {
        if (i < 0 || i >= n_ || j < 0 || j >= n_ || j < i - bw_ || j > i + bw_)
            throw DimensionError("banded matrix: entry outside the band");
        band_[slot(i, j)] = v;
    }

    int first_col(int i) const { return std::max(0, i - bw_); }
    int last_col(int i) const { return std::min(n_ - 1, i + bw_); }

    double diagonal(int i) const { return band_[slot(i, i)]; }

    /// y = A x
    void apply(std::span<const double> x, std::span<double> y) const {
        for (int i = 0; i < n_; ++i) {
            double s = 0.0;
            for (int j = first_col(i); j <= last_col(i); ++j) s += band_[slot(i, j)] * x[j];
            y[i] = s;
        }
    }

    double row_sum(int i) const {
        double s = 0.0;
        for (int j = first_col(i); j <= last_col(i); ++j) s += band_[slot(i, j)];
        return s;
    }

    bool is_symmetric() const {
        for (int i = 0; i < n_; ++i)
            for (int j = first_col(i); j <= last_col(i); ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

    BandedMatrix& operator*=(double a) {
        for (double& v : band_) v *= a;
        return *this;
    }

    std::vector<double> dense() const {
        std::vector<double> d(static_cast<std::size_t>(n_) * n_, 0.0);
        for (int i = 0; i < n_; ++i)
            for (int j = first_col(i); j <= last_col(i); ++j) d[static_cast<std::size_t>(i) * n_ + j] = (*this)(i, j);
        return d;
    }

private:
    std::size_t slot(int i, int j) const {
        return static_cast<std::size_t>(i) * (2 * bw_ + 1) + static_cast<std::size_t>(j - i + bw_);
    }

    int n_ = 0;
    int bw_ = 0;
    std::vector<double> band_;
};

}  // namespace sg
