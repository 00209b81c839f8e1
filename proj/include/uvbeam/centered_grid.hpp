// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace uvbeam {

using cplx = std::complex<double>;

/// First centered index for an axis of n samples.
///
/// Odd n gives the symmetric range -(n-1)/2 .. (n-1)/2. Even n keeps index 0
/// on a sample and runs -n/2 .. n/2-1, so the origin is one sample off the
/// geometric center.
constexpr int centered_lo(int n) { return -(n / 2); }
constexpr int centered_hi(int n) { return centered_lo(n) + n - 1; }

/// Square n x n matrix addressed by centered integer indices (i, j), with i
/// the x-axis index and j the y-axis index. Storage is row-major in i.
template <typename T>
class CenteredGrid {
public:
    CenteredGrid() = default;

    explicit CenteredGrid(int n, T fill = T{})
        : n_(n), data_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), fill)
    {
        if (n < 1)
            throw std::invalid_argument("CenteredGrid: size must be positive");
    }

    int size() const { return n_; }
    int lo() const { return centered_lo(n_); }
    int hi() const { return centered_hi(n_); }

    bool contains(int i, int j) const { return i >= lo() && i <= hi() && j >= lo() && j <= hi(); }

    T& operator()(int i, int j) { return data_[offset(i, j)]; }
    const T& operator()(int i, int j) const { return data_[offset(i, j)]; }

    T& at(int i, int j)
    {
        if (!contains(i, j))
            throw std::out_of_range("CenteredGrid: index outside centered range");
        return data_[offset(i, j)];
    }
    const T& at(int i, int j) const
    {
        if (!contains(i, j))
            throw std::out_of_range("CenteredGrid: index outside centered range");
        return data_[offset(i, j)];
    }

    std::span<T> flat() { return data_; }
    std::span<const T> flat() const { return data_; }

    bool operator==(const CenteredGrid&) const = default;

private:
    std::size_t offset(int i, int j) const
    {
        return static_cast<std::size_t>(i - lo()) * static_cast<std::size_t>(n_)
            + static_cast<std::size_t>(j - lo());
    }

    int n_ = 0;
    std::vector<T> data_;
};

using RealGrid = CenteredGrid<double>;
using ComplexGrid = CenteredGrid<cplx>;

} // namespace uvbeam
