#pragma once

#include <cstddef>

namespace fracgreen {

/// Uniform spatial grid on [x_min, x_max) with a power-of-two sample count,
/// shared by the spectral solver and its wavenumber lattice.
///
/// Nodes are x(i) = x_min + i*dx for i in [0, n). The matching wavenumbers
/// are k = 2*pi*m/(x_max - x_min) for integer m in [-n/2, n/2), stored in
/// transform order: index i maps to m = i for i < n/2 and m = i - n above.
class Grid1D {
public:
    // Throws DomainError unless x_max > x_min and n is a power of two >= 8.
    Grid1D(double x_min, double x_max, std::size_t n);

    double x_min() const { return x_min_; }
    double x_max() const { return x_max_; }
    std::size_t n() const { return n_; }

    double length() const { return x_max_ - x_min_; }
    double dx() const { return length() / static_cast<double>(n_); }
    double dk() const;

    // Node coordinate, i in [0, n).
    double x(std::size_t i) const { return x_min_ + dx() * static_cast<double>(i); }

    // Wavenumber for transform-order index i in [0, n).
    double k(std::size_t i) const;

    // Largest wavenumber magnitude on the grid (the unpaired mode at -n/2).
    double k_max() const;

private:
    double x_min_;
    double x_max_;
    std::size_t n_;
};

}
