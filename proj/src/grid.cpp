#include "fracgreen/grid.hpp"

#include <cmath>

#include "fracgreen/errors.hpp"

namespace fracgreen {

namespace {
bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }
}

Grid1D::Grid1D(double x_min, double x_max, std::size_t n)
    : x_min_(x_min), x_max_(x_max), n_(n) {
    if (!(x_max > x_min))
        throw DomainError("Grid1D: x_max must exceed x_min");
    if (!std::isfinite(x_min) || !std::isfinite(x_max))
        throw DomainError("Grid1D: endpoints must be finite");
    if (n < 8 || !is_power_of_two(n))
        throw DomainError("Grid1D: n must be a power of two >= 8");
}

double Grid1D::dk() const { return 2.0 * M_PI / length(); }

double Grid1D::k(std::size_t i) const {
    const auto half = n_ / 2;
    const double m = (i < half) ? static_cast<double>(i)
                                : static_cast<double>(i) - static_cast<double>(n_);
    return dk() * m;
}

double Grid1D::k_max() const { return dk() * static_cast<double>(n_ / 2); }

}
