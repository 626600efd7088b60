#pragma once

#include <complex>
#include <vector>

#include "fracgreen/grid.hpp"

namespace fracgreen {

/// Complex-valued function of wavenumber sampled on a grid's k lattice,
/// stored in the same transform order as Grid1D::k.
struct SpectralField {
    Grid1D grid;
    std::vector<std::complex<double>> values;
};

/// Real-valued solution N(x, t) sampled on the spatial grid at a fixed time.
struct SolutionField {
    Grid1D grid;
    double t = 0.0;
    std::vector<double> values;

    // Largest imaginary part discarded by the synthesis; the solver enforces
    // max_imag_residual <= 1e-6 * max|N| before returning.
    double max_imag_residual = 0.0;

    // k=0 spectral coefficient of the solution. The discrete synthesis makes
    // dx * sum(values) == sqrt(2*pi) * zero_mode exactly, which conservation
    // checks exploit.
    std::complex<double> zero_mode{0.0, 0.0};
};

}
