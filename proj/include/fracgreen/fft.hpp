#pragma once

#include <complex>
#include <vector>

namespace fracgreen {

/// In-place radix-2 transform of a power-of-two-length vector:
///   a[k] <- sum_j a[j] * exp(sign * 2*pi*i * j*k / n).
/// sign = -1 is the conventional forward transform. No normalization is
/// applied. Deterministic (fixed butterfly order), single-threaded.
void fft_radix2(std::vector<std::complex<double>>& a, int sign);

}
