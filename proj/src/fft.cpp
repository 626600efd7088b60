#include "fracgreen/fft.hpp"

#include <cmath>

#include "fracgreen/errors.hpp"

namespace fracgreen {

void fft_radix2(std::vector<std::complex<double>>& a, int sign) {
    const std::size_t n = a.size();
    if (n == 0) return;
    if ((n & (n - 1)) != 0)
        throw DomainError("fft_radix2: length must be a power of two");
    if (sign != 1 && sign != -1)
        throw DomainError("fft_radix2: sign must be +1 or -1");

    // Bit-reversal permutation.
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * M_PI / static_cast<double>(len);
        const std::size_t half = len >> 1;
        for (std::size_t blk = 0; blk < n; blk += len) {
            for (std::size_t j = 0; j < half; ++j) {
                // Twiddle from polar each time: O(n log n) sin/cos keeps the
                // roots accurate to a ulp, and this transform is far from the
                // profile's hot spot.
                const std::complex<double> w =
                    std::polar(1.0, ang * static_cast<double>(j));
                std::complex<double>& u = a[blk + j];
                std::complex<double>& v = a[blk + j + half];
                const std::complex<double> t = v * w;
                v = u - t;
                u += t;
            }
        }
    }
}

}
