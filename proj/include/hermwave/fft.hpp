// SPDX-License-Identifier: Apache-2.0

#ifndef HERMWAVE_FFT_HPP
#define HERMWAVE_FFT_HPP

#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace hermwave {

using cplx = std::complex<double>;

/// In-place radix-2 transform, X_k = sum_n x_n exp(sign * 2*pi*i*n*k/N).
/// N must be a power of two. No 1/N normalization is applied.
inline void fft_pow2(std::vector<cplx>& a, int sign) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft_pow2: size must be a power of two");

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * std::numbers::pi / double(len);
        const cplx wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                // re-anchor the twiddle periodically to stop error growth
                if ((k & 255u) == 0 && k != 0)
                    w = cplx(std::cos(ang * double(k)), std::sin(ang * double(k)));
                const cplx u = a[i + k];
                const cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

}  // namespace hermwave

#endif
