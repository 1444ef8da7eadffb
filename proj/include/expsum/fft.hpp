#pragma once

#include <bit>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace expsum {

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// In-place radix-2 transform:
///
///     a[k] <- sum_m a[m] * exp(sign * 2*pi*i * m*k / N),   N = a.size()
///
/// No 1/N scaling in either direction. N must be a power of two. Twiddles
/// come from a once-per-call std::polar table, so round-off stays near
/// machine precision even for large N.
inline void fft_radix2(std::vector<std::complex<double>>& a, int sign) {
    const std::size_t n = a.size();
    if (!is_power_of_two(n)) throw std::invalid_argument("fft_radix2: size must be a power of two");
    if (n == 1) return;

    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    std::vector<std::complex<double>> twiddle(n / 2);
    const double ang = (sign >= 0 ? 1.0 : -1.0) * 2.0 * 3.14159265358979323846 / static_cast<double>(n);
    for (std::size_t j = 0; j < n / 2; ++j) twiddle[j] = std::polar(1.0, ang * static_cast<double>(j));

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t base = 0; base < n; base += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> w = twiddle[k * stride];
                const std::complex<double> u = a[base + k];
                const std::complex<double> v = a[base + k + len / 2] * w;
                a[base + k] = u + v;
                a[base + k + len / 2] = u - v;
            }
        }
    }
}

}  // namespace expsum
