#ifndef INUDFT_FFT_HPP
#define INUDFT_FFT_HPP

#include <bit>
#include <vector>

#include "inudft/types.hpp"

namespace inudft {

enum class FftDirection { Forward, Inverse };

namespace detail {

inline bool is_pow2(size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// In-place iterative radix-2 transform, unnormalized:
/// X_j = sum_k x_k e^{sign * 2 pi i jk/N} with sign = -1 (forward) or +1.
inline void fft_radix2_inplace(CVector& x, int sign) {
    const size_t n = static_cast<size_t>(x.size());
    if (n <= 1) return;
    // bit reversal
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[static_cast<Index>(i)], x[static_cast<Index>(j)]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * kTwoPi / static_cast<double>(len);
        const Complex wlen = std::polar(1.0, ang);
        for (size_t i = 0; i < n; i += len) {
            Complex w(1.0, 0.0);
            for (size_t k = 0; k < len / 2; ++k) {
                Complex a = x[static_cast<Index>(i + k)];
                Complex b = x[static_cast<Index>(i + k + len / 2)] * w;
                x[static_cast<Index>(i + k)] = a + b;
                x[static_cast<Index>(i + k + len / 2)] = a - b;
                w *= wlen;
            }
        }
    }
}

}  // namespace detail

/// Radix-2 FFT of a power-of-two length vector.
/// Forward returns the unnormalized sums sum_k x_k e^{-2 pi i jk/N};
/// Inverse divides by N so that inverse(forward(x)) == x.
inline CVector fft_pow2(const CVector& x, FftDirection dir) {
    const size_t n = static_cast<size_t>(x.size());
    if (!detail::is_pow2(n))
        throw std::invalid_argument("fft_pow2: length " + std::to_string(n) +
                                    " is not a power of two");
    CVector y = x;
    detail::fft_radix2_inplace(y, dir == FftDirection::Forward ? -1 : +1);
    if (dir == FftDirection::Inverse) y /= static_cast<double>(n);
    return y;
}

/// DFT of arbitrary length: radix-2 when possible, Bluestein otherwise.
/// Same normalization contract as fft_pow2.
inline CVector fft_any(const CVector& x, FftDirection dir) {
    const size_t n = static_cast<size_t>(x.size());
    if (n <= 1) return x;
    if (detail::is_pow2(n)) return fft_pow2(x, dir);

    // Bluestein: X_j = chirp_j * (a conv b)_j with
    // a_k = x_k chirp_k, b_k = conj(chirp_k), chirp_k = e^{sign pi i k^2/n}.
    const int sign = dir == FftDirection::Forward ? -1 : +1;
    const size_t nfft = std::bit_ceil(2 * n - 1);
    CVector chirp(n);
    for (size_t k = 0; k < n; ++k) {
        // k^2 mod 2n computed in integer arithmetic to keep the phase exact
        const unsigned long long k2 = (static_cast<unsigned long long>(k) * k) % (2 * n);
        chirp[static_cast<Index>(k)] =
            std::polar(1.0, sign * kPi * static_cast<double>(k2) / static_cast<double>(n));
    }
    CVector a = CVector::Zero(static_cast<Index>(nfft));
    CVector b = CVector::Zero(static_cast<Index>(nfft));
    for (size_t k = 0; k < n; ++k) {
        a[static_cast<Index>(k)] = x[static_cast<Index>(k)] * chirp[static_cast<Index>(k)];
        b[static_cast<Index>(k)] = std::conj(chirp[static_cast<Index>(k)]);
        if (k > 0) b[static_cast<Index>(nfft - k)] = std::conj(chirp[static_cast<Index>(k)]);
    }
    detail::fft_radix2_inplace(a, -1);
    detail::fft_radix2_inplace(b, -1);
    for (Index i = 0; i < a.size(); ++i) a[i] *= b[i];
    detail::fft_radix2_inplace(a, +1);
    CVector y(n);
    for (size_t j = 0; j < n; ++j)
        y[static_cast<Index>(j)] =
            chirp[static_cast<Index>(j)] * a[static_cast<Index>(j)] / static_cast<double>(nfft);
    if (dir == FftDirection::Inverse) y /= static_cast<double>(n);
    return y;
}

}  // namespace inudft

#endif  // INUDFT_FFT_HPP
