#ifndef INUDFT_GRIDS_HPP
#define INUDFT_GRIDS_HPP

#include <random>
#include <string>

#include "inudft/fft.hpp"
#include "inudft/types.hpp"

namespace inudft {

/// The four node-distribution generators. Randomness comes from
/// std::mt19937_64 with the 53-bit mapping u = (x >> 11) * 2^-53, so a
/// given (kind, seed, m, n) is reproducible bit for bit on any platform.
enum class GridKind { Jittered, Chebyshev, UniformRandom, RandomGap };

inline const char* grid_name(GridKind g) {
    switch (g) {
        case GridKind::Jittered: return "jittered";
        case GridKind::Chebyshev: return "chebyshev";
        case GridKind::UniformRandom: return "uniform_random";
        case GridKind::RandomGap: return "random_gap";
    }
    return "?";
}

inline bool parse_grid_kind(const std::string& s, GridKind& out) {
    if (s == "jittered" || s == "1") out = GridKind::Jittered;
    else if (s == "chebyshev" || s == "2") out = GridKind::Chebyshev;
    else if (s == "uniform_random" || s == "3") out = GridKind::UniformRandom;
    else if (s == "random_gap" || s == "4") out = GridKind::RandomGap;
    else return false;
    return true;
}

namespace detail {

inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double gaussian(std::mt19937_64& rng) {
    // Box-Muller on the fixed uniform mapping keeps the stream portable
    double u1 = uniform01(rng);
    while (u1 == 0.0) u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

inline double reduce_mod1(double x) {
    double r = x - std::floor(x);
    if (r >= 1.0) r -= 1.0;
    return r;
}

}  // namespace detail

/// Raw (unsorted) sample locations in [0,1).
///   jittered:        p_j = ((m-j+1) + theta psi_j)/m, psi_j ~ U[-1,1]
///   chebyshev:       p_j = (1 + cos(pi (j-1)/(m-1)))/2
///   uniform_random:  p_j ~ U[0,1)
///   random_gap:      p_j ~ U[0, 1-delta], delta = 8/n
inline RVector generate_grid(GridKind kind, Index m, Index n, double theta, uint64_t seed) {
    if (m < 2) throw std::invalid_argument("generate_grid: m must be >= 2");
    std::mt19937_64 rng(seed);
    RVector p(m);
    switch (kind) {
        case GridKind::Jittered:
            for (Index j = 1; j <= m; ++j) {
                const double psi = 2.0 * detail::uniform01(rng) - 1.0;
                p[j - 1] = detail::reduce_mod1(
                    (static_cast<double>(m - j + 1) + theta * psi) / static_cast<double>(m));
            }
            break;
        case GridKind::Chebyshev:
            for (Index j = 1; j <= m; ++j)
                p[j - 1] = detail::reduce_mod1(
                    (1.0 + std::cos(kPi * static_cast<double>(j - 1) /
                                    static_cast<double>(m - 1))) /
                    2.0);
            break;
        case GridKind::UniformRandom:
            for (Index j = 0; j < m; ++j) p[j] = detail::uniform01(rng);
            break;
        case GridKind::RandomGap: {
            if (n < 9) throw std::invalid_argument("generate_grid: random_gap needs n > 8");
            const double delta = 8.0 / static_cast<double>(n);
            for (Index j = 0; j < m; ++j) p[j] = detail::uniform01(rng) * (1.0 - delta);
            break;
        }
    }
    return p;
}

/// The piecewise test signal: a chirp, a top-hat, and a triangle on
/// x = 2 pi p in [0, 2 pi).
inline double test_signal_f(double x) {
    if (x < 3.0) return std::sin(8.0 * x * x);
    if (x > 3.5 && x < 4.5) return 1.0;
    return std::max(0.0, 1.0 - 2.0 * std::abs(x - 5.5));
}

/// Gaussian-filtered Fourier coefficients of the test signal for the
/// symmetric index range -n/2 <= k < n/2:
///   c_k ~ equispaced quadrature of int_0^1 e^{2 pi i k p} f(2 pi p) dp,
///   x_k = exp(-0.5 (7k/n)^2) c_k.
/// Coefficients are returned in symmetric-index order; under the 0..n-1
/// frequency convention the same vector applies to the prephased data
/// gamma_j^{n/2} b_j.
struct TestSignal {
    Index n = 0;
    CVector coeffs;  // index i holds x_k with k = i - n/2

    /// Prephased samples at the given nodes: b'_j = gamma_j^{n/2} b_j,
    /// which is exactly the 0..n-1 convention type-II transform of coeffs.
    Complex coeff(Index k) const { return coeffs[k + n / 2]; }
};

inline TestSignal test_signal(Index n, Index quad_factor = 10) {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("test_signal: n must be even");
    const Index nq = quad_factor * n;
    CVector f(nq);
    for (Index i = 0; i < nq; ++i)
        f[i] = Complex(test_signal_f(kTwoPi * static_cast<double>(i) / static_cast<double>(nq)),
                       0.0);
    // c_k = (1/nq) sum_i f_i e^{2 pi i k i / nq}: inverse DFT, index k mod nq
    const CVector chat = fft_any(f, FftDirection::Inverse);
    TestSignal sig;
    sig.n = n;
    sig.coeffs.resize(n);
    for (Index k = -n / 2; k < n / 2; ++k) {
        const Index idx = k >= 0 ? k : k + nq;
        const double filt =
            std::exp(-0.5 * std::pow(7.0 * static_cast<double>(k) / static_cast<double>(n), 2));
        sig.coeffs[k + n / 2] = filt * chat[idx];
    }
    return sig;
}

/// Evaluate the symmetric-index Fourier series on dense equispaced points
/// via a zero-padded FFT: s_i = sum_k x_k e^{-2 pi i k i / npts}.
inline CVector evaluate_signal_dense(const TestSignal& sig, Index npts) {
    if (npts < sig.n) throw std::invalid_argument("evaluate_signal_dense: grid too coarse");
    CVector pad = CVector::Zero(npts);
    for (Index k = -sig.n / 2; k < sig.n / 2; ++k) {
        const Index idx = k >= 0 ? k : k + npts;
        pad[idx] = sig.coeff(k);
    }
    return fft_any(pad, FftDirection::Forward);
}

}  // namespace inudft

#endif  // INUDFT_GRIDS_HPP
