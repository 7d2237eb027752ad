#ifndef INUDFT_ELLIPTIC_HPP
#define INUDFT_ELLIPTIC_HPP

#include <algorithm>
#include <array>
#include <cmath>

#include "inudft/types.hpp"

namespace inudft {

/// Complete elliptic integral K given the complementary modulus k',
/// via the arithmetic-geometric mean: K = pi / (2 agm(1, k')).
/// Taking k' directly keeps accuracy when the modulus is close to 1.
inline double elliptic_K_from_kprime(double kprime) {
    if (!(kprime > 0.0 && kprime <= 1.0))
        throw std::invalid_argument("elliptic_K_from_kprime: k' must be in (0,1]");
    double a = 1.0, b = kprime;
    for (int it = 0; it < 60 && std::abs(a - b) > 4e-16 * a; ++it) {
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return kPi / (2.0 * a);
}

/// Jacobi dn(u, k) by the descending-Landen AGM recursion on the
/// complementary parameter k'^2, with the multiplicative back-substitution
/// that stays stable for arguments anywhere in [0, K].
inline double jacobi_dn(double u, double k, double kprime) {
    if (k < 1e-12) return 1.0;
    constexpr double kAgmTol = 1e-9;  // final accuracy ~ tol^2
    double emc = kprime * kprime;
    std::array<double, 16> em{}, en{};
    double a = 1.0, c = 0.0, dn = 1.0;
    int l = 0;
    for (int i = 0; i < 14; ++i) {
        l = i;
        em[static_cast<size_t>(i)] = a;
        emc = std::sqrt(emc);
        en[static_cast<size_t>(i)] = emc;
        c = 0.5 * (a + emc);
        if (std::abs(a - emc) <= kAgmTol * a) break;
        emc *= a;
        a = c;
    }
    double uu = c * u;
    double sn = std::sin(uu);
    const double cn = std::cos(uu);
    if (sn != 0.0) {
        a = cn / sn;
        c *= a;
        for (int ii = l; ii >= 0; --ii) {
            const double b = em[static_cast<size_t>(ii)];
            a *= c;
            c *= dn;
            dn = (en[static_cast<size_t>(ii)] + a) / (b + a);
            a = c / b;
        }
    }
    return dn;
}

}  // namespace inudft

#endif  // INUDFT_ELLIPTIC_HPP
