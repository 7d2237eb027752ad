#ifndef INUDFT_ADI_SHIFTS_HPP
#define INUDFT_ADI_SHIFTS_HPP

#include <limits>
#include <vector>

#include "inudft/arcs.hpp"
#include "inudft/elliptic.hpp"
#include "inudft/types.hpp"

namespace inudft {

/// ADI shift parameters for fADI on a Cauchy-like block whose row spectrum
/// (the Gamma side) lies in one arc and whose column spectrum (the Lambda
/// side) lies in a disjoint arc. alpha_j sit on the Gamma-side arc and so
/// avoid the Lambda spectrum; beta_j sit on the Lambda-side arc and avoid
/// the Gamma spectrum.
struct ShiftSet {
    std::vector<Complex> alpha;
    std::vector<Complex> beta;

    Index count() const { return static_cast<Index>(alpha.size()); }
};

namespace detail {

/// Mobius transformation through three points: maps (z1, z2, z3) to
/// (-alpha_hat, -1, 1). Stored so the inverse can be applied exactly.
struct Mobius {
    Complex z1, z2, z3;
    double alpha_hat;

    /// Inverse image of a real canonical point x.
    Complex inverse(double x) const {
        // w = S^{-1}(x) with S(w) = ((a-1)w - 2a) / ((a-1)w + 2), a = alpha_hat
        const double a = alpha_hat;
        Complex w;
        if (a == 1.0) {
            // canonical intervals collapse to the points -1 and 1
            w = (x <= 0.0) ? Complex(0.0, 0.0)
                           : Complex(std::numeric_limits<double>::infinity(), 0.0);
        } else {
            if (x == 1.0) w = Complex(std::numeric_limits<double>::infinity(), 0.0);
            else w = Complex(2.0 * (a + x) / ((a - 1.0) * (1.0 - x)), 0.0);
        }
        if (std::isinf(w.real())) return z3;
        // z = M^{-1}(w) for M(z) = (z-z1)(z2-z3) / ((z-z3)(z2-z1))
        const Complex num = w * z3 * (z2 - z1) - z1 * (z2 - z3);
        const Complex den = w * (z2 - z1) - (z2 - z3);
        return num / den;
    }
};

}  // namespace detail

/// Optimal Zolotarev shifts for two disjoint arcs. The arcs are mapped by a
/// Mobius transformation onto the symmetric real intervals [-a, -1] and
/// [1, a]; the classical elliptic-function shifts d_j = a dn((2j-1)K/(2k), k)
/// are computed there and mapped back. arcJ is the Gamma (row) side, arcK
/// the Lambda (column) side.
inline ShiftSet adi_shifts(const Arc& arcJ, const Arc& arcK, Index k) {
    if (k < 1) throw std::invalid_argument("adi_shifts: k must be >= 1");
    if (detail::arcs_overlap(arcJ, arcK))
        throw std::invalid_argument("adi_shifts: arcs overlap");

    ShiftSet s;
    s.alpha.reserve(static_cast<size_t>(k));
    s.beta.reserve(static_cast<size_t>(k));

    // Degenerate point arcs: a single exact shift pair repeated. One fADI
    // step with alpha on the Gamma point and beta on the Lambda side is
    // exact for the rank-1 block.
    if (arcJ.is_point() || arcK.is_point()) {
        const Complex a = arcJ.is_point()
                              ? arcJ.lo_point()
                              : std::polar(1.0, 0.5 * (arcJ.theta_lo + arcJ.theta_hi));
        const Complex b = arcK.is_point()
                              ? arcK.lo_point()
                              : std::polar(1.0, 0.5 * (arcK.theta_lo + arcK.theta_hi));
        for (Index j = 0; j < k; ++j) {
            s.alpha.push_back(a);
            s.beta.push_back(b);
        }
        return s;
    }

    const auto [eta, mu] = zolotarev_eta_mu(arcJ, arcK);
    (void)mu;
    const double alpha_hat = 2.0 * eta - 1.0 + 2.0 * std::sqrt(eta * (eta - 1.0));

    detail::Mobius map{std::polar(1.0, arcJ.theta_lo), std::polar(1.0, arcJ.theta_hi),
                       std::polar(1.0, arcK.theta_lo), alpha_hat};

    const double kprime = 1.0 / alpha_hat;
    const double kmod = std::sqrt((1.0 - kprime) * (1.0 + kprime));
    const double K = elliptic_K_from_kprime(kprime);
    for (Index j = 1; j <= k; ++j) {
        const double u = (2.0 * static_cast<double>(j) - 1.0) * K /
                         (2.0 * static_cast<double>(k));
        const double d = alpha_hat * jacobi_dn(u, kmod, kprime);
        s.alpha.push_back(map.inverse(-d));  // zeros, on the Gamma-side arc
        s.beta.push_back(map.inverse(+d));   // poles, on the Lambda-side arc
    }
    return s;
}

}  // namespace inudft

#endif  // INUDFT_ADI_SHIFTS_HPP
