#ifndef INUDFT_ARCS_HPP
#define INUDFT_ARCS_HPP

#include <cmath>
#include <utility>

#include "inudft/types.hpp"

namespace inudft {

/// Counterclockwise arc {e^{i theta} : theta_lo <= theta <= theta_hi}.
/// Endpoints need not be reduced mod 2 pi; the width must be in [0, 2 pi).
struct Arc {
    double theta_lo = 0.0;
    double theta_hi = 0.0;

    double width() const { return theta_hi - theta_lo; }
    bool is_point() const { return theta_hi == theta_lo; }
    Complex lo_point() const { return std::polar(1.0, theta_lo); }
    Complex hi_point() const { return std::polar(1.0, theta_hi); }

    /// True if angle theta (any representative) lies on the arc.
    bool contains(double theta) const {
        double d = theta - theta_lo;
        d -= kTwoPi * std::floor(d / kTwoPi);
        return d <= width() + 1e-12;
    }
};

namespace detail {

/// Does [a_lo, a_hi] intersect [b_lo, b_hi] on the circle?
inline bool arcs_overlap(const Arc& a, const Arc& b) {
    // reduce the start of b relative to the start of a
    double d = b.theta_lo - a.theta_lo;
    d -= kTwoPi * std::floor(d / kTwoPi);  // d in [0, 2pi)
    if (d <= a.width()) return true;                     // b starts inside a
    return d + b.width() >= kTwoPi;                      // b wraps past a's start
}

}  // namespace detail

/// Arcs containing the node-side and root-of-unity-side spectra of the HSS
/// column for cluster range kappa1..kappa2:
///   A_J = { pi(2 kappa2 + 1)/n <= theta <= pi(2n + 2 kappa1 - 1)/n }
///   A_K = { 2 pi kappa1 / n    <= theta <= 2 pi kappa2 / n }
/// A_J covers every node outside the range's clusters; A_K covers the
/// roots of unity omega^{2 kappa} for kappa in the range.
inline std::pair<Arc, Arc> hss_block_arcs(Index kappa1, Index kappa2, Index n) {
    if (!(1 <= kappa1 && kappa1 <= kappa2 && kappa2 <= n))
        throw std::invalid_argument("hss_block_arcs: invalid cluster range");
    if (kappa1 == 1 && kappa2 == n)
        throw std::invalid_argument("hss_block_arcs: range covers all clusters");
    const double nn = static_cast<double>(n);
    Arc arcJ{kPi * (2.0 * static_cast<double>(kappa2) + 1.0) / nn,
             kPi * (2.0 * nn + 2.0 * static_cast<double>(kappa1) - 1.0) / nn};
    Arc arcK{kTwoPi * static_cast<double>(kappa1) / nn,
             kTwoPi * static_cast<double>(kappa2) / nn};
    return {arcJ, arcK};
}

/// Arc containing the nodes of clusters kappa1..kappa2 themselves:
/// cluster kappa holds angles in (pi(2 kappa - 1)/n, pi(2 kappa + 1)/n].
inline Arc cluster_arc(Index kappa1, Index kappa2, Index n) {
    const double nn = static_cast<double>(n);
    return {kPi * (2.0 * static_cast<double>(kappa1) - 1.0) / nn,
            kPi * (2.0 * static_cast<double>(kappa2) + 1.0) / nn};
}

/// Arc containing the roots of unity outside the range kappa1..kappa2.
inline Arc root_arc_complement(Index kappa1, Index kappa2, Index n) {
    if (kappa1 == 1 && kappa2 == n)
        throw std::invalid_argument("root_arc_complement: range covers all clusters");
    const double nn = static_cast<double>(n);
    return {kTwoPi * static_cast<double>(kappa2 + 1) / nn,
            kTwoPi * static_cast<double>(n + kappa1 - 1) / nn};
}

/// Arc containing the roots of unity inside the range kappa1..kappa2.
inline Arc root_arc(Index kappa1, Index kappa2, Index n) {
    const double nn = static_cast<double>(n);
    return {kTwoPi * static_cast<double>(kappa1) / nn,
            kTwoPi * static_cast<double>(kappa2) / nn};
}

/// Cross-ratio eta and Zolotarev rate mu for two disjoint arcs:
/// Z_k(A_J, A_K) <= 4 mu^{-2k} with mu = exp(pi^2 / (2 log(16 eta))).
inline std::pair<double, double> zolotarev_eta_mu(const Arc& arcJ, const Arc& arcK) {
    if (detail::arcs_overlap(arcJ, arcK))
        throw std::invalid_argument("zolotarev_eta_mu: arcs overlap");
    const double t1 = arcJ.theta_lo, t2 = arcJ.theta_hi;
    const double r1 = arcK.theta_lo, r2 = arcK.theta_hi;
    const double num = std::abs(std::sin((r1 - t1) / 2.0) * std::sin((r2 - t2) / 2.0));
    const double den = std::abs(std::sin((r2 - t1) / 2.0) * std::sin((r1 - t2) / 2.0));
    if (den == 0.0)
        throw std::invalid_argument("zolotarev_eta_mu: arcs touch");
    double eta = num / den;
    if (eta < 1.0) eta = 1.0;  // guard rounding; the cross-ratio is >= 1
    const double mu = std::exp(kPi * kPi / (2.0 * std::log(16.0 * eta)));
    return {eta, mu};
}

/// Off-diagonal rank bound: k = ceil( 2 log(4/eps) log(4n) / pi^2 ).
inline Index rank_bound(double epsilon, Index n) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("rank_bound: epsilon must lie in (0,1)");
    if (n < 1) throw std::invalid_argument("rank_bound: n must be positive");
    const double v = 2.0 * std::log(4.0 / epsilon) * std::log(4.0 * static_cast<double>(n)) /
                     (kPi * kPi);
    return static_cast<Index>(std::ceil(v));
}

/// Shift count needed so that 4 mu^{-2k} <= eps.
inline Index shift_count_for(double mu, double epsilon) {
    const double k = std::log(4.0 / epsilon) / (2.0 * std::log(mu));
    return std::max<Index>(1, static_cast<Index>(std::ceil(k)));
}

}  // namespace inudft

#endif  // INUDFT_ARCS_HPP
