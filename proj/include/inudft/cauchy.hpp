#ifndef INUDFT_CAUCHY_HPP
#define INUDFT_CAUCHY_HPP

#include <vector>

#include "inudft/nodes.hpp"
#include "inudft/types.hpp"

namespace inudft {

/// Entry generator for the transformed matrix C = V F*, which is
/// Cauchy-like:  C_{jk} = u_j conj(w_k) / (gamma_j - omega^{2k})
/// with u_j = gamma_j^n - 1 and w_k = omega^{-k}/sqrt(n) (1-based k).
/// Rows whose node coincides with a root of unity to within 1e-14 are
/// produced by direct evaluation of (row of V) * F*, which reduces to a
/// Dirichlet-kernel closed form.
class CauchyGenerator {
public:
    explicit CauchyGenerator(const NodeSet& nodes) : nodes_(&nodes) {
        const Index n = nodes.n;
        lambda_.resize(n);
        w_.resize(n);
        const double sqrtn = std::sqrt(static_cast<double>(n));
        for (Index k = 0; k < n; ++k) {
            lambda_[k] = std::polar(1.0, kTwoPi * static_cast<double>(k + 1) /
                                             static_cast<double>(n));
            w_[k] = std::polar(1.0 / sqrtn, -kPi * static_cast<double>(k + 1) /
                                                static_cast<double>(n));
        }
    }

    const NodeSet& nodes() const { return *nodes_; }
    const CVector& lambda() const { return lambda_; }
    const CVector& w() const { return w_; }

    Complex entry(Index row, Index col) const {
        const NodeSet& ns = *nodes_;
        if (ns.degenerate_home[row] != 0) return degenerate_entry(row, col);
        return ns.u[row] * std::conj(w_[col]) / (ns.gamma[row] - lambda_[col]);
    }

    CMatrix block(const std::vector<Index>& rows, const std::vector<Index>& cols) const {
        CMatrix b(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t j = 0; j < cols.size(); ++j)
                b(static_cast<Index>(i), static_cast<Index>(j)) = entry(rows[i], cols[j]);
        return b;
    }

    /// Contiguous block rows [r0, r1) x columns [c0, c1).
    CMatrix block_range(Index r0, Index r1, Index c0, Index c1) const {
        CMatrix b(r1 - r0, c1 - c0);
        for (Index i = r0; i < r1; ++i)
            for (Index j = c0; j < c1; ++j) b(i - r0, j - c0) = entry(i, j);
        return b;
    }

    CMatrix dense() const { return block_range(0, nodes_->m, 0, nodes_->n); }

private:
    /// Row of V times F*, evaluated through the geometric-sum identity
    ///   C_{jk} = omega^{-k}/sqrt(n) * sum_{q=0}^{n-1} zeta^q,
    ///   zeta = gamma_j omega^{-2k} = e^{i phi},
    /// with the Dirichlet form sum = e^{i(n-1)phi/2} sin(n phi/2)/sin(phi/2).
    /// Stable for nodes arbitrarily close to (or exactly on) a root of unity.
    Complex degenerate_entry(Index row, Index col) const {
        const NodeSet& ns = *nodes_;
        const Index n = ns.n;
        // r = (n p_j + k) mod n reduced to (-n/2, n/2]; phi = -2 pi r / n
        const double hi = static_cast<double>(n) * ns.p[row];
        const double lo = std::fma(static_cast<double>(n), ns.p[row], -hi);
        double r = hi + static_cast<double>(col + 1);
        r = r - static_cast<double>(n) * std::round(r / static_cast<double>(n));
        r += lo;
        if (r > 0.5 * static_cast<double>(n)) r -= static_cast<double>(n);
        if (r <= -0.5 * static_cast<double>(n)) r += static_cast<double>(n);

        const double sd = std::sin(kPi * r / static_cast<double>(n));
        Complex dirichlet;
        if (sd == 0.0) {
            dirichlet = Complex(static_cast<double>(n), 0.0);
        } else {
            const double ratio = std::sin(kPi * r) / sd;
            const double phase = -kPi * static_cast<double>(n - 1) * r / static_cast<double>(n);
            dirichlet = ratio * Complex(std::cos(phase), std::sin(phase));
        }
        const double sqrtn = std::sqrt(static_cast<double>(n));
        return std::polar(1.0 / sqrtn, -kPi * static_cast<double>(col + 1) /
                                           static_cast<double>(n)) *
               dirichlet;
    }

    const NodeSet* nodes_;
    CVector lambda_;
    CVector w_;
};

}  // namespace inudft

#endif  // INUDFT_CAUCHY_HPP
