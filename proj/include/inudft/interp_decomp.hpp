#ifndef INUDFT_INTERP_DECOMP_HPP
#define INUDFT_INTERP_DECOMP_HPP

#include <vector>

#include <Eigen/QR>

#include "inudft/types.hpp"

namespace inudft {

/// One-sided row interpolative decomposition: A ~= U A(S, :) for any A
/// whose rows lie in the row space captured by the input factor. U holds
/// the identity on the selected rows: U(S, :) = I exactly.
struct InterpolativeFactor {
    CMatrix U;                // p x r
    std::vector<Index> S;     // r selected row indices into 0..p-1

    Index rank() const { return static_cast<Index>(S.size()); }
};

/// Column-pivoted QR of Z^T selects the basis rows of Z:
///   Z = P [R_a^T; R_b^T] Q^T,  U = P [I_r; R_b^T R_a^{-T}].
/// The rank is truncated where the pivot magnitude falls below
/// eps_id times the first pivot.
inline InterpolativeFactor one_sided_id(const CMatrix& Z, double eps_id) {
    const Index p = Z.rows();
    const Index k = Z.cols();
    InterpolativeFactor f;
    if (p == 0 || k == 0) {
        f.U.resize(p, 0);
        return f;
    }

    Eigen::ColPivHouseholderQR<CMatrix> qr(Z.transpose());
    const CMatrix R = qr.matrixR().topRows(std::min(k, p)).template triangularView<Eigen::Upper>();
    const auto piv = qr.colsPermutation().indices();

    const double head = std::abs(R(0, 0));
    Index r = 0;
    const Index rmax = std::min(k, p);
    while (r < rmax && std::abs(R(r, r)) > eps_id * head && std::abs(R(r, r)) > 0.0) ++r;
    if (head == 0.0) r = 0;

    f.U = CMatrix::Zero(p, r);
    if (r == 0) return f;

    // T = R_a^{-1} R_b, so the interpolation block is [I_r; T^T]
    CMatrix T = R.topLeftCorner(r, r)
                    .template triangularView<Eigen::Upper>()
                    .solve(R.topRightCorner(r, p - r));
    f.S.resize(static_cast<size_t>(r));
    for (Index i = 0; i < r; ++i) {
        f.S[static_cast<size_t>(i)] = piv[i];
        f.U(piv[i], i) = Complex(1.0, 0.0);
    }
    for (Index i = r; i < p; ++i) f.U.row(piv[i]) = T.col(i - r).transpose();
    return f;
}

}  // namespace inudft

#endif  // INUDFT_INTERP_DECOMP_HPP
