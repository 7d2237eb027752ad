#ifndef INUDFT_FADI_HPP
#define INUDFT_FADI_HPP

#include <string>
#include <vector>

#include "inudft/adi_shifts.hpp"
#include "inudft/types.hpp"

namespace inudft {

/// Diagonal data of a Cauchy-like block:
///   A(j,k) = u_j conj(w_k) / (gamma_j - lambda_k).
/// The lambda side (lambda_diag, w_sub) may be left empty when only the
/// left factor is needed; the gamma side likewise for the right factor.
struct CauchyBlockSpec {
    CVector gamma_diag;
    CVector lambda_diag;
    CVector u_sub;
    CVector w_sub;
};

/// Low-rank factorization A ~= Z W*. W is empty in left-only mode.
struct LowRankFactor {
    CMatrix Z;
    CMatrix W;
};

namespace detail {

inline void check_shift_clear(const CVector& diag, const std::vector<Complex>& shifts,
                              const char* side) {
    for (size_t j = 0; j < shifts.size(); ++j)
        for (Index i = 0; i < diag.size(); ++i)
            if (std::abs(diag[i] - shifts[j]) < 1e-14)
                throw NumericalError(std::string("fadi: shift ") + std::to_string(j) +
                                     " collides with " + side + " diagonal entry " +
                                     std::to_string(i));
}

}  // namespace detail

/// Left factor of the fADI recurrence. The running column follows
///   z_1 = (Gamma - beta_1 I)^{-1} u,
///   z_{j+1} = (Gamma - alpha_j I)(Gamma - beta_{j+1} I)^{-1} z_j,
/// and column j of Z is (beta_j - alpha_j) z_j, so that Z W* telescopes
/// to the ADI iterate exactly (the scale belongs to each rank-1 term,
/// not to the recurrence). All shifted operations are entrywise on the
/// diagonal data, so the cost is O(p k) and the lambda side of the block
/// is never touched.
inline CMatrix fadi_left_only(const CauchyBlockSpec& spec, const ShiftSet& shifts) {
    const Index p = spec.gamma_diag.size();
    const Index k = shifts.count();
    detail::check_shift_clear(spec.gamma_diag, shifts.beta, "gamma");
    CMatrix Z(p, k);
    if (k == 0) return Z;
    Eigen::ArrayXcd z = spec.u_sub.array() / (spec.gamma_diag.array() - shifts.beta[0]);
    Z.col(0) = (shifts.beta[0] - shifts.alpha[0]) * z.matrix();
    for (Index j = 1; j < k; ++j) {
        z *= (spec.gamma_diag.array() - shifts.alpha[static_cast<size_t>(j - 1)]) /
             (spec.gamma_diag.array() - shifts.beta[static_cast<size_t>(j)]);
        Z.col(j) = (shifts.beta[static_cast<size_t>(j)] - shifts.alpha[static_cast<size_t>(j)]) *
                   z.matrix();
    }
    return Z;
}

/// Right factor of the fADI recurrence:
///   W_1 = (Lambda* - conj(alpha_1) I)^{-1} w
///   W_{j+1} = (Lambda* - conj(beta_j) I)(Lambda* - conj(alpha_{j+1}) I)^{-1} W_j
inline CMatrix fadi_right_only(const CauchyBlockSpec& spec, const ShiftSet& shifts) {
    const Index q = spec.lambda_diag.size();
    const Index k = shifts.count();
    detail::check_shift_clear(spec.lambda_diag, shifts.alpha, "lambda");
    CMatrix W(q, k);
    if (k == 0) return W;
    const Eigen::ArrayXcd lam_conj = spec.lambda_diag.conjugate().array();
    W.col(0) = (spec.w_sub.array() / (lam_conj - std::conj(shifts.alpha[0]))).matrix();
    for (Index j = 1; j < k; ++j) {
        W.col(j) = ((lam_conj - std::conj(shifts.beta[static_cast<size_t>(j - 1)])) /
                    (lam_conj - std::conj(shifts.alpha[static_cast<size_t>(j)])) *
                    W.col(j - 1).array())
                       .matrix();
    }
    return W;
}

/// Factored ADI for a Cauchy-like block: returns Z and W with
/// || A - Z W* ||_2 <= 4 mu^{-2k} || A ||_2 for Zolotarev shifts.
inline LowRankFactor fadi(const CauchyBlockSpec& spec, const ShiftSet& shifts) {
    LowRankFactor f;
    f.Z = fadi_left_only(spec, shifts);
    f.W = fadi_right_only(spec, shifts);
    return f;
}

}  // namespace inudft

#endif  // INUDFT_FADI_HPP
