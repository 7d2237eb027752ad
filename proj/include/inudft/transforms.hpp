#ifndef INUDFT_TRANSFORMS_HPP
#define INUDFT_TRANSFORMS_HPP

#include <vector>

#include "inudft/fft.hpp"
#include "inudft/nodes.hpp"
#include "inudft/types.hpp"

namespace inudft {

enum class FMode { F, FAdjoint };

/// Multiply by the modulated DFT matrix F (or F*), where
/// F_{jk} = omega^{j(2k-1)}/sqrt(n), omega = e^{i pi/n}, 1-based j,k.
/// F is unitary and diagonalizes the circular shift-down matrix.
/// Applied with one FFT plus diagonal phase modulations per column.
inline CMatrix apply_F(const CMatrix& y, FMode mode) {
    const Index n = y.rows();
    if (n == 0) throw std::invalid_argument("apply_F: empty input");
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    CMatrix out(n, y.cols());
    for (Index c = 0; c < y.cols(); ++c) {
        if (mode == FMode::F) {
            // (Fy)_{j} = omega^{j}/sqrt(n) * sum_k y_k e^{2 pi i jk/n}, j = 1..n
            CVector z = fft_any(y.col(c), FftDirection::Inverse) * static_cast<double>(n);
            for (Index j = 0; j < n; ++j) {
                const Index jj = (j + 1) % n;
                out(j, c) = std::polar(scale, kPi * static_cast<double>(j + 1) /
                                                  static_cast<double>(n)) *
                            z[jj];
            }
        } else {
            // (F*y)_{k} = e^{-2 pi i k/n}/sqrt(n) * DFT(omega^{j} y_j)[k], k = 1..n
            CVector t(n);
            for (Index j = 0; j < n; ++j)
                t[j] = std::polar(1.0, kPi * static_cast<double>(j + 1) /
                                           static_cast<double>(n)) *
                       y(j, c);
            CVector z = fft_any(t, FftDirection::Forward);
            for (Index k = 0; k < n; ++k) {
                const Index kk = (k + 1) % n;
                out(k, c) = std::polar(scale, -kTwoPi * static_cast<double>(k + 1) /
                                                  static_cast<double>(n)) *
                            z[kk];
            }
        }
    }
    return out;
}

/// Dense forward type-II NUDFT: B(j,:) = sum_k gamma_j^k X(k,:) with
/// frequencies 0..n-1 and gamma_j = e^{-2 pi i p_j}. O(mnr) reference code.
inline CMatrix nudft_type2_apply(const NodeSet& nodes, const CMatrix& x) {
    const Index m = nodes.m;
    const Index n = nodes.n;
    if (x.rows() != n)
        throw std::invalid_argument("nudft_type2_apply: coefficient count mismatch");
    CMatrix b = CMatrix::Zero(m, x.cols());
    for (Index j = 0; j < m; ++j) {
        const Complex g = nodes.gamma[j];
        Complex pw(1.0, 0.0);
        for (Index k = 0; k < n; ++k) {
            b.row(j) += pw * x.row(k);
            pw *= g;
        }
    }
    return b;
}

/// Dense type-I sums t_q = sum_j c_j gamma_j^q for q in [q_lo, q_hi].
inline CVector nudft_type1_sums(const NodeSet& nodes, const CVector& c, long q_lo, long q_hi) {
    if (c.size() != nodes.m)
        throw std::invalid_argument("nudft_type1_sums: strength count mismatch");
    if (q_hi < q_lo) throw std::invalid_argument("nudft_type1_sums: empty range");
    const Index len = static_cast<Index>(q_hi - q_lo + 1);
    CVector t = CVector::Zero(len);
    for (Index j = 0; j < nodes.m; ++j) {
        Complex pw = unit_phase_pow(nodes.p[j], static_cast<double>(q_lo));
        const Complex g = nodes.gamma[j];
        for (Index q = 0; q < len; ++q) {
            t[q] += c[j] * pw;
            pw *= g;
        }
    }
    return t;
}

/// Symbol of the Hermitian Toeplitz matrix V*V: entries t_q for |q| < n,
/// (V*V)_{kk'} = t_{k'-k} = sum_j gamma_j^{k'-k}.
struct ToeplitzSymbol {
    Index n = 0;
    CVector t;  // t[q + n - 1] holds t_q, q = -(n-1)..(n-1)

    Complex at(long q) const { return t[static_cast<Index>(q) + n - 1]; }
};

inline ToeplitzSymbol toeplitz_symbol(const NodeSet& nodes) {
    ToeplitzSymbol sym;
    sym.n = nodes.n;
    sym.t.resize(2 * nodes.n - 1);
    const CVector ones = CVector::Ones(nodes.m);
    CVector upper = nudft_type1_sums(nodes, ones, 0, nodes.n - 1);
    for (Index q = 0; q < nodes.n; ++q) {
        sym.t[nodes.n - 1 + q] = upper[q];
        sym.t[nodes.n - 1 - q] = std::conj(upper[q]);  // Hermitian symbol
    }
    return sym;
}

/// Applies (V*V)x through a 2n circulant embedding, one padded
/// forward/inverse FFT pair per apply. The transform of the embedded
/// column is cached so repeated applies reuse it.
class ToeplitzOperator {
public:
    explicit ToeplitzOperator(const ToeplitzSymbol& sym) : n_(sym.n) {
        const Index nfft = 2 * n_;
        CVector col = CVector::Zero(nfft);
        // circulant first column: col[(k-k') mod 2n] must equal t_{k'-k}
        col[0] = sym.at(0);
        for (Index d = 1; d < n_; ++d) {
            col[d] = sym.at(-d);
            col[nfft - d] = sym.at(d);
        }
        col_hat_ = fft_any(col, FftDirection::Forward);
    }

    CVector apply(const CVector& x) const {
        if (x.size() != n_) throw std::invalid_argument("ToeplitzOperator: size mismatch");
        CVector xp = CVector::Zero(2 * n_);
        xp.head(n_) = x;
        CVector xh = fft_any(xp, FftDirection::Forward);
        xh.array() *= col_hat_.array();
        CVector y = fft_any(xh, FftDirection::Inverse);
        return y.head(n_);
    }

private:
    Index n_;
    CVector col_hat_;
};

inline CVector toeplitz_normal_apply(const ToeplitzSymbol& sym, const CVector& x) {
    return ToeplitzOperator(sym).apply(x);
}

}  // namespace inudft

#endif  // INUDFT_TRANSFORMS_HPP
