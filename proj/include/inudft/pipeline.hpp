#ifndef INUDFT_PIPELINE_HPP
#define INUDFT_PIPELINE_HPP

#include "inudft/hss.hpp"
#include "inudft/transforms.hpp"
#include "inudft/urv.hpp"

namespace inudft {

/// Reusable factorization of the inverse type-II NUDFT problem:
/// transform to Cauchy-like form, compress to HSS, URV-factor once,
/// then solve arbitrarily many right-hand sides.
struct InudftFactorization {
    NodeSet nodes;
    HssMatrix H;
    UrvFactorization urv;
    double epsilon = 0.0;
    CVector w;  // F v with v = (0,...,0,1)

    Index m() const { return nodes.m; }
    Index n() const { return nodes.n; }
};

inline constexpr Index kSolveBlockCols = 128;

inline InudftFactorization inudft_factor(const RVector& p_raw, Index n, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("inudft_factor: epsilon must lie in (0,1)");
    if (p_raw.size() < n)
        throw std::invalid_argument("inudft_factor: underdetermined system (m < n)");
    InudftFactorization fact;
    fact.epsilon = epsilon;
    fact.nodes = make_node_set(p_raw, n);
    CMatrix v = CMatrix::Zero(n, 1);
    v(n - 1, 0) = Complex(1.0, 0.0);
    fact.w = apply_F(v, FMode::F).col(0);
    fact.H = build_hss(fact.nodes, epsilon);
    fact.urv = urv_factor(fact.H);
    return fact;
}

/// Least-squares solve of V X = B per column. B is given in the original
/// input row order; the cluster permutation is applied internally. Columns
/// are processed in blocks so the triangular stage runs on matrices.
inline CMatrix inudft_solve(const InudftFactorization& fact, const CMatrix& b_raw) {
    if (b_raw.rows() != fact.m())
        throw std::invalid_argument("inudft_solve: right-hand side has wrong row count");
    const CMatrix b = fact.nodes.gather_rows(b_raw);
    CMatrix x(fact.n(), b.cols());
    for (Index c0 = 0; c0 < b.cols(); c0 += kSolveBlockCols) {
        const Index nc = std::min(kSolveBlockCols, b.cols() - c0);
        CMatrix y = urv_solve(fact.urv, b.middleCols(c0, nc));
        x.middleCols(c0, nc) = apply_F(y, FMode::FAdjoint);
    }
    return x;
}

inline CMatrix inudft_one_shot(const RVector& p_raw, Index n, const CMatrix& b_raw,
                               double epsilon) {
    return inudft_solve(inudft_factor(p_raw, n, epsilon), b_raw);
}

}  // namespace inudft

#endif  // INUDFT_PIPELINE_HPP
