#ifndef INUDFT_URV_HPP
#define INUDFT_URV_HPP

#include <string>
#include <vector>

#include <Eigen/Householder>
#include <Eigen/QR>

#include "inudft/hss.hpp"
#include "inudft/types.hpp"

namespace inudft {

/// Unitary factor of a QR decomposition held as the compact Householder
/// reflector sequence; never expanded to a dense matrix.
class CompactQ {
public:
    CompactQ() = default;

    /// QR of A; R is retrievable via r_factor(), Q acts on vectors of
    /// length A.rows().
    explicit CompactQ(const CMatrix& A) : rows_(A.rows()), cols_(A.cols()) {
        Eigen::HouseholderQR<CMatrix> qr(A);
        packed_ = qr.matrixQR();
        // conjugated coefficients make the stored sequence equal Q itself
        tau_ = qr.hCoeffs().conjugate();
    }

    Index rows() const { return rows_; }
    Index reflectors() const { return std::min(rows_, cols_); }

    /// Upper-trapezoidal factor (min(rows, cols) x cols).
    CMatrix r_factor() const {
        CMatrix R = packed_.topRows(reflectors());
        R = R.triangularView<Eigen::Upper>();
        return R;
    }

    CMatrix apply_left(const CMatrix& B, bool adjoint) const {
        CMatrix out = B;
        if (reflectors() == 0) return out;
        auto hseq = Eigen::HouseholderSequence<CMatrix, CVector>(packed_, tau_);
        hseq.setLength(reflectors());
        if (adjoint)
            out.applyOnTheLeft(hseq.adjoint());
        else
            out.applyOnTheLeft(hseq);
        return out;
    }

    CMatrix apply_right(const CMatrix& B, bool adjoint) const {
        CMatrix out = B;
        if (reflectors() == 0) return out;
        auto hseq = Eigen::HouseholderSequence<CMatrix, CVector>(packed_, tau_);
        hseq.setLength(reflectors());
        if (adjoint)
            out.applyOnTheRight(hseq.adjoint());
        else
            out.applyOnTheRight(hseq);
        return out;
    }

    const CMatrix& packed() const { return packed_; }
    const CVector& tau() const { return tau_; }
    void set_packed(CMatrix packed, CVector tau, Index rows, Index cols) {
        packed_ = std::move(packed);
        tau_ = std::move(tau);
        rows_ = rows;
        cols_ = cols;
    }

private:
    CMatrix packed_;
    CVector tau_;
    Index rows_ = 0;
    Index cols_ = 0;
};

/// Per-node blocks of the URV factorization. Unitaries are reflector
/// sequences; everything a solve needs (including the sibling and
/// translation generators) is copied in, so the factorization is
/// self-contained and reusable across right-hand sides.
struct UrvNode {
    Index label = 0;
    Index left = -1, right = -1, parent = -1;
    bool leaf = false;
    Index row_begin = 0, row_end = 0;  // leaf: rows of the right-hand side
    Index col_begin = 0, col_end = 0;  // leaf: columns of the solution
    Index n_t = 0;      // columns of this node's working block
    Index m_t = 0;      // rows entering this node
    Index mt_red = 0;   // rows after size reduction
    Index ku = 0, kv = 0;
    bool has_omega = false;
    CompactQ omega;  // size reduction QR of [U_t D_t]
    CompactQ pq;     // QR of V_t (reversed columns give P_t)
    CompactQ qt;     // partial triangularization QR
    CMatrix D11;     // (n_t - kv) x (n_t - kv) upper triangular
    CMatrix D12;     // (n_t - kv) x kv
    CMatrix U1;      // (n_t - kv) x ku
    CMatrix Vbar;    // kv x kv antitriangular
    // copied from the HSS matrix for the solve
    CMatrix Blr, Brl;  // non-leaf
    CMatrix Rl, Rr;    // non-leaf, absent at root
};

struct UrvFactorization {
    std::vector<UrvNode> nodes;  // same indexing as the HSS tree
    Index m = 0, n = 0;
    double srf = 6.0;
    long long flops = 0;  // coarse factorization operation count

    const UrvNode& root() const { return nodes[0]; }
};

/// Per-solve buffers; one instance per concurrent solve.
struct SolveWorkspace {
    std::vector<CMatrix> c1;
};

namespace detail {

/// Reverse the rows of a matrix (the J factor of the reversed QR).
inline CMatrix reverse_rows(const CMatrix& A) { return A.colwise().reverse(); }

/// Shared triangularization steps for a leaf or merged parent block.
/// Consumes (D, U, V) and fills the node; returns (D22, U2) for the parent.
inline std::pair<CMatrix, CMatrix> urv_process_node(UrvNode& nd, const CMatrix& D,
                                                    const CMatrix& U, const CMatrix& V,
                                                    double srf, long long& flops) {
    const Index m_t = D.rows();
    const Index n_t = D.cols();
    const Index ku = U.cols();
    const Index kv = V.cols();
    nd.m_t = m_t;
    nd.n_t = n_t;
    nd.ku = ku;
    nd.kv = kv;

    // size reduction: QR of [U D] when the block is much taller than wide
    CMatrix Ut, Dt;
    Index mt = m_t;
    nd.has_omega = m_t >= static_cast<Index>(srf * static_cast<double>(ku + n_t));
    if (nd.has_omega) {
        CMatrix UD(m_t, ku + n_t);
        UD.leftCols(ku) = U;
        UD.rightCols(n_t) = D;
        nd.omega = CompactQ(UD);
        mt = std::min(m_t, ku + n_t);
        CMatrix R = nd.omega.r_factor();
        Ut = R.leftCols(ku);
        Dt = R.rightCols(n_t);
        flops += 8LL * m_t * (ku + n_t) * (ku + n_t);
    } else {
        Ut = U;
        Dt = D;
    }
    nd.mt_red = mt;

    if (mt < n_t - kv)
        throw NumericalError("urv_factor: breakdown at node " + std::to_string(nd.label) +
                             " (block of " + std::to_string(mt) + " rows, " +
                             std::to_string(n_t) + " columns, basis width " +
                             std::to_string(kv) + ")");

    // reversed QR of V: V = P [0; Vbar], P = Q J, Vbar antitriangular
    CMatrix Dhat;
    if (kv > 0) {
        nd.pq = CompactQ(V);
        nd.Vbar = reverse_rows(CMatrix(nd.pq.r_factor().topRows(kv)));
        Dhat = nd.pq.apply_right(Dt, false).rowwise().reverse();
        flops += 8LL * n_t * kv * kv + 8LL * mt * n_t * kv;
    } else {
        nd.Vbar.resize(0, 0);
        Dhat = Dt;
    }

    // partial triangularization of the leading n_t - kv columns
    const Index nk = n_t - kv;
    nd.qt = CompactQ(CMatrix(Dhat.leftCols(nk)));
    nd.D11 = nd.qt.r_factor().topRows(std::min(mt, nk));
    if (nd.D11.rows() < nk)
        throw NumericalError("urv_factor: breakdown at node " + std::to_string(nd.label));
    for (Index i = 0; i < nk; ++i)
        if (nd.D11(i, i) == Complex(0.0, 0.0))
            throw NumericalError("urv_factor: rank deficiency at node " +
                                 std::to_string(nd.label));
    flops += 8LL * mt * nk * nk;

    CMatrix rest = nd.qt.apply_left(CMatrix(Dhat.rightCols(kv)), true);
    CMatrix Ub = nd.qt.apply_left(Ut, true);
    flops += 8LL * mt * nk * (kv + ku);
    nd.D12 = rest.topRows(nk);
    nd.U1 = Ub.topRows(nk);
    return {rest.bottomRows(mt - nk), Ub.bottomRows(mt - nk)};
}

}  // namespace detail

/// URV factorization of a rectangular HSS matrix: a bottom-up traversal
/// that triangularizes each block with unitary row/column operations and
/// merges the leftover rows into the parent. srf is the size-reduction
/// cutoff (rows >= srf * columns of [U_t D_t] triggers the reduction).
inline UrvFactorization urv_factor(const HssMatrix& H, double srf = 6.0) {
    UrvFactorization F;
    F.m = H.m;
    F.n = H.n;
    F.srf = srf;
    F.nodes.resize(static_cast<size_t>(H.num_nodes()));

    // per-node leftovers passed to the parent
    std::vector<CMatrix> D22(static_cast<size_t>(H.num_nodes()));
    std::vector<CMatrix> U2(static_cast<size_t>(H.num_nodes()));

    const auto order = H.tree.postorder();
    for (Index t : order) {
        const HssTreeNode& hn = H.node(t);
        UrvNode& nd = F.nodes[static_cast<size_t>(t)];
        nd.label = hn.label;
        nd.left = hn.left;
        nd.right = hn.right;
        nd.parent = hn.parent;
        nd.leaf = hn.is_leaf();
        nd.row_begin = hn.row_begin;
        nd.row_end = hn.row_end;
        nd.col_begin = hn.col_begin;
        nd.col_end = hn.col_end;
        const bool is_root = hn.parent < 0;

        CMatrix D, U, V;
        if (hn.is_leaf()) {
            D = H.D[static_cast<size_t>(t)];
            U = H.U[static_cast<size_t>(t)];
            V = H.V[static_cast<size_t>(t)];
        } else {
            const Index l = hn.left, r = hn.right;
            nd.Blr = H.Blr[static_cast<size_t>(t)];
            nd.Brl = H.Brl[static_cast<size_t>(t)];
            const UrvNode& ln = F.nodes[static_cast<size_t>(l)];
            const UrvNode& rn = F.nodes[static_cast<size_t>(r)];
            const Index ml = D22[static_cast<size_t>(l)].rows();
            const Index mr = D22[static_cast<size_t>(r)].rows();
            D.resize(ml + mr, ln.kv + rn.kv);
            D.topLeftCorner(ml, ln.kv) = D22[static_cast<size_t>(l)];
            D.topRightCorner(ml, rn.kv) =
                U2[static_cast<size_t>(l)] * nd.Blr * rn.Vbar.adjoint();
            D.bottomLeftCorner(mr, ln.kv) =
                U2[static_cast<size_t>(r)] * nd.Brl * ln.Vbar.adjoint();
            D.bottomRightCorner(mr, rn.kv) = D22[static_cast<size_t>(r)];
            if (!is_root) {
                nd.Rl = H.Rl[static_cast<size_t>(t)];
                nd.Rr = H.Rr[static_cast<size_t>(t)];
                U.resize(ml + mr, H.Rl[static_cast<size_t>(t)].cols());
                U.topRows(ml) = U2[static_cast<size_t>(l)] * H.Rl[static_cast<size_t>(t)];
                U.bottomRows(mr) = U2[static_cast<size_t>(r)] * H.Rr[static_cast<size_t>(t)];
                V.resize(ln.kv + rn.kv, H.Wl[static_cast<size_t>(t)].cols());
                V.topRows(ln.kv) = ln.Vbar * H.Wl[static_cast<size_t>(t)];
                V.bottomRows(rn.kv) = rn.Vbar * H.Wr[static_cast<size_t>(t)];
            }
            D22[static_cast<size_t>(l)].resize(0, 0);
            U2[static_cast<size_t>(l)].resize(0, 0);
            D22[static_cast<size_t>(r)].resize(0, 0);
            U2[static_cast<size_t>(r)].resize(0, 0);
        }

        if (is_root) {
            nd.m_t = D.rows();
            nd.n_t = D.cols();
            nd.mt_red = nd.m_t;
            nd.ku = 0;
            nd.kv = 0;
            if (nd.m_t < nd.n_t)
                throw NumericalError(
                    "urv_factor: underdetermined root block at node " +
                    std::to_string(nd.label) + " (" + std::to_string(nd.m_t) + " x " +
                    std::to_string(nd.n_t) + ")");
            nd.qt = CompactQ(D);
            nd.D11 = nd.qt.r_factor().topRows(nd.n_t);
            for (Index i = 0; i < nd.n_t; ++i)
                if (nd.D11(i, i) == Complex(0.0, 0.0))
                    throw NumericalError("urv_factor: rank deficiency at root");
            F.flops += 8LL * nd.m_t * nd.n_t * nd.n_t;
        } else {
            auto leftover = detail::urv_process_node(nd, D, U, V, srf, F.flops);
            D22[static_cast<size_t>(t)] = std::move(leftover.first);
            U2[static_cast<size_t>(t)] = std::move(leftover.second);
        }
    }
    return F;
}

namespace detail {

inline CMatrix urv_solve_part1(const UrvFactorization& F, SolveWorkspace& ws, Index t,
                               const CMatrix& B) {
    const UrvNode& nd = F.nodes[static_cast<size_t>(t)];
    CMatrix b;
    if (nd.leaf) {
        b = B.middleRows(nd.row_begin, nd.row_end - nd.row_begin);
    } else {
        CMatrix cl = urv_solve_part1(F, ws, nd.left, B);
        CMatrix cr = urv_solve_part1(F, ws, nd.right, B);
        b.resize(cl.rows() + cr.rows(), B.cols());
        b.topRows(cl.rows()) = cl;
        b.bottomRows(cr.rows()) = cr;
    }
    if (nd.parent < 0) {
        CMatrix c = nd.qt.apply_left(b, true);
        ws.c1[static_cast<size_t>(t)] = c.topRows(nd.n_t);
        return {};
    }
    if (nd.has_omega) b = nd.omega.apply_left(b, true).topRows(nd.mt_red).eval();
    CMatrix c = nd.qt.apply_left(b, true);
    const Index nk = nd.n_t - nd.kv;
    ws.c1[static_cast<size_t>(t)] = c.topRows(nk);
    return c.middleRows(nk, nd.mt_red - nk);
}

inline void urv_solve_part2(const UrvFactorization& F, SolveWorkspace& ws, Index t,
                            const CMatrix& w2, const CMatrix& z, CMatrix& X) {
    const UrvNode& nd = F.nodes[static_cast<size_t>(t)];
    CMatrix y;
    if (nd.parent < 0) {
        y = nd.D11.triangularView<Eigen::Upper>().solve(ws.c1[static_cast<size_t>(t)]);
    } else {
        CMatrix rhs = ws.c1[static_cast<size_t>(t)];
        if (nd.kv > 0) rhs -= nd.D12 * w2;
        if (nd.ku > 0) rhs -= nd.U1 * z;
        CMatrix w1 = nd.D11.triangularView<Eigen::Upper>().solve(rhs);
        CMatrix v(nd.n_t, w1.cols());
        v.topRows(w1.rows()) = w1;
        v.bottomRows(nd.kv) = w2;
        if (nd.kv > 0)
            y = nd.pq.apply_left(reverse_rows(v), false);
        else
            y = v;
    }
    if (nd.leaf) {
        X.middleRows(nd.col_begin, nd.col_end - nd.col_begin) = y;
        return;
    }
    const UrvNode& ln = F.nodes[static_cast<size_t>(nd.left)];
    const UrvNode& rn = F.nodes[static_cast<size_t>(nd.right)];
    CMatrix wl2 = y.topRows(ln.kv);
    CMatrix wr2 = y.bottomRows(rn.kv);
    CMatrix zl = nd.Blr * (rn.Vbar.adjoint() * wr2);
    CMatrix zr = nd.Brl * (ln.Vbar.adjoint() * wl2);
    if (nd.parent >= 0) {
        zl += nd.Rl * z;
        zr += nd.Rr * z;
    }
    urv_solve_part2(F, ws, nd.left, wl2, zl, X);
    urv_solve_part2(F, ws, nd.right, wr2, zr, X);
}

}  // namespace detail

/// Least-squares solve H y = B per column from the URV factorization.
/// O(mk) per right-hand side; safe to call concurrently on the same
/// factorization (all mutable state lives in the local workspace).
/// Columns are pushed through the triangular stages one at a time so a
/// column's result never depends on which other columns ride along.
inline CMatrix urv_solve(const UrvFactorization& F, const CMatrix& B) {
    if (B.rows() != F.m) throw std::invalid_argument("urv_solve: dimension mismatch");
    CMatrix X(F.n, B.cols());
    SolveWorkspace ws;
    ws.c1.resize(F.nodes.size());
    CMatrix col(F.m, 1), xcol(F.n, 1);
    for (Index c = 0; c < B.cols(); ++c) {
        col = B.middleCols(c, 1);
        detail::urv_solve_part1(F, ws, 0, col);
        detail::urv_solve_part2(F, ws, 0, CMatrix(0, 1), CMatrix(0, 1), xcol);
        X.middleCols(c, 1) = xcol;
    }
    return X;
}

}  // namespace inudft

#endif  // INUDFT_URV_HPP
