#ifndef INUDFT_HSS_HPP
#define INUDFT_HSS_HPP

#include <functional>
#include <vector>

#include "inudft/arcs.hpp"
#include "inudft/cauchy.hpp"
#include "inudft/fadi.hpp"
#include "inudft/interp_decomp.hpp"
#include "inudft/nodes.hpp"
#include "inudft/types.hpp"

namespace inudft {

/// Binary tree over contiguous cluster ranges. Each vertex carries the
/// column range K_t (clusters double as columns of C) and the row slab
/// range J_t induced by the clusters. Vertices keep the conventional
/// heap labels (root 0, children 2t+1 and 2t+2) for diagnostics.
struct HssTreeNode {
    Index label = 0;
    Index parent = -1;
    Index left = -1;   // index into HssTree::nodes, -1 for leaves
    Index right = -1;
    Index kappa_lo = 1, kappa_hi = 0;  // 1-based inclusive cluster range
    Index row_begin = 0, row_end = 0;
    Index col_begin = 0, col_end = 0;

    bool is_leaf() const { return left < 0; }
    Index rows() const { return row_end - row_begin; }
    Index cols() const { return col_end - col_begin; }
};

struct HssTree {
    std::vector<HssTreeNode> nodes;  // node 0 is the root
    Index m = 0, n = 0;

    Index size() const { return static_cast<Index>(nodes.size()); }

    /// Children-before-parent ordering.
    std::vector<Index> postorder() const {
        std::vector<Index> out;
        out.reserve(nodes.size());
        std::function<void(Index)> rec = [&](Index t) {
            if (!nodes[static_cast<size_t>(t)].is_leaf()) {
                rec(nodes[static_cast<size_t>(t)].left);
                rec(nodes[static_cast<size_t>(t)].right);
            }
            out.push_back(t);
        };
        if (!nodes.empty()) rec(0);
        return out;
    }
};

/// Split the cluster range evenly until a leaf holds at most leaf_cols
/// clusters. Row slabs ride along with their clusters.
inline HssTree build_tree(const ClusterPartition& part, Index leaf_cols) {
    if (part.n < 1) throw std::invalid_argument("build_tree: empty partition");
    if (leaf_cols < 2) throw std::invalid_argument("build_tree: leaf_cols must be >= 2");
    HssTree tree;
    tree.n = part.n;
    tree.m = part.offsets.back();
    std::function<Index(Index, Index, Index, Index)> rec = [&](Index klo, Index khi,
                                                               Index label, Index parent) {
        const Index self = tree.size();
        tree.nodes.push_back({});
        HssTreeNode nd;
        nd.label = label;
        nd.parent = parent;
        nd.kappa_lo = klo;
        nd.kappa_hi = khi;
        nd.row_begin = part.slab_begin(klo);
        nd.row_end = part.slab_end(khi);
        nd.col_begin = klo - 1;
        nd.col_end = khi;
        const Index count = khi - klo + 1;
        if (count > leaf_cols) {
            const Index mid = klo + (count + 1) / 2 - 1;  // left child gets ceil(count/2)
            tree.nodes[static_cast<size_t>(self)] = nd;
            const Index l = rec(klo, mid, 2 * label + 1, self);
            const Index r = rec(mid + 1, khi, 2 * label + 2, self);
            tree.nodes[static_cast<size_t>(self)].left = l;
            tree.nodes[static_cast<size_t>(self)].right = r;
        } else {
            tree.nodes[static_cast<size_t>(self)] = nd;
        }
        return self;
    };
    rec(1, part.n, 0, -1);
    return tree;
}

/// Rectangular HSS matrix in generator form. Leaves hold D_t, U_t, V_t;
/// parents hold the translation generators R_{ct}, W_{ct} for their
/// children and the sibling blocks B between the children. Basis rows
/// and columns selected by the interpolative decompositions are kept as
/// global index lists, so every B block is also addressable as a list
/// of (row, column) positions of C.
struct HssMatrix {
    HssTree tree;
    Index m = 0, n = 0;
    std::vector<CMatrix> D;    // leaves
    std::vector<CMatrix> U;    // leaves
    std::vector<CMatrix> V;    // leaves
    std::vector<CMatrix> Rl, Rr;  // non-leaf, ku(child) x ku(t); empty at root
    std::vector<CMatrix> Wl, Wr;  // non-leaf, kv(child) x kv(t); empty at root
    std::vector<CMatrix> Blr, Brl;  // non-leaf: sibling blocks of the children
    std::vector<std::vector<Index>> Srow, Scol;  // global basis indices per node

    Index num_nodes() const { return tree.size(); }

    const HssTreeNode& node(Index t) const { return tree.nodes[static_cast<size_t>(t)]; }

    /// Row-basis width of node t.
    Index ku(Index t) const {
        return node(t).is_leaf() ? U[static_cast<size_t>(t)].cols()
                                 : Rl[static_cast<size_t>(t)].cols();
    }
    /// Column-basis width of node t.
    Index kv(Index t) const {
        return node(t).is_leaf() ? V[static_cast<size_t>(t)].cols()
                                 : Wl[static_cast<size_t>(t)].cols();
    }

    Index max_generator_cols() const {
        Index k = 0;
        for (Index t = 0; t < num_nodes(); ++t) {
            k = std::max(k, ku(t));
            k = std::max(k, kv(t));
        }
        return k;
    }

    void resize_storage() {
        const size_t nn = static_cast<size_t>(tree.size());
        D.resize(nn);
        U.resize(nn);
        V.resize(nn);
        Rl.resize(nn);
        Rr.resize(nn);
        Wl.resize(nn);
        Wr.resize(nn);
        Blr.resize(nn);
        Brl.resize(nn);
        Srow.resize(nn);
        Scol.resize(nn);
    }
};

namespace detail {

struct HssBuildContext {
    const CauchyGenerator* gen;
    double epsilon;
    Index n;
};

inline ShiftSet block_shifts(const Arc& arcJ, const Arc& arcK, double epsilon, Index cap) {
    const auto [eta, mu] = zolotarev_eta_mu(arcJ, arcK);
    (void)eta;
    Index k = shift_count_for(mu, epsilon);
    if (cap > 0) k = std::min(k, cap);
    return adi_shifts(arcJ, arcK, k);
}

/// Row-basis compression: interpolative decomposition of the block
/// C(rows, K_t^c) built from the left fADI factor alone.
inline InterpolativeFactor compress_rows(const HssBuildContext& ctx,
                                         const std::vector<Index>& rows, Index klo, Index khi) {
    InterpolativeFactor f;
    if (rows.empty()) {
        f.U.resize(0, 0);
        return f;
    }
    const NodeSet& ns = ctx.gen->nodes();
    const Index ncols = ctx.n - (khi - klo + 1);
    const Arc arcJ = cluster_arc(klo, khi, ctx.n);
    const Arc arcK = root_arc_complement(klo, khi, ctx.n);
    CauchyBlockSpec spec;
    spec.gamma_diag.resize(static_cast<Index>(rows.size()));
    spec.u_sub.resize(static_cast<Index>(rows.size()));
    for (size_t i = 0; i < rows.size(); ++i) {
        spec.gamma_diag[static_cast<Index>(i)] = ns.gamma[rows[i]];
        spec.u_sub[static_cast<Index>(i)] = ns.u[rows[i]];
    }
    const Index cap = std::min<Index>(static_cast<Index>(rows.size()), ncols);
    ShiftSet shifts = block_shifts(arcJ, arcK, ctx.epsilon, cap);
    CMatrix Z = fadi_left_only(spec, shifts);
    return one_sided_id(Z, ctx.epsilon);
}

/// Column-basis compression: ID of C(J_t^c, cols) from the right fADI
/// factor alone. cols are global column indices (0-based).
inline InterpolativeFactor compress_cols(const HssBuildContext& ctx,
                                         const std::vector<Index>& cols, Index klo, Index khi,
                                         Index rows_outside) {
    InterpolativeFactor f;
    if (cols.empty() || rows_outside == 0) {
        f.U.resize(static_cast<Index>(cols.size()), 0);
        return f;
    }
    const auto arcs = hss_block_arcs(klo, khi, ctx.n);
    CauchyBlockSpec spec;
    spec.lambda_diag.resize(static_cast<Index>(cols.size()));
    spec.w_sub.resize(static_cast<Index>(cols.size()));
    for (size_t i = 0; i < cols.size(); ++i) {
        spec.lambda_diag[static_cast<Index>(i)] = ctx.gen->lambda()[cols[i]];
        spec.w_sub[static_cast<Index>(i)] = ctx.gen->w()[cols[i]];
    }
    const Index cap = std::min<Index>(static_cast<Index>(cols.size()), rows_outside);
    ShiftSet shifts = block_shifts(arcs.first, arcs.second, ctx.epsilon, cap);
    CMatrix W = fadi_right_only(spec, shifts);
    return one_sided_id(W, ctx.epsilon);
}

}  // namespace detail

/// Default leaf width: leaves are kept wider than the expected rank so the
/// interpolative decompositions stay well posed.
inline Index default_leaf_cols(double epsilon, Index n) {
    return std::max<Index>(2 * rank_bound(epsilon, n), 32);
}

/// Builds the cluster-based rectangular HSS approximation H ~= C = V F*.
/// Leaf bases come from left/right-only fADI plus one-sided interpolative
/// decompositions; parent translations from IDs of the children's stacked
/// basis rows/columns; sibling blocks are subsampled entries of C.
inline HssMatrix build_hss(const NodeSet& nodes, double epsilon, Index leaf_cols = 0) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("build_hss: epsilon must lie in (0,1)");
    if (leaf_cols <= 0) leaf_cols = default_leaf_cols(epsilon, nodes.n);
    leaf_cols = std::max<Index>(leaf_cols, 2);

    const CauchyGenerator gen(nodes);
    const ClusterPartition part = cluster_nodes(nodes);
    HssMatrix H;
    H.tree = build_tree(part, leaf_cols);
    H.m = nodes.m;
    H.n = nodes.n;
    H.resize_storage();

    detail::HssBuildContext ctx{&gen, epsilon, nodes.n};
    const auto order = H.tree.postorder();
    for (Index t : order) {
        const HssTreeNode& nd = H.node(t);
        const bool is_root = nd.parent < 0;
        if (nd.is_leaf()) {
            H.D[static_cast<size_t>(t)] =
                gen.block_range(nd.row_begin, nd.row_end, nd.col_begin, nd.col_end);
            if (is_root) {
                H.U[static_cast<size_t>(t)].resize(nd.rows(), 0);
                H.V[static_cast<size_t>(t)].resize(nd.cols(), 0);
                continue;
            }
            std::vector<Index> rows(static_cast<size_t>(nd.rows()));
            for (Index i = 0; i < nd.rows(); ++i)
                rows[static_cast<size_t>(i)] = nd.row_begin + i;
            auto idr = detail::compress_rows(ctx, rows, nd.kappa_lo, nd.kappa_hi);
            H.U[static_cast<size_t>(t)] = std::move(idr.U);
            H.Srow[static_cast<size_t>(t)].clear();
            for (Index s : idr.S)
                H.Srow[static_cast<size_t>(t)].push_back(nd.row_begin + s);

            std::vector<Index> cols(static_cast<size_t>(nd.cols()));
            for (Index i = 0; i < nd.cols(); ++i)
                cols[static_cast<size_t>(i)] = nd.col_begin + i;
            auto idc = detail::compress_cols(ctx, cols, nd.kappa_lo, nd.kappa_hi,
                                             nodes.m - nd.rows());
            H.V[static_cast<size_t>(t)] = std::move(idc.U);
            H.Scol[static_cast<size_t>(t)].clear();
            for (Index s : idc.S)
                H.Scol[static_cast<size_t>(t)].push_back(nd.col_begin + s);
        } else {
            const Index l = nd.left, r = nd.right;
            const auto& srl = H.Srow[static_cast<size_t>(l)];
            const auto& srr = H.Srow[static_cast<size_t>(r)];
            const auto& scl = H.Scol[static_cast<size_t>(l)];
            const auto& scr = H.Scol[static_cast<size_t>(r)];
            H.Blr[static_cast<size_t>(t)] = gen.block(srl, scr);
            H.Brl[static_cast<size_t>(t)] = gen.block(srr, scl);
            if (is_root) {
                H.Rl[static_cast<size_t>(t)].resize(static_cast<Index>(srl.size()), 0);
                H.Rr[static_cast<size_t>(t)].resize(static_cast<Index>(srr.size()), 0);
                H.Wl[static_cast<size_t>(t)].resize(static_cast<Index>(scl.size()), 0);
                H.Wr[static_cast<size_t>(t)].resize(static_cast<Index>(scr.size()), 0);
                continue;
            }
            std::vector<Index> rows = srl;
            rows.insert(rows.end(), srr.begin(), srr.end());
            auto idr = detail::compress_rows(ctx, rows, nd.kappa_lo, nd.kappa_hi);
            H.Rl[static_cast<size_t>(t)] = idr.U.topRows(static_cast<Index>(srl.size()));
            H.Rr[static_cast<size_t>(t)] = idr.U.bottomRows(static_cast<Index>(srr.size()));
            H.Srow[static_cast<size_t>(t)].clear();
            for (Index s : idr.S) H.Srow[static_cast<size_t>(t)].push_back(rows[static_cast<size_t>(s)]);

            std::vector<Index> cols = scl;
            cols.insert(cols.end(), scr.begin(), scr.end());
            auto idc = detail::compress_cols(ctx, cols, nd.kappa_lo, nd.kappa_hi,
                                             nodes.m - nd.rows());
            H.Wl[static_cast<size_t>(t)] = idc.U.topRows(static_cast<Index>(scl.size()));
            H.Wr[static_cast<size_t>(t)] = idc.U.bottomRows(static_cast<Index>(scr.size()));
            H.Scol[static_cast<size_t>(t)].clear();
            for (Index s : idc.S) H.Scol[static_cast<size_t>(t)].push_back(cols[static_cast<size_t>(s)]);
        }
    }
    return H;
}

/// Two-pass HSS multiply: up-sweep of V* projections, down-sweep of B/R
/// contributions, leaf combination with the dense diagonal blocks.
inline CMatrix hss_matvec(const HssMatrix& H, const CMatrix& x) {
    if (x.rows() != H.n) throw std::invalid_argument("hss_matvec: dimension mismatch");
    const Index r = x.cols();
    const Index nn = H.num_nodes();
    std::vector<CMatrix> xhat(static_cast<size_t>(nn));
    const auto post = H.tree.postorder();
    for (Index t : post) {
        const HssTreeNode& nd = H.node(t);
        if (nd.is_leaf()) {
            xhat[static_cast<size_t>(t)] =
                H.V[static_cast<size_t>(t)].adjoint() * x.middleRows(nd.col_begin, nd.cols());
        } else {
            xhat[static_cast<size_t>(t)] =
                H.Wl[static_cast<size_t>(t)].adjoint() * xhat[static_cast<size_t>(nd.left)] +
                H.Wr[static_cast<size_t>(t)].adjoint() * xhat[static_cast<size_t>(nd.right)];
        }
    }
    std::vector<CMatrix> g(static_cast<size_t>(nn));
    CMatrix y = CMatrix::Zero(H.m, r);
    for (auto it = post.rbegin(); it != post.rend(); ++it) {
        const Index t = *it;
        const HssTreeNode& nd = H.node(t);
        const bool is_root = nd.parent < 0;
        if (!nd.is_leaf()) {
            const Index l = nd.left, rr = nd.right;
            g[static_cast<size_t>(l)] =
                H.Blr[static_cast<size_t>(t)] * xhat[static_cast<size_t>(rr)];
            g[static_cast<size_t>(rr)] =
                H.Brl[static_cast<size_t>(t)] * xhat[static_cast<size_t>(l)];
            if (!is_root) {
                g[static_cast<size_t>(l)] += H.Rl[static_cast<size_t>(t)] * g[static_cast<size_t>(t)];
                g[static_cast<size_t>(rr)] += H.Rr[static_cast<size_t>(t)] * g[static_cast<size_t>(t)];
            }
        } else {
            y.middleRows(nd.row_begin, nd.rows()) =
                H.D[static_cast<size_t>(t)] * x.middleRows(nd.col_begin, nd.cols());
            if (!is_root && g[static_cast<size_t>(t)].size() > 0)
                y.middleRows(nd.row_begin, nd.rows()) +=
                    H.U[static_cast<size_t>(t)] * g[static_cast<size_t>(t)];
        }
    }
    return y;
}

/// Dense assembly following the HSS recursions exactly. Guarded so tests
/// cannot accidentally materialize a huge matrix.
inline CMatrix hss_to_dense(const HssMatrix& H, Index max_entries = Index(1) << 24) {
    if (H.m * H.n > max_entries)
        throw std::invalid_argument("hss_to_dense: size guard exceeded");
    struct Triple {
        CMatrix D, U, V;
    };
    std::function<Triple(Index)> rec = [&](Index t) -> Triple {
        const HssTreeNode& nd = H.node(t);
        if (nd.is_leaf())
            return {H.D[static_cast<size_t>(t)], H.U[static_cast<size_t>(t)],
                    H.V[static_cast<size_t>(t)]};
        Triple L = rec(nd.left);
        Triple R = rec(nd.right);
        Triple out;
        out.D.resize(L.D.rows() + R.D.rows(), L.D.cols() + R.D.cols());
        out.D.topLeftCorner(L.D.rows(), L.D.cols()) = L.D;
        out.D.topRightCorner(L.D.rows(), R.D.cols()) =
            L.U * H.Blr[static_cast<size_t>(t)] * R.V.adjoint();
        out.D.bottomLeftCorner(R.D.rows(), L.D.cols()) =
            R.U * H.Brl[static_cast<size_t>(t)] * L.V.adjoint();
        out.D.bottomRightCorner(R.D.rows(), R.D.cols()) = R.D;
        if (nd.parent >= 0) {
            out.U.resize(L.U.rows() + R.U.rows(), H.Rl[static_cast<size_t>(t)].cols());
            out.U.topRows(L.U.rows()) = L.U * H.Rl[static_cast<size_t>(t)];
            out.U.bottomRows(R.U.rows()) = R.U * H.Rr[static_cast<size_t>(t)];
            out.V.resize(L.V.rows() + R.V.rows(), H.Wl[static_cast<size_t>(t)].cols());
            out.V.topRows(L.V.rows()) = L.V * H.Wl[static_cast<size_t>(t)];
            out.V.bottomRows(R.V.rows()) = R.V * H.Wr[static_cast<size_t>(t)];
        }
        return out;
    };
    return rec(0).D;
}

}  // namespace inudft

#endif  // INUDFT_HSS_HPP
