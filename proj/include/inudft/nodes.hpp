#ifndef INUDFT_NODES_HPP
#define INUDFT_NODES_HPP

#include <algorithm>
#include <numeric>
#include <vector>

#include "inudft/types.hpp"

namespace inudft {

namespace detail {

/// Circle coordinate t in (0, n] with gamma_j = exp(2 pi i t/n),
/// i.e. t = -n p mod n, and t = n when p = 0.
inline double circle_coord(double p, Index n) {
    const double hi = static_cast<double>(n) * p;
    const double lo = std::fma(static_cast<double>(n), p, -hi);
    double t = static_cast<double>(n) - hi - lo;
    if (t <= 0.0) t += static_cast<double>(n);
    if (t > static_cast<double>(n)) t = static_cast<double>(n);
    return t;
}

/// Cluster index kappa in 1..n for coordinate t: kappa - 1/2 < t <= kappa + 1/2,
/// with t in (1/2, n + 1/2] after wrapping (so t <= 1/2 belongs to cluster n).
inline Index cluster_of_coord(double t, Index n) {
    Index kappa = static_cast<Index>(std::ceil(t - 0.5));
    if (kappa <= 0) kappa = n;
    if (kappa > n) kappa = n;
    return kappa;
}

}  // namespace detail

/// Sample locations and their unit-circle nodes, held in cluster-contiguous
/// row order. Rows are sorted by descending p, then the run of cluster-n
/// nodes that sits at the front (locations just below 1, which wrap across
/// the angle-0 seam) is rotated to the end so every cluster occupies one
/// contiguous slab.
struct NodeSet {
    RVector p;                    // sample locations, cluster-contiguous order
    CVector gamma;                // gamma_j = e^{-2 pi i p_j}
    CVector u;                    // u_j = gamma_j^n - 1 (displacement vector)
    Index m = 0;
    Index n = 0;
    std::vector<Index> perm;      // row i of this set is input row perm[i]
    std::vector<Index> cluster;   // cluster index kappa in 1..n per row
    std::vector<Index> degenerate_home;  // 1-based root index, or 0 if generic

    /// Gather rows of a right-hand side given in original input order.
    CMatrix gather_rows(const CMatrix& b_raw) const {
        CMatrix b(m, b_raw.cols());
        for (Index i = 0; i < m; ++i) b.row(i) = b_raw.row(perm[i]);
        return b;
    }
};

/// Contiguous row slabs, one per cluster 1..n (empty slabs allowed).
struct ClusterPartition {
    Index n = 0;
    std::vector<Index> offsets;   // size n+1; slab kappa = rows [offsets[kappa-1], offsets[kappa])
    std::vector<Index> cluster_of;  // per row, 1-based

    Index slab_begin(Index kappa) const { return offsets[kappa - 1]; }
    Index slab_end(Index kappa) const { return offsets[kappa]; }
};

/// Threshold below which |gamma_j - omega^{2 kappa}| marks a row as
/// degenerate for the Cauchy transform (the displacement equation row
/// carries no information there).
inline constexpr double kDegenerateTol = 1e-14;

inline NodeSet make_node_set(const RVector& p_raw, Index n) {
    if (n < 1) throw std::invalid_argument("make_node_set: n must be positive");
    const Index m = p_raw.size();
    for (Index j = 0; j < m; ++j)
        if (!(p_raw[j] >= 0.0 && p_raw[j] < 1.0))
            throw std::invalid_argument("make_node_set: sample location outside [0,1)");

    std::vector<Index> order(m);
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Index a, Index b) { return p_raw[a] > p_raw[b]; });

    // Descending p means ascending circle coordinate t. Nodes of cluster n
    // with t near 0 (p just below 1) sort to the front; rotate them to the
    // end so the cluster-n slab is contiguous.
    std::vector<double> tvals(m);
    Index head = 0;
    for (Index i = 0; i < m; ++i) tvals[i] = detail::circle_coord(p_raw[order[i]], n);
    while (head < m && tvals[head] <= 0.5) ++head;
    if (head > 0 && head < m)
        std::rotate(order.begin(), order.begin() + head, order.end());

    NodeSet ns;
    ns.m = m;
    ns.n = n;
    ns.p.resize(m);
    ns.gamma.resize(m);
    ns.u.resize(m);
    ns.perm.assign(order.begin(), order.end());
    ns.cluster.resize(m);
    ns.degenerate_home.resize(m);
    for (Index i = 0; i < m; ++i) {
        const double p = p_raw[order[i]];
        ns.p[i] = p;
        ns.gamma[i] = unit_phase(p);
        ns.u[i] = unit_phase_pow_minus_one(p, static_cast<double>(n));
        const double t = detail::circle_coord(p, n);
        ns.cluster[i] = detail::cluster_of_coord(t, n);
        const double dt = t - std::round(t);  // offset to nearest root of unity
        const double chord = 2.0 * std::abs(std::sin(kPi * dt / static_cast<double>(n)));
        if (chord < kDegenerateTol) {
            Index home = static_cast<Index>(std::round(t));
            if (home <= 0) home = n;
            ns.degenerate_home[i] = home;
        } else {
            ns.degenerate_home[i] = 0;
        }
    }
    return ns;
}

inline ClusterPartition cluster_nodes(const NodeSet& nodes) {
    ClusterPartition part;
    part.n = nodes.n;
    part.cluster_of = nodes.cluster;
    part.offsets.assign(static_cast<size_t>(nodes.n) + 1, 0);
    for (Index i = 0; i < nodes.m; ++i) part.offsets[static_cast<size_t>(nodes.cluster[i])]++;
    for (size_t k = 1; k < part.offsets.size(); ++k) part.offsets[k] += part.offsets[k - 1];
    // rows are already cluster-contiguous; check monotone cluster order
    for (Index i = 0; i + 1 < nodes.m; ++i)
        if (nodes.cluster[i] > nodes.cluster[i + 1])
            throw NumericalError("cluster_nodes: rows are not cluster-contiguous");
    return part;
}

}  // namespace inudft

#endif  // INUDFT_NODES_HPP
