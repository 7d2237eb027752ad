#include <gtest/gtest.h>

#include "inudft/grids.hpp"
#include "inudft/nodes.hpp"
#include "test_support.hpp"

using namespace inudft;

TEST(MakeNodeSet, SortsDescendingAndRecordsSwap) {
    RVector p(2);
    p << 0.25, 0.75;
    NodeSet ns = make_node_set(p, 4);
    EXPECT_DOUBLE_EQ(ns.p[0], 0.75);
    EXPECT_DOUBLE_EQ(ns.p[1], 0.25);
    EXPECT_EQ(ns.perm[0], 1);
    EXPECT_EQ(ns.perm[1], 0);
}

TEST(MakeNodeSet, SortedInputGetsIdentityPermutation) {
    RVector p(3);
    p << 0.7, 0.5, 0.2;
    NodeSet ns = make_node_set(p, 4);
    EXPECT_EQ(ns.perm[0], 0);
    EXPECT_EQ(ns.perm[1], 1);
    EXPECT_EQ(ns.perm[2], 2);
}

TEST(MakeNodeSet, PermutationReproducesStoredLocations) {
    auto g = test::rng(31);
    const Index m = 100;
    RVector p(m);
    for (Index j = 0; j < m; ++j) p[j] = test::urand(g);
    NodeSet ns = make_node_set(p, 32);
    for (Index i = 0; i < m; ++i) EXPECT_DOUBLE_EQ(ns.p[i], p[ns.perm[i]]);
    for (Index i = 0; i + 1 < m; ++i) EXPECT_LE(ns.cluster[i], ns.cluster[i + 1]);
    for (Index i = 0; i < m; ++i) EXPECT_NEAR(std::abs(ns.gamma[i]), 1.0, 1e-15);
}

TEST(MakeNodeSet, RejectsOutOfRange) {
    RVector p(2);
    p << 0.5, 1.0;
    EXPECT_THROW(make_node_set(p, 4), std::invalid_argument);
    p << -0.1, 0.5;
    EXPECT_THROW(make_node_set(p, 4), std::invalid_argument);
}

TEST(Clusters, NodeAtAngleZeroBelongsToClusterN) {
    RVector p(1);
    p << 0.0;  // gamma = 1, t = n
    NodeSet ns = make_node_set(p, 4);
    EXPECT_EQ(ns.cluster[0], 4);
}

TEST(Clusters, UpperBoundaryBelongsToLowerCluster) {
    // t = kappa + 1/2 exactly: p = (n - kappa - 1/2)/n with n a power of two
    const Index n = 4;
    for (Index kappa = 1; kappa <= 2; ++kappa) {
        RVector p(1);
        p << (static_cast<double>(n - kappa) - 0.5) / static_cast<double>(n);
        NodeSet ns = make_node_set(p, n);
        EXPECT_EQ(ns.cluster[0], kappa) << "kappa=" << kappa;
    }
}

TEST(Clusters, SmallJitterGivesOneNodePerCluster) {
    const Index m = 64, n = 64;
    RVector p = generate_grid(GridKind::Jittered, m, n, 0.25, 7);
    NodeSet ns = make_node_set(p, n);
    ClusterPartition part = cluster_nodes(ns);
    for (Index kappa = 1; kappa <= n; ++kappa)
        EXPECT_EQ(part.slab_end(kappa) - part.slab_begin(kappa), 1) << kappa;
}

TEST(Clusters, MembershipConditionHolds) {
    // brute-force check of the cluster definition on all four grids
    const Index m = 160, n = 64;
    for (GridKind kind : {GridKind::Jittered, GridKind::Chebyshev, GridKind::UniformRandom,
                          GridKind::RandomGap}) {
        RVector p = generate_grid(kind, m, n, 0.5, 11);
        NodeSet ns = make_node_set(p, n);
        for (Index j = 0; j < m; ++j) {
            // gamma_j = exp(2 pi i t/n) with kappa - 1/2 < t <= kappa + 1/2
            const double ang = std::arg(ns.gamma[j]);  // in (-pi, pi]
            double t = ang * static_cast<double>(n) / kTwoPi;
            const double kappa = static_cast<double>(ns.cluster[j]);
            while (t <= kappa - 0.5) t += static_cast<double>(n);
            while (t > kappa + 0.5) t -= static_cast<double>(n);
            EXPECT_GT(t, kappa - 0.5 - 1e-9);
            EXPECT_LE(t, kappa + 0.5 + 1e-9);
        }
    }
}

TEST(Clusters, SlabsPartitionRows) {
    const Index m = 200, n = 32;
    RVector p = generate_grid(GridKind::UniformRandom, m, n, 0.0, 3);
    NodeSet ns = make_node_set(p, n);
    ClusterPartition part = cluster_nodes(ns);
    EXPECT_EQ(part.offsets.front(), 0);
    EXPECT_EQ(part.offsets.back(), m);
    for (Index kappa = 1; kappa <= n; ++kappa)
        for (Index i = part.slab_begin(kappa); i < part.slab_end(kappa); ++i)
            EXPECT_EQ(ns.cluster[i], kappa);
}

TEST(Clusters, DuplicateLocationsAreKept) {
    // coincident first/last nodes, as the quadrature grid produces
    RVector p = generate_grid(GridKind::Chebyshev, 9, 8, 0.0, 0);
    EXPECT_DOUBLE_EQ(p[0], 0.0);
    EXPECT_DOUBLE_EQ(p[8], 0.0);
    NodeSet ns = make_node_set(p, 8);
    EXPECT_EQ(ns.m, 9);
}
