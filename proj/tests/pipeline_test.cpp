#include <chrono>

#include <gtest/gtest.h>

#include "inudft/grids.hpp"
#include "inudft/pipeline.hpp"
#include "test_support.hpp"

using namespace inudft;

TEST(InudftFactor, EquispacedSquareCase) {
    const Index m = 8, n = 8;
    RVector p(m);
    for (Index j = 1; j <= m; ++j) p[j - 1] = static_cast<double>(m - j) / m;
    InudftFactorization fact = inudft_factor(p, n, 1e-12);
    // V*V = mI here, so the implied condition number is 1
    ToeplitzSymbol sym = toeplitz_symbol(fact.nodes);
    EXPECT_NEAR(std::abs(sym.at(0)), static_cast<double>(m), 1e-10);
    for (long q = 1; q < n; ++q) EXPECT_LT(std::abs(sym.at(q)), 1e-10);
    // solving V x = B equals V* B / m
    CMatrix B = test::random_cmatrix(m, 2, 3);
    CMatrix X = inudft_solve(fact, B);
    CMatrix V = test::dense_V(fact.nodes);
    CMatrix want = V.adjoint() * fact.nodes.gather_rows(B) / static_cast<double>(m);
    EXPECT_LE((X - want).norm(), 1e-12 * want.norm());
}

TEST(InudftFactor, RejectsBadTolerance) {
    RVector p(4);
    p << 0.8, 0.6, 0.4, 0.2;
    EXPECT_THROW(inudft_factor(p, 4, 0.0), std::invalid_argument);
    EXPECT_THROW(inudft_factor(p, 4, 1.5), std::invalid_argument);
}

TEST(InudftFactor, RejectsUnderdetermined) {
    RVector p(3);
    p << 0.8, 0.6, 0.4;
    EXPECT_THROW(inudft_factor(p, 4, 1e-10), std::invalid_argument);
}

TEST(InudftFactor, StoredWMatchesClosedForm) {
    RVector p = generate_grid(GridKind::UniformRandom, 40, 16, 2, 5);
    InudftFactorization fact = inudft_factor(p, 16, 1e-8);
    CauchyGenerator gen(fact.nodes);
    EXPECT_LE((fact.w - gen.w()).norm(), 1e-14);
}

TEST(InudftFactor, GappyGridFactorsDespiteConditioning) {
    const Index m = 256, n = 128;
    RVector p = generate_grid(GridKind::RandomGap, m, n, 0.0, 11);
    InudftFactorization fact = inudft_factor(p, n, 1e-10);
    // dense SVD confirms the problem is genuinely ill-conditioned
    CMatrix V = test::dense_V(fact.nodes);
    const auto sv = test::singular_values(V);
    const double kappa = sv(0) / sv(sv.size() - 1);
    EXPECT_GT(kappa, 1e4);
    // and a consistent system still solves to a small residual
    CMatrix Xtrue = test::random_cmatrix(n, 1, 12);
    CMatrix B = nudft_type2_apply(fact.nodes, Xtrue);
    // scatter back to input order
    CMatrix B_raw(m, 1);
    for (Index i = 0; i < m; ++i) B_raw.row(fact.nodes.perm[i]) = B.row(i);
    CMatrix X = inudft_solve(fact, B_raw);
    EXPECT_LE((V * fact.nodes.gather_rows(B_raw) - V * B).norm(), 1e-20);  // sanity
    const double resid = (V * X - B).norm() / B.norm();
    EXPECT_LE(resid, 1e-6);
}

TEST(InudftSolve, ConsistentRecoveryOnJitteredGrid) {
    const Index m = 512, n = 256;
    RVector p = generate_grid(GridKind::Jittered, m, n, 0.5, 7);
    InudftFactorization fact = inudft_factor(p, n, 1e-10);
    CMatrix Xtrue = test::random_cmatrix(n, 1, 8);
    CMatrix B_node = nudft_type2_apply(fact.nodes, Xtrue);
    CMatrix B_raw(m, 1);
    for (Index i = 0; i < m; ++i) B_raw.row(fact.nodes.perm[i]) = B_node.row(i);
    CMatrix X = inudft_solve(fact, B_raw);
    EXPECT_LE((X - Xtrue).norm() / Xtrue.norm(), 1e-7);
}

TEST(InudftSolve, InconsistentResidualMatchesDenseQr) {
    const Index m = 200, n = 100;
    RVector p = generate_grid(GridKind::UniformRandom, m, n, 0.0, 9);
    InudftFactorization fact = inudft_factor(p, n, 1e-10);
    CMatrix B_raw = test::random_cmatrix(m, 1, 10);
    CMatrix X = inudft_solve(fact, B_raw);
    CMatrix V = test::dense_V(fact.nodes);
    CMatrix B_node = fact.nodes.gather_rows(B_raw);
    const double r_fast = (V * X - B_node).norm();
    const double r_ref = (V * V.colPivHouseholderQr().solve(B_node) - B_node).norm();
    EXPECT_LE(r_fast, (1.0 + 1e-6) * r_ref);
}

TEST(InudftSolve, PermutingInputRowsLeavesSolutionUnchanged) {
    const Index m = 150, n = 64;
    RVector p = generate_grid(GridKind::UniformRandom, m, n, 0.0, 13);
    CMatrix b = test::random_cmatrix(m, 1, 14);
    CMatrix X1 = inudft_one_shot(p, n, b, 1e-10);
    // shuffle rows of (p, b) identically
    auto g = test::rng(15);
    std::vector<Index> shuffle(static_cast<size_t>(m));
    std::iota(shuffle.begin(), shuffle.end(), Index{0});
    for (size_t i = shuffle.size(); i > 1; --i)
        std::swap(shuffle[i - 1], shuffle[static_cast<size_t>(g() % i)]);
    RVector p2(m);
    CMatrix b2(m, 1);
    for (Index i = 0; i < m; ++i) {
        p2[i] = p[shuffle[static_cast<size_t>(i)]];
        b2.row(i) = b.row(shuffle[static_cast<size_t>(i)]);
    }
    CMatrix X2 = inudft_one_shot(p2, n, b2, 1e-10);
    EXPECT_LE((X1 - X2).norm() / X1.norm(), 1e-13);
}

TEST(InudftOneShot, EqualsFactorThenSolve) {
    for (uint64_t seed = 0; seed < 10; ++seed) {
        const Index m = 96, n = 48;
        RVector p = generate_grid(GridKind::UniformRandom, m, n, 0.0, 100 + seed);
        CMatrix b = test::random_cmatrix(m, 2, 200 + seed);
        CMatrix X1 = inudft_one_shot(p, n, b, 1e-8);
        InudftFactorization fact = inudft_factor(p, n, 1e-8);
        CMatrix X2 = inudft_solve(fact, b);
        EXPECT_EQ((X1 - X2).norm(), 0.0) << seed;
    }
}

TEST(InudftOneShot, RejectsUnderdetermined) {
    RVector p(3);
    p << 0.8, 0.6, 0.4;
    EXPECT_THROW(inudft_one_shot(p, 4, CMatrix::Zero(3, 1), 1e-8), std::invalid_argument);
}

TEST(InudftSolve, NonPowerOfTwoFrequencyCounts) {
    // any n >= 1 is accepted; the transforms fall back to Bluestein
    for (Index n : {Index(1), Index(37), Index(100)}) {
        const Index m = 2 * n + 3;
        RVector p = generate_grid(GridKind::UniformRandom, m, std::max<Index>(n, 9), 0.0, 17);
        InudftFactorization fact = inudft_factor(p, n, 1e-10);
        CMatrix x_true = test::random_cmatrix(n, 1, 18);
        CMatrix b_node = nudft_type2_apply(fact.nodes, x_true);
        CMatrix b_raw(m, 1);
        for (Index i = 0; i < m; ++i) b_raw.row(fact.nodes.perm[i]) = b_node.row(i);
        CMatrix x = inudft_solve(fact, b_raw);
        EXPECT_LE((x - x_true).norm() / x_true.norm(), 1e-6) << "n=" << n;
    }
}

TEST(InudftSolve, ExactlySquareSystem) {
    const Index n = 64;
    RVector p = generate_grid(GridKind::Jittered, n, n, 0.25, 19);
    InudftFactorization fact = inudft_factor(p, n, 1e-10);
    CMatrix x_true = test::random_cmatrix(n, 1, 20);
    CMatrix b_node = nudft_type2_apply(fact.nodes, x_true);
    CMatrix b_raw(n, 1);
    for (Index i = 0; i < n; ++i) b_raw.row(fact.nodes.perm[i]) = b_node.row(i);
    CMatrix x = inudft_solve(fact, b_raw);
    EXPECT_LE((x - x_true).norm() / x_true.norm(), 1e-7);
}

TEST(InudftSolve, EndToEndResidualAcrossGrids) {
    // consistent data: relative residual stays within 100x the tolerance
    const double eps = 1e-8;
    uint64_t seed = 50;
    for (Index n : {Index(64), Index(256)}) {
        const Index m = 2 * n;
        for (GridKind kind : {GridKind::Jittered, GridKind::Chebyshev,
                              GridKind::UniformRandom, GridKind::RandomGap}) {
            RVector p = generate_grid(kind, m, n, 0.5, seed++);
            InudftFactorization fact = inudft_factor(p, n, eps);
            CMatrix x_true = test::random_cmatrix(n, 1, seed);
            CMatrix b_node = nudft_type2_apply(fact.nodes, x_true);
            CMatrix b_raw(m, 1);
            for (Index i = 0; i < m; ++i) b_raw.row(fact.nodes.perm[i]) = b_node.row(i);
            CMatrix x = inudft_solve(fact, b_raw);
            const double rel =
                (nudft_type2_apply(fact.nodes, x) - b_node).norm() / b_node.norm();
            EXPECT_LE(rel, 100.0 * eps) << grid_name(kind) << " n=" << n;
        }
    }
}

TEST(InudftSolve, ManyRhsAmortizeAgainstFactorCost) {
    const Index m = 2048, n = 1024, r = 100;
    RVector p = generate_grid(GridKind::UniformRandom, m, n, 0.0, 21);
    const auto t0 = std::chrono::steady_clock::now();
    InudftFactorization fact = inudft_factor(p, n, 1e-10);
    const auto t1 = std::chrono::steady_clock::now();
    CMatrix B = test::random_cmatrix(m, r, 22);
    CMatrix X = inudft_solve(fact, B);
    const auto t2 = std::chrono::steady_clock::now();
    const double factor_s = std::chrono::duration<double>(t1 - t0).count();
    const double per_rhs = std::chrono::duration<double>(t2 - t1).count() / r;
    // marginal per-RHS cost is far below the factorization cost
    EXPECT_LT(per_rhs, factor_s / 5.0);
    (void)X;
}
