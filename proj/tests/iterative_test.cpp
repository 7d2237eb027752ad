#include <gtest/gtest.h>

#include "inudft/grids.hpp"
#include "inudft/iterative.hpp"
#include "test_support.hpp"

using namespace inudft;

namespace {

NodeSet equispaced(Index m, Index n) {
    RVector p(m);
    for (Index j = 1; j <= m; ++j) p[j - 1] = static_cast<double>(m - j) / m;
    return make_node_set(p, n);
}

NodeSet grid_nodes(GridKind kind, Index m, Index n, uint64_t seed, double theta = 0.5) {
    return make_node_set(generate_grid(kind, m, n, theta, seed), n);
}

constexpr IterativeMethod kAll[] = {IterativeMethod::CgNor, IterativeMethod::PcgNorStrang,
                                    IterativeMethod::FpAdjSinc, IterativeMethod::CgAdj,
                                    IterativeMethod::PcgAdjSinc};

}  // namespace

TEST(Sinc2Weights, SingleNode) {
    RVector p(1);
    p << 0.37;
    NodeSet ns = make_node_set(p, 8);
    RVector w = sinc2_weights(ns);
    EXPECT_NEAR(w[0], 1.0 / 8.0, 1e-13);
}

TEST(Sinc2Weights, EquispacedGivesUniformWeights) {
    NodeSet ns = equispaced(16, 16);
    RVector w = sinc2_weights(ns);
    for (Index j = 0; j < 16; ++j) EXPECT_NEAR(w[j], 1.0 / 16.0, 1e-12);
}

TEST(Sinc2Weights, MatchesDenseDefinition) {
    const Index m = 200, n = 100;
    NodeSet ns = grid_nodes(GridKind::UniformRandom, m, n, 3);
    RVector w = sinc2_weights(ns);
    CMatrix V = test::dense_V(ns);
    CMatrix G = V * V.adjoint();
    CMatrix G2 = G * G;
    for (Index j = 0; j < m; ++j) {
        const double want = G(j, j).real() / G2(j, j).real();
        EXPECT_NEAR(w[j] / want, 1.0, 1e-10);
        EXPECT_GT(w[j], 0.0);
    }
}

TEST(Strang, EquispacedGivesScaledIdentity) {
    NodeSet ns = equispaced(16, 8);
    ToeplitzSymbol sym = toeplitz_symbol(ns);
    CVector lam = strang_preconditioner(sym);
    for (Index i = 0; i < 8; ++i) EXPECT_NEAR(std::abs(lam[i] - Complex(16, 0)), 0.0, 1e-10);
}

TEST(Strang, SizeOne) {
    RVector p(3);
    p << 0.9, 0.5, 0.2;
    NodeSet ns = make_node_set(p, 1);
    ToeplitzSymbol sym = toeplitz_symbol(ns);
    CVector lam = strang_preconditioner(sym);
    EXPECT_LT(std::abs(lam[0] - sym.at(0)), 1e-12);
}

TEST(Strang, InverseMatchesDenseCirculant) {
    const Index n = 16;
    NodeSet ns = grid_nodes(GridKind::UniformRandom, 40, n, 7);
    ToeplitzSymbol sym = toeplitz_symbol(ns);
    CVector lam = strang_preconditioner(sym);
    // dense circulant from the Strang first column
    CVector c(n);
    const Index half = (n + 1) / 2;
    for (Index l = 0; l < n; ++l) c[l] = l < half ? sym.at(l) : sym.at(l - n);
    CMatrix M(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) M(i, j) = c[(i - j + n) % n];
    CVector r = test::random_cvector(n, 8);
    CVector x = circulant_solve(lam, r);
    CVector xref = M.colPivHouseholderQr().solve(r);
    EXPECT_LE((x - xref).norm() / xref.norm(), 1e-12);
}

TEST(IterativeSolve, EquispacedConvergesInOneIteration) {
    NodeSet ns = equispaced(32, 32);
    CVector x_true = test::random_cvector(32, 9);
    CVector b = nudft_type2_apply(ns, x_true);
    for (IterativeMethod m : kAll) {
        IterativeReport rep = iterative_solve(m, ns, b, 1e-10, 50);
        EXPECT_TRUE(rep.converged) << method_name(m);
        EXPECT_EQ(rep.iterations, 1) << method_name(m);
        EXPECT_LE((rep.x - x_true).norm() / x_true.norm(), 1e-9) << method_name(m);
    }
}

TEST(IterativeSolve, FixedPointScalarCase) {
    // m = 1, n = 4: VV* = n, W = 1/n, one step is exact
    RVector p(1);
    p << 0.2;
    NodeSet ns = make_node_set(p, 4);
    CVector b(1);
    b[0] = Complex(2.0, -1.0);
    IterativeReport rep = iterative_solve(IterativeMethod::FpAdjSinc, ns, b, 1e-12, 10);
    EXPECT_TRUE(rep.converged);
    EXPECT_EQ(rep.iterations, 1);
}

TEST(IterativeSolve, CgNorConvergesFastOnJitteredGrid) {
    const Index n = 256, m = 512;
    NodeSet ns = grid_nodes(GridKind::Jittered, m, n, 11);
    CVector x_true = test::random_cvector(n, 12);
    CVector b = nudft_type2_apply(ns, x_true);
    IterativeReport rep = iterative_solve(IterativeMethod::CgNor, ns, b, 1e-7, 10000);
    EXPECT_TRUE(rep.converged);
    EXPECT_LE(rep.iterations, 100);
}

TEST(IterativeSolve, CgNorResidualIsMonotone) {
    const Index n = 64, m = 128;
    NodeSet ns = grid_nodes(GridKind::UniformRandom, m, n, 13);
    CVector b = test::random_cvector(m, 14);
    IterativeReport rep = iterative_solve(IterativeMethod::CgNor, ns, b, 1e-12, 200);
    for (size_t i = 1; i < rep.residual_history.size(); ++i)
        EXPECT_LE(rep.residual_history[i], rep.residual_history[i - 1] * (1.0 + 1e-10)) << i;
}

TEST(IterativeSolve, AllMethodsAgreeWithDenseLeastSquares) {
    const Index n = 64, m = 128;
    NodeSet ns = grid_nodes(GridKind::Jittered, m, n, 15);
    CVector x_true = test::random_cvector(n, 16);
    CVector b = nudft_type2_apply(ns, x_true);
    CMatrix V = test::dense_V(ns);
    CVector x_ref = V.colPivHouseholderQr().solve(b);
    for (IterativeMethod m_ : kAll) {
        IterativeReport rep = iterative_solve(m_, ns, b, 1e-9, default_maxit(m_));
        EXPECT_TRUE(rep.converged) << method_name(m_);
        EXPECT_LE((rep.x - x_ref).norm() / x_ref.norm(), 1e-6) << method_name(m_);
    }
}

TEST(IterativeSolve, PreconditionedVariantsDoNotDiverge) {
    // within 10x the unpreconditioned iteration count on the benign grids
    for (GridKind kind : {GridKind::Jittered, GridKind::Chebyshev}) {
        const Index n = 64, m = 160;
        NodeSet ns = grid_nodes(kind, m, n, 17);
        CVector x_true = test::random_cvector(n, 18);
        CVector b = nudft_type2_apply(ns, x_true);
        IterativeReport cg = iterative_solve(IterativeMethod::CgNor, ns, b, 1e-7, 10000);
        IterativeReport pcg = iterative_solve(IterativeMethod::PcgNorStrang, ns, b, 1e-7, 10000);
        ASSERT_TRUE(cg.converged) << grid_name(kind);
        EXPECT_TRUE(pcg.converged) << grid_name(kind);
        EXPECT_LE(pcg.iterations, 10 * cg.iterations) << grid_name(kind);
        IterativeReport adj = iterative_solve(IterativeMethod::CgAdj, ns, b, 1e-7, 8000);
        IterativeReport padj = iterative_solve(IterativeMethod::PcgAdjSinc, ns, b, 1e-7, 8000);
        ASSERT_TRUE(adj.converged) << grid_name(kind);
        EXPECT_TRUE(padj.converged) << grid_name(kind);
        EXPECT_LE(padj.iterations, 10 * adj.iterations) << grid_name(kind);
    }
}

TEST(IterativeSolve, NonConvergenceIsReportedNotThrown) {
    const Index n = 128, m = 256;
    NodeSet ns = grid_nodes(GridKind::RandomGap, m, n, 19);
    CVector x_true = test::random_cvector(n, 20);
    CVector b = nudft_type2_apply(ns, x_true);
    IterativeReport rep = iterative_solve(IterativeMethod::CgNor, ns, b, 1e-12, 5);
    EXPECT_FALSE(rep.converged);
    EXPECT_EQ(rep.iterations, 5);
    EXPECT_EQ(rep.residual_history.size(), 5u);
}

TEST(IterativeSolve, ZeroRhs) {
    NodeSet ns = grid_nodes(GridKind::UniformRandom, 32, 16, 21);
    IterativeReport rep = iterative_solve(IterativeMethod::CgAdj, ns, CVector::Zero(32), 1e-8, 10);
    EXPECT_TRUE(rep.converged);
    EXPECT_EQ(rep.x.norm(), 0.0);
}
