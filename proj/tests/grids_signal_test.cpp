#include <gtest/gtest.h>

#include "inudft/grids.hpp"
#include "inudft/nodes.hpp"
#include "inudft/transforms.hpp"
#include "test_support.hpp"

using namespace inudft;

TEST(Grids, ChebyshevSmallCase) {
    RVector p = generate_grid(GridKind::Chebyshev, 3, 4, 0.0, 0);
    EXPECT_DOUBLE_EQ(p[0], 0.0);  // raw value 1 reduced mod 1
    EXPECT_DOUBLE_EQ(p[1], 0.5);
    EXPECT_DOUBLE_EQ(p[2], 0.0);
}

TEST(Grids, ZeroJitterIsEquispaced) {
    const Index m = 16;
    RVector p = generate_grid(GridKind::Jittered, m, 8, 0.0, 12345);
    for (Index j = 1; j <= m; ++j) {
        double want = static_cast<double>(m - j + 1) / static_cast<double>(m);
        if (want >= 1.0) want -= 1.0;
        EXPECT_DOUBLE_EQ(p[j - 1], want);
    }
}

TEST(Grids, RandomGapRespectsBound) {
    const Index m = 100, n = 50;
    RVector p = generate_grid(GridKind::RandomGap, m, n, 0.0, 5);
    for (Index j = 0; j < m; ++j) {
        EXPECT_GE(p[j], 0.0);
        EXPECT_LE(p[j], 1.0 - 8.0 / static_cast<double>(n));
    }
}

TEST(Grids, DeterministicUnderFixedSeed) {
    for (GridKind kind : {GridKind::Jittered, GridKind::UniformRandom, GridKind::RandomGap}) {
        RVector a = generate_grid(kind, 64, 32, 0.5, 987);
        RVector b = generate_grid(kind, 64, 32, 0.5, 987);
        EXPECT_EQ((a - b).norm(), 0.0);
        RVector c = generate_grid(kind, 64, 32, 0.5, 988);
        if (kind != GridKind::Chebyshev) EXPECT_GT((a - c).norm(), 0.0);
    }
}

TEST(Grids, UniformRandomPassesKolmogorovSmirnov) {
    const Index m = 5000;
    RVector p = generate_grid(GridKind::UniformRandom, m, 64, 0.0, 77);
    std::sort(p.begin(), p.end());
    double d = 0.0;
    for (Index i = 0; i < m; ++i) {
        const double f_hi = static_cast<double>(i + 1) / static_cast<double>(m);
        const double f_lo = static_cast<double>(i) / static_cast<double>(m);
        d = std::max(d, std::max(std::abs(f_hi - p[i]), std::abs(p[i] - f_lo)));
    }
    // critical value at level 1e-3: sqrt(-ln(alpha/2)/2)/sqrt(m)
    const double crit = std::sqrt(-std::log(0.5e-3) / 2.0) / std::sqrt(static_cast<double>(m));
    EXPECT_LT(d, crit);
}

TEST(Grids, JitteredGridIsWellConditioned) {
    // kappa_2(V) stays near 2 for theta = 1/2 and m = 2n
    const Index n = 128, m = 256;
    NodeSet ns = make_node_set(generate_grid(GridKind::Jittered, m, n, 0.5, 3), n);
    const auto sv = test::singular_values(test::dense_V(ns));
    const double kappa = sv(0) / sv(sv.size() - 1);
    EXPECT_GT(kappa, 1.2);
    EXPECT_LT(kappa, 3.0);
}

TEST(TestSignal, RejectsOddLength) {
    EXPECT_THROW(test_signal(7), std::invalid_argument);
}

TEST(TestSignal, FilterMagnitudeAtMaxFrequency) {
    // the Gaussian factor is about 0.002 at |k| = n/2
    EXPECT_NEAR(std::exp(-0.5 * 3.5 * 3.5), 0.00219, 2e-5);
}

TEST(TestSignal, MeanCoefficientMatchesRefinedQuadrature) {
    const Index n = 128;
    TestSignal sig = test_signal(n);
    // c_0 at quadrature factor 10 vs factor 100
    TestSignal fine = test_signal(n, 100);
    EXPECT_GT(sig.coeff(0).real(), 0.0);
    EXPECT_LT(std::abs(sig.coeff(0).imag()), 1e-3);
    EXPECT_NEAR(sig.coeff(0).real(), fine.coeff(0).real(), 1e-3);
}

TEST(TestSignal, QuadratureRefinementConvergesAtLowFrequencies) {
    // the signal is discontinuous, so equispaced quadrature carries an
    // aliasing error of order 1/N; refining the rule must shrink it
    const Index n = 128;
    TestSignal a = test_signal(n, 10);
    TestSignal b = test_signal(n, 20);
    TestSignal fine = test_signal(n, 160);
    double err_a = 0.0, err_b = 0.0;
    for (Index k = -n / 4; k <= n / 4; ++k) {
        err_a = std::max(err_a, std::abs(a.coeff(k) - fine.coeff(k)));
        err_b = std::max(err_b, std::abs(b.coeff(k) - fine.coeff(k)));
    }
    EXPECT_LT(err_a, 1e-3);
    EXPECT_LT(err_b, 0.75 * err_a);
}

TEST(TestSignal, PrephasedSamplingMatchesSymmetricSeries) {
    // nudft on the coefficient vector equals gamma^{n/2} times the
    // symmetric-index series
    const Index n = 32, m = 50;
    TestSignal sig = test_signal(n);
    NodeSet ns = make_node_set(generate_grid(GridKind::UniformRandom, m, n, 0.0, 4), n);
    CMatrix b_pre = nudft_type2_apply(ns, sig.coeffs);
    for (Index j = 0; j < m; ++j) {
        Complex direct(0.0, 0.0);
        for (Index k = -n / 2; k < n / 2; ++k)
            direct += sig.coeff(k) * unit_phase_pow(ns.p[j], static_cast<double>(k));
        const Complex pre = unit_phase_pow(ns.p[j], static_cast<double>(n) / 2.0) * direct;
        EXPECT_LT(std::abs(b_pre(j, 0) - pre), 1e-12);
    }
}

TEST(TestSignal, DenseEvaluationMatchesDirectSeries) {
    const Index n = 64, npts = 6 * n;
    TestSignal sig = test_signal(n);
    CVector s = evaluate_signal_dense(sig, npts);
    for (Index i : {Index(0), Index(17), Index(200), Index(383)}) {
        Complex direct(0.0, 0.0);
        const double pi_ = static_cast<double>(i) / static_cast<double>(npts);
        for (Index k = -n / 2; k < n / 2; ++k)
            direct += sig.coeff(k) * unit_phase_pow(pi_, static_cast<double>(k));
        EXPECT_LT(std::abs(s[i] - direct), 1e-11);
    }
}
