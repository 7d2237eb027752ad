#include <gtest/gtest.h>

#include "inudft/fft.hpp"
#include "test_support.hpp"

using namespace inudft;

TEST(Fft, ImpulseGivesAllOnes) {
    CVector x = CVector::Zero(4);
    x[0] = Complex(1.0, 0.0);
    CVector y = fft_pow2(x, FftDirection::Forward);
    for (Index i = 0; i < 4; ++i) {
        EXPECT_NEAR(y[i].real(), 1.0, 1e-15);
        EXPECT_NEAR(y[i].imag(), 0.0, 1e-15);
    }
}

TEST(Fft, LengthOneIsIdentity) {
    CVector x(1);
    x[0] = Complex(2.5, -1.25);
    EXPECT_EQ(fft_pow2(x, FftDirection::Forward)[0], x[0]);
    EXPECT_EQ(fft_pow2(x, FftDirection::Inverse)[0], x[0]);
}

TEST(Fft, RoundTripLength64) {
    CVector x = test::random_cvector(64, 7);
    CVector y = fft_pow2(fft_pow2(x, FftDirection::Forward), FftDirection::Inverse);
    EXPECT_LT((y - x).norm() / x.norm(), 1e-14);
}

TEST(Fft, NonPowerOfTwoLengthRejected) {
    CVector x = CVector::Zero(12);
    EXPECT_THROW(fft_pow2(x, FftDirection::Forward), std::invalid_argument);
}

TEST(Fft, MatchesDenseDft) {
    for (Index n : {8, 12, 17, 30, 64, 100}) {
        CVector x = test::random_cvector(n, 100 + static_cast<uint64_t>(n));
        CVector fwd = fft_any(x, FftDirection::Forward);
        CVector ref = test::dense_dft(x, -1);
        EXPECT_LT((fwd - ref).norm() / ref.norm(), 1e-12) << "n=" << n;
        CVector rt = fft_any(fwd, FftDirection::Inverse);
        EXPECT_LT((rt - x).norm() / x.norm(), 1e-12) << "n=" << n;
    }
}
