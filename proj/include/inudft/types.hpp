#ifndef INUDFT_TYPES_HPP
#define INUDFT_TYPES_HPP

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace inudft {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;
using Index = Eigen::Index;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Thrown when a numerical procedure cannot continue (breakdown,
/// rank deficiency, shift collision). Distinct from argument errors
/// so callers can map it to a dedicated exit status.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Fractional part of k*x in [-1/2, 1/2], computed with an exact
/// two-product so the reduction does not lose bits for large k.
inline double wrapped_product(double k, double x) {
    const double hi = k * x;
    const double lo = std::fma(k, x, -hi);
    double r = (hi - std::round(hi)) + lo;
    if (r > 0.5) r -= 1.0;
    if (r <= -0.5) r += 1.0;
    return r;
}

/// e^{-2 pi i t} for t in [0, 1).
inline Complex unit_phase(double t) {
    return std::polar(1.0, -kTwoPi * t);
}

/// e^{-2 pi i k p}, stable for large |k|.
inline Complex unit_phase_pow(double p, double k) {
    return std::polar(1.0, -kTwoPi * wrapped_product(k, p));
}

/// gamma^n - 1 for gamma = e^{-2 pi i p}, evaluated as
/// -2 sin(pi r)(sin(pi r) + i cos(pi r)) with r = n p mod 1.
/// Keeps full absolute accuracy when gamma^n is close to 1.
inline Complex unit_phase_pow_minus_one(double p, double n) {
    const double r = wrapped_product(n, p);
    const double s = std::sin(kPi * r);
    const double c = std::cos(kPi * r);
    return Complex(-2.0 * s * s, -2.0 * s * c);
}

}  // namespace inudft

#endif  // INUDFT_TYPES_HPP
