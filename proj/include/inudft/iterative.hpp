#ifndef INUDFT_ITERATIVE_HPP
#define INUDFT_ITERATIVE_HPP

#include <string>
#include <vector>

#include "inudft/transforms.hpp"

namespace inudft {

enum class IterativeMethod { CgNor, PcgNorStrang, FpAdjSinc, CgAdj, PcgAdjSinc };

inline const char* method_name(IterativeMethod m) {
    switch (m) {
        case IterativeMethod::CgNor: return "cg_nor";
        case IterativeMethod::PcgNorStrang: return "pcg_nor_strang";
        case IterativeMethod::FpAdjSinc: return "fp_adj_sinc";
        case IterativeMethod::CgAdj: return "cg_adj";
        case IterativeMethod::PcgAdjSinc: return "pcg_adj_sinc";
    }
    return "?";
}

inline bool parse_method(const std::string& s, IterativeMethod& out) {
    if (s == "cg_nor") out = IterativeMethod::CgNor;
    else if (s == "pcg_nor_strang") out = IterativeMethod::PcgNorStrang;
    else if (s == "fp_adj_sinc") out = IterativeMethod::FpAdjSinc;
    else if (s == "cg_adj") out = IterativeMethod::CgAdj;
    else if (s == "pcg_adj_sinc") out = IterativeMethod::PcgAdjSinc;
    else return false;
    return true;
}

inline Index default_maxit(IterativeMethod m) {
    switch (m) {
        case IterativeMethod::CgNor:
        case IterativeMethod::PcgNorStrang: return 10000;
        default: return 8000;
    }
}

struct IterativeReport {
    CVector x;
    Index iterations = 0;
    std::vector<double> residual_history;  // relative residuals, one per iteration
    bool converged = false;
};

/// Frobenius-optimal diagonal weights w_j = (VV*)_{jj} / (VV*VV*)_{jj}.
/// The numerator is n; the denominator is evaluated by grouping terms
/// along Toeplitz diagonals (a Fejer-kernel sum): one type-I transform
/// with unit strengths followed by one type-II-style evaluation.
inline RVector sinc2_weights(const NodeSet& nodes) {
    const Index m = nodes.m;
    const Index n = nodes.n;
    const CVector ones = CVector::Ones(m);
    const CVector t = nudft_type1_sums(nodes, ones, -(n - 1), n - 1);
    RVector w(m);
    for (Index j = 0; j < m; ++j) {
        Complex denom(0.0, 0.0);
        // sum over q of gamma_j^q (n - |q|) conj(t_q); t holds t_q = sum gamma^q
        Complex pw = unit_phase_pow(nodes.p[j], static_cast<double>(-(n - 1)));
        const Complex g = nodes.gamma[j];
        for (Index q = -(n - 1); q <= n - 1; ++q) {
            const double fejer = static_cast<double>(n) - std::abs(static_cast<double>(q));
            denom += pw * fejer * std::conj(t[q + n - 1]);
            pw *= g;
        }
        w[j] = static_cast<double>(n) / denom.real();
    }
    return w;
}

/// Strang circulant preconditioner from the central n diagonals of the
/// Toeplitz symbol: first column c_l = t_l for 0 <= l < ceil(n/2),
/// c_l = t_{l-n} above. Returns the circulant eigenvalues (the DFT of the
/// first column), with magnitudes floored at 1e-12 of the largest so the
/// preconditioner stays invertible.
inline CVector strang_preconditioner(const ToeplitzSymbol& sym) {
    const Index n = sym.n;
    CVector c(n);
    const Index half = (n + 1) / 2;
    for (Index l = 0; l < n; ++l) c[l] = l < half ? sym.at(l) : sym.at(l - n);
    CVector lam = fft_any(c, FftDirection::Forward);
    double lmax = 0.0;
    for (Index i = 0; i < n; ++i) lmax = std::max(lmax, std::abs(lam[i]));
    const double floor_mag = 1e-12 * lmax;
    for (Index i = 0; i < n; ++i) {
        const double a = std::abs(lam[i]);
        if (a == 0.0) lam[i] = Complex(floor_mag, 0.0);
        else if (a < floor_mag) lam[i] *= floor_mag / a;
    }
    return lam;
}

/// Circulant solve via FFT diagonalization (first-column convention).
inline CVector circulant_solve(const CVector& eigenvalues, const CVector& r) {
    CVector rh = fft_any(r, FftDirection::Forward);
    rh.array() /= eigenvalues.array();
    return fft_any(rh, FftDirection::Inverse);
}

namespace detail {

/// Dense V and V* applies (desk-scale reference path for the adjoint
/// family and for outer residuals).
inline CVector apply_V(const NodeSet& nodes, const CVector& x) {
    return nudft_type2_apply(nodes, x);
}

inline CVector apply_Vadj(const NodeSet& nodes, const CVector& y) {
    CVector x = CVector::Zero(nodes.n);
    for (Index j = 0; j < nodes.m; ++j) {
        const Complex gc = std::conj(nodes.gamma[j]);
        Complex pw(1.0, 0.0);
        for (Index k = 0; k < nodes.n; ++k) {
            x[k] += pw * y[j];
            pw *= gc;
        }
    }
    return x;
}

inline CVector apply_VVadj(const NodeSet& nodes, const CVector& z) {
    return apply_V(nodes, apply_Vadj(nodes, z));
}

}  // namespace detail

/// The five iterative baselines. Normal-family methods run CG on
/// V*V x = V*b with the padded-FFT Toeplitz apply and terminate on the
/// outer relative residual ||Vx - b||/||b||. Adjoint-family methods work
/// on V V* z = b (dense applies at desk scale), return x = V*z, and
/// terminate on ||VV*z - b||/||b||.
inline IterativeReport iterative_solve(IterativeMethod method, const NodeSet& nodes,
                                       const CVector& b, double tol, Index maxit) {
    if (!(tol > 0.0)) throw std::invalid_argument("iterative_solve: tol must be positive");
    if (maxit < 1) throw std::invalid_argument("iterative_solve: maxit must be >= 1");
    IterativeReport rep;
    const double bnorm = b.norm();
    if (bnorm == 0.0) {
        rep.x = CVector::Zero(nodes.n);
        rep.converged = true;
        return rep;
    }

    const bool normal_family =
        method == IterativeMethod::CgNor || method == IterativeMethod::PcgNorStrang;

    if (normal_family) {
        const ToeplitzSymbol sym = toeplitz_symbol(nodes);
        const ToeplitzOperator T(sym);
        const bool precond = method == IterativeMethod::PcgNorStrang;
        CVector lam;
        if (precond) lam = strang_preconditioner(sym);

        const CVector g = detail::apply_Vadj(nodes, b);  // V* b
        CVector x = CVector::Zero(nodes.n);
        CVector r = g;  // residual of the normal equations
        CVector z = precond ? circulant_solve(lam, r) : r;
        CVector p = z;
        Complex rz = r.dot(z);  // dot conjugates the first argument
        for (Index it = 1; it <= maxit; ++it) {
            const CVector Tp = T.apply(p);
            const Complex pTp = p.dot(Tp);
            const Complex alpha = rz / pTp;
            // inner system solved to machine level while the outer residual
            // sits at its floor (noisy data): stop instead of dividing by 0
            if (!std::isfinite(std::abs(alpha))) break;
            x += alpha * p;
            r -= alpha * Tp;
            const double outer = (detail::apply_V(nodes, x) - b).norm() / bnorm;
            rep.residual_history.push_back(outer);
            rep.iterations = it;
            if (outer <= tol) {
                rep.converged = true;
                break;
            }
            z = precond ? circulant_solve(lam, r) : r;
            const Complex rz_new = r.dot(z);
            p = z + (rz_new / rz).real() * p;
            rz = rz_new;
        }
        rep.x = x;
        return rep;
    }

    // adjoint family on V V* z = b
    CVector z = CVector::Zero(nodes.m);
    if (method == IterativeMethod::FpAdjSinc) {
        const RVector w = sinc2_weights(nodes);
        z = b;  // z_0 = b
        CVector r = detail::apply_VVadj(nodes, z) - b;
        if (r.norm() <= tol * bnorm) {
            rep.converged = true;
        } else {
            for (Index it = 1; it <= maxit; ++it) {
                z.array() -= w.array().cast<Complex>() * r.array();
                r = detail::apply_VVadj(nodes, z) - b;
                const double rel = r.norm() / bnorm;
                rep.residual_history.push_back(rel);
                rep.iterations = it;
                if (rel <= tol) {
                    rep.converged = true;
                    break;
                }
            }
        }
    } else {
        const bool precond = method == IterativeMethod::PcgAdjSinc;
        RVector w;
        if (precond) w = sinc2_weights(nodes);
        CVector r = b;  // r = b - VV* z with z = 0
        CVector s = precond ? CVector(w.array().cast<Complex>() * r.array()) : r;
        CVector p = s;
        Complex rs = r.dot(s);
        for (Index it = 1; it <= maxit; ++it) {
            const CVector Ap = detail::apply_VVadj(nodes, p);
            const Complex alpha = rs / p.dot(Ap);
            if (!std::isfinite(std::abs(alpha))) break;
            z += alpha * p;
            r -= alpha * Ap;
            const double rel = r.norm() / bnorm;
            rep.residual_history.push_back(rel);
            rep.iterations = it;
            if (rel <= tol) {
                rep.converged = true;
                break;
            }
            s = precond ? CVector(w.array().cast<Complex>() * r.array()) : r;
            const Complex rs_new = r.dot(s);
            p = s + (rs_new / rs).real() * p;
            rs = rs_new;
        }
    }
    rep.x = detail::apply_Vadj(nodes, z);
    return rep;
}

}  // namespace inudft

#endif  // INUDFT_ITERATIVE_HPP
