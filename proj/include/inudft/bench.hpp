#ifndef INUDFT_BENCH_HPP
#define INUDFT_BENCH_HPP

#include <chrono>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "inudft/grids.hpp"
#include "inudft/iterative.hpp"
#include "inudft/pipeline.hpp"

namespace inudft {

/// One benchmark measurement: a (grid, method) cell of the comparison.
struct BenchResult {
    std::string method;
    std::string grid;
    Index m = 0;
    Index n = 0;
    double tol = 0.0;
    double factor_s = 0.0;
    double solve_s_per_rhs = 0.0;
    double rel_residual = 0.0;
    std::optional<Index> iterations;
    std::optional<double> cond2;
};

namespace detail {

inline double round_sig3(double v) {
    if (v == 0.0 || !std::isfinite(v)) return v;
    const double mag = std::pow(10.0, std::floor(std::log10(std::abs(v))) - 2.0);
    return std::round(v / mag) * mag;
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline std::string num_field(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

}  // namespace detail

/// Deterministic CSV emission, header first, rows in input order, empty
/// fields for absent optionals. Numeric fields carry 17 significant
/// digits so a parse-back reproduces them exactly.
inline void emit_bench_csv(const std::vector<BenchResult>& results, std::ostream& os) {
    if (results.empty()) throw std::invalid_argument("emit_bench_csv: no results");
    os << "method,grid,m,n,tol,factor_s,solve_s_per_rhs,rel_residual,iterations,cond2\n";
    for (const BenchResult& r : results) {
        os << detail::csv_field(r.method) << ',' << detail::csv_field(r.grid) << ',' << r.m
           << ',' << r.n << ',' << detail::num_field(r.tol) << ','
           << detail::num_field(r.factor_s) << ',' << detail::num_field(r.solve_s_per_rhs)
           << ',' << detail::num_field(r.rel_residual) << ',';
        if (r.iterations) os << *r.iterations;
        os << ',';
        if (r.cond2) os << detail::num_field(*r.cond2);
        os << '\n';
    }
    if (!os) throw std::runtime_error("emit_bench_csv: write failure");
}

/// kappa_2(V) through the Hermitian eigenvalues of the Toeplitz matrix
/// V*V (square root of its extreme eigenvalue ratio). Cost O(mn + n^3).
inline double condition_number(const NodeSet& nodes) {
    const ToeplitzSymbol sym = toeplitz_symbol(nodes);
    CMatrix T(nodes.n, nodes.n);
    for (Index i = 0; i < nodes.n; ++i)
        for (Index j = 0; j < nodes.n; ++j) T(i, j) = sym.at(j - i);
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(T);
    const double lo = eig.eigenvalues()(0);
    const double hi = eig.eigenvalues()(nodes.n - 1);
    if (lo <= 0.0) return std::numeric_limits<double>::infinity();
    return std::sqrt(hi / lo);
}

struct BenchConfig {
    Index m = 512;
    Index n = 256;
    double tol = 1e-7;       // iterative stopping tolerance
    double epsilon = 1e-10;  // direct-solver HSS tolerance
    Index rhs_count = 1;
    uint64_t seed = 0;
    double theta = 0.5;
    bool with_cond = false;
    Index cond_entry_limit = Index(1) << 22;  // skip kappa_2 beyond this m*n
};

/// Runs one (grid, method) cell: consistent right-hand sides from random
/// coefficients, the requested solver, timings on a monotonic clock
/// rounded to 3 significant digits.
inline BenchResult run_bench_cell(GridKind kind, const std::string& method,
                                  const BenchConfig& cfg) {
    BenchResult res;
    res.method = method;
    res.grid = grid_name(kind);
    res.m = cfg.m;
    res.n = cfg.n;

    RVector p = generate_grid(kind, cfg.m, cfg.n, cfg.theta, cfg.seed);
    NodeSet nodes = make_node_set(p, cfg.n);

    // consistent data from unit-variance random coefficients
    std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
    CMatrix X_true(cfg.n, cfg.rhs_count);
    for (Index j = 0; j < cfg.rhs_count; ++j)
        for (Index i = 0; i < cfg.n; ++i) {
            const double re = detail::gaussian(rng);
            const double im = detail::gaussian(rng);
            X_true(i, j) = Complex(re, im);
        }
    CMatrix B_node = nudft_type2_apply(nodes, X_true);

    if (method == "direct") {
        res.tol = cfg.epsilon;
        CMatrix B_raw(cfg.m, cfg.rhs_count);
        for (Index i = 0; i < cfg.m; ++i) B_raw.row(nodes.perm[i]) = B_node.row(i);
        const double t0 = detail::now_seconds();
        InudftFactorization fact = inudft_factor(p, cfg.n, cfg.epsilon);
        const double t1 = detail::now_seconds();
        CMatrix X = inudft_solve(fact, B_raw);
        const double t2 = detail::now_seconds();
        res.factor_s = detail::round_sig3(t1 - t0);
        res.solve_s_per_rhs =
            detail::round_sig3((t2 - t1) / static_cast<double>(cfg.rhs_count));
        res.rel_residual = (nudft_type2_apply(nodes, X.col(0)) - B_node.col(0)).norm() /
                           B_node.col(0).norm();
    } else {
        IterativeMethod im;
        if (!parse_method(method, im))
            throw std::invalid_argument("unknown method: " + method);
        res.tol = cfg.tol;
        const double t0 = detail::now_seconds();
        IterativeReport rep;
        for (Index j = 0; j < cfg.rhs_count; ++j)
            rep = iterative_solve(im, nodes, B_node.col(j), cfg.tol, default_maxit(im));
        const double t1 = detail::now_seconds();
        res.factor_s = 0.0;
        res.solve_s_per_rhs =
            detail::round_sig3((t1 - t0) / static_cast<double>(cfg.rhs_count));
        res.rel_residual =
            (nudft_type2_apply(nodes, rep.x) - B_node.col(cfg.rhs_count - 1)).norm() /
            B_node.col(cfg.rhs_count - 1).norm();
        res.iterations = rep.iterations;
    }
    if (cfg.with_cond && cfg.m * cfg.n <= cfg.cond_entry_limit)
        res.cond2 = condition_number(nodes);
    return res;
}

}  // namespace inudft

#endif  // INUDFT_BENCH_HPP
