#ifndef INUDFT_CLI_HPP
#define INUDFT_CLI_HPP

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "inudft/bench.hpp"
#include "inudft/io.hpp"

namespace inudft {

namespace cli_detail {

inline uint64_t default_seed() {
    if (const char* env = std::getenv("INUDFT_SEED")) {
        try {
            return std::stoull(env);
        } catch (...) {
        }
    }
    return 0;
}

inline GridKind require_grid_kind(const std::string& s) {
    GridKind kind;
    if (!parse_grid_kind(s, kind))
        throw CLI::ValidationError("--kind/--grid", "unknown grid '" + s + "'");
    return kind;
}

struct NoisyRhs {
    CMatrix b_raw;      // prephased samples, input row order
    NodeSet nodes;
    TestSignal signal;
};

/// Build the reconstruction problem of the imaging experiment: sample the
/// filtered signal on a grid, prephase to the 0..n-1 convention, and
/// optionally add complex Gaussian noise.
inline NoisyRhs make_reconstruction_rhs(GridKind kind, Index m, Index n, double theta,
                                        uint64_t seed, double noise) {
    NoisyRhs out;
    out.signal = test_signal(n);
    RVector p = generate_grid(kind, m, n, theta, seed);
    out.nodes = make_node_set(p, n);
    CMatrix b_node = nudft_type2_apply(out.nodes, out.signal.coeffs);
    if (noise > 0.0) {
        std::mt19937_64 rng(seed ^ 0xda3e39cb94b95bdbULL);
        for (Index i = 0; i < m; ++i) {
            const double re = noise * detail::gaussian(rng);
            const double im = noise * detail::gaussian(rng);
            b_node(i, 0) += Complex(re, im);
        }
    }
    out.b_raw.resize(m, 1);
    for (Index i = 0; i < m; ++i) out.b_raw.row(out.nodes.perm[i]) = b_node.row(i);
    return out;
}

}  // namespace cli_detail

/// Entry point shared by the binary and the in-process tests.
/// Exit codes: 0 success, 1 usage error, 2 numerical failure.
inline int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Direct and iterative solvers for the inverse type-II "
                 "nonuniform discrete Fourier transform"};
    app.require_subcommand(1);

    // ---- grid ----
    auto* grid_cmd = app.add_subcommand("grid", "generate a node file");
    std::string grid_kind = "jittered", grid_out;
    Index gm = 512, gn = 256;
    double gtheta = 0.5;
    uint64_t gseed = cli_detail::default_seed();
    grid_cmd->add_option("--kind", grid_kind, "jittered|chebyshev|uniform_random|random_gap");
    grid_cmd->add_option("--m", gm, "number of sample locations")->required();
    grid_cmd->add_option("--n", gn, "number of frequencies")->required();
    grid_cmd->add_option("--theta", gtheta, "jitter parameter");
    grid_cmd->add_option("--seed", gseed, "PRNG seed (default from INUDFT_SEED)");
    grid_cmd->add_option("--out", grid_out, "output node file")->required();

    // ---- solve ----
    auto* solve_cmd = app.add_subcommand("solve", "one-shot least-squares solve");
    std::string s_nodes, s_rhs, s_out;
    Index sn = 0;
    double s_tol = 1e-10;
    solve_cmd->add_option("--nodes", s_nodes, "node file")->required();
    solve_cmd->add_option("--n", sn, "number of frequencies")->required();
    solve_cmd->add_option("--rhs", s_rhs, "right-hand side csv (re,im pairs)")->required();
    solve_cmd->add_option("--tol", s_tol, "HSS tolerance");
    solve_cmd->add_option("--out", s_out, "solution csv")->required();

    // ---- factor ----
    auto* factor_cmd = app.add_subcommand("factor", "factor once, reuse via apply");
    std::string f_nodes, f_out;
    Index fn = 0;
    double f_tol = 1e-10;
    factor_cmd->add_option("--nodes", f_nodes, "node file")->required();
    factor_cmd->add_option("--n", fn, "number of frequencies")->required();
    factor_cmd->add_option("--tol", f_tol, "HSS tolerance");
    factor_cmd->add_option("--out", f_out, "factorization container")->required();

    // ---- apply ----
    auto* apply_cmd = app.add_subcommand("apply", "solve with a stored factorization");
    std::string a_factor, a_rhs, a_out;
    apply_cmd->add_option("--factor", a_factor, "factorization container")->required();
    apply_cmd->add_option("--rhs", a_rhs, "right-hand side csv")->required();
    apply_cmd->add_option("--out", a_out, "solution csv")->required();

    // ---- bench ----
    auto* bench_cmd = app.add_subcommand("bench", "benchmark harness");
    std::string b_grids = "1,2,3,4", b_methods = "direct", b_out;
    Index bm = 512, bn = 256, b_rhs = 1;
    double b_tol = 1e-7, b_eps = 1e-10, b_theta = 0.5;
    uint64_t b_seed = cli_detail::default_seed();
    bool b_cond = false;
    bench_cmd->add_option("--grids", b_grids, "comma list of grid ids or names");
    bench_cmd->add_option("--methods", b_methods,
                          "comma list: direct,cg_nor,pcg_nor_strang,fp_adj_sinc,cg_adj,"
                          "pcg_adj_sinc");
    bench_cmd->add_option("--m", bm)->required();
    bench_cmd->add_option("--n", bn)->required();
    bench_cmd->add_option("--tol", b_tol, "iterative stopping tolerance");
    bench_cmd->add_option("--eps", b_eps, "direct-solver HSS tolerance");
    bench_cmd->add_option("--rhs", b_rhs, "right-hand sides per cell");
    bench_cmd->add_option("--theta", b_theta, "jitter parameter for grid 1");
    bench_cmd->add_option("--seed", b_seed);
    bench_cmd->add_flag("--cond", b_cond, "compute kappa_2(V) when m*n is small");
    bench_cmd->add_option("--out", b_out, "CSV path (default stdout)");

    // ---- reconstruct ----
    auto* rec_cmd = app.add_subcommand("reconstruct", "signal reconstruction experiment");
    std::string r_grid = "4", r_method = "direct", r_out, r_coeffs_out;
    Index rm = 922, rn = 512, r_maxit = 0;
    double r_tol = 1e-10, r_noise = 0.0, r_theta = 0.5;
    uint64_t r_seed = cli_detail::default_seed();
    rec_cmd->add_option("--grid", r_grid, "grid id or name");
    rec_cmd->add_option("--m", rm)->required();
    rec_cmd->add_option("--n", rn)->required();
    rec_cmd->add_option("--method", r_method,
                        "direct or one of the iterative methods");
    rec_cmd->add_option("--tol", r_tol, "solver tolerance");
    rec_cmd->add_option("--maxit", r_maxit, "iteration cap (iterative methods)");
    rec_cmd->add_option("--noise", r_noise, "complex Gaussian noise standard deviation");
    rec_cmd->add_option("--theta", r_theta, "jitter parameter for grid 1");
    rec_cmd->add_option("--seed", r_seed);
    rec_cmd->add_option("--out", r_out, "dense 6n-point evaluation csv")->required();
    rec_cmd->add_option("--coeffs-out", r_coeffs_out, "recovered coefficients csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help and friends
            std::cout << app.help();
            return 0;
        }
        std::cerr << e.what() << "\n";
        return 1;
    }

    try {
        if (*grid_cmd) {
            const GridKind kind = cli_detail::require_grid_kind(grid_kind);
            RVector p = generate_grid(kind, gm, gn, gtheta, gseed);
            std::ofstream os(grid_out);
            if (!os) throw std::runtime_error("cannot open " + grid_out);
            io::write_nodes(os, p);
        } else if (*solve_cmd) {
            std::ifstream nid(s_nodes);
            if (!nid) throw std::runtime_error("cannot open " + s_nodes);
            RVector p = io::read_nodes(nid);
            std::ifstream rid(s_rhs);
            if (!rid) throw std::runtime_error("cannot open " + s_rhs);
            CMatrix b = io::read_complex_csv(rid);
            CMatrix x = inudft_one_shot(p, sn, b, s_tol);
            std::ofstream os(s_out);
            if (!os) throw std::runtime_error("cannot open " + s_out);
            io::write_complex_csv(os, x);
        } else if (*factor_cmd) {
            std::ifstream nid(f_nodes);
            if (!nid) throw std::runtime_error("cannot open " + f_nodes);
            RVector p = io::read_nodes(nid);
            InudftFactorization fact = inudft_factor(p, fn, f_tol);
            io::save_factorization(f_out, fact);
        } else if (*apply_cmd) {
            InudftFactorization fact = io::load_factorization(a_factor);
            std::ifstream rid(a_rhs);
            if (!rid) throw std::runtime_error("cannot open " + a_rhs);
            CMatrix b = io::read_complex_csv(rid);
            CMatrix x = inudft_solve(fact, b);
            std::ofstream os(a_out);
            if (!os) throw std::runtime_error("cannot open " + a_out);
            io::write_complex_csv(os, x);
        } else if (*bench_cmd) {
            std::vector<BenchResult> results;
            std::stringstream gs(b_grids);
            std::string gtok;
            std::vector<GridKind> kinds;
            while (std::getline(gs, gtok, ','))
                kinds.push_back(cli_detail::require_grid_kind(gtok));
            std::vector<std::string> methods;
            std::stringstream ms(b_methods);
            std::string mtok;
            while (std::getline(ms, mtok, ',')) methods.push_back(mtok);
            BenchConfig cfg;
            cfg.m = bm;
            cfg.n = bn;
            cfg.tol = b_tol;
            cfg.epsilon = b_eps;
            cfg.rhs_count = b_rhs;
            cfg.seed = b_seed;
            cfg.theta = b_theta;
            cfg.with_cond = b_cond;
            for (GridKind kind : kinds)
                for (const std::string& method : methods)
                    results.push_back(run_bench_cell(kind, method, cfg));
            if (b_out.empty()) {
                emit_bench_csv(results, std::cout);
            } else {
                std::ofstream os(b_out);
                if (!os) throw std::runtime_error("cannot open " + b_out);
                emit_bench_csv(results, os);
            }
        } else if (*rec_cmd) {
            const GridKind kind = cli_detail::require_grid_kind(r_grid);
            auto prob = cli_detail::make_reconstruction_rhs(kind, rm, rn, r_theta, r_seed,
                                                            r_noise);
            CMatrix x;
            if (r_method == "direct") {
                RVector p_raw(rm);
                for (Index i = 0; i < rm; ++i)
                    p_raw[prob.nodes.perm[i]] = prob.nodes.p[i];
                x = inudft_one_shot(p_raw, rn, prob.b_raw, r_tol);
            } else {
                IterativeMethod im;
                if (!parse_method(r_method, im))
                    throw CLI::ValidationError("--method", "unknown method " + r_method);
                CMatrix b_node = prob.nodes.gather_rows(prob.b_raw);
                const Index maxit = r_maxit > 0 ? r_maxit : default_maxit(im);
                IterativeReport rep =
                    iterative_solve(im, prob.nodes, b_node.col(0), r_tol, maxit);
                x = rep.x;
            }
            // back to symmetric indexing and a dense 6n-point evaluation
            TestSignal recovered;
            recovered.n = rn;
            recovered.coeffs = x.col(0);
            CVector dense = evaluate_signal_dense(recovered, 6 * rn);
            std::ofstream os(r_out);
            if (!os) throw std::runtime_error("cannot open " + r_out);
            io::write_complex_csv(os, dense);
            if (!r_coeffs_out.empty()) {
                std::ofstream cs(r_coeffs_out);
                if (!cs) throw std::runtime_error("cannot open " + r_coeffs_out);
                io::write_complex_csv(cs, x);
            }
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace inudft

#endif  // INUDFT_CLI_HPP
