#ifndef INUDFT_IO_HPP
#define INUDFT_IO_HPP

#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "inudft/pipeline.hpp"

namespace inudft {

/// Binary container for factorizations: magic "HSS1", little-endian,
/// explicit dimension headers, optional "URV1" section with the
/// least-squares factors. Matrices are stored column-major as re/im
/// double pairs.
namespace io {

namespace detail {

inline void put_u64(std::ostream& os, uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    os.write(reinterpret_cast<const char*>(b), 8);
}

inline uint64_t get_u64(std::istream& is) {
    unsigned char b[8] = {};
    is.read(reinterpret_cast<char*>(b), 8);
    if (!is) throw std::runtime_error("binary container: truncated input");
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(b[i]) << (8 * i);
    return v;
}

inline void put_i64(std::ostream& os, int64_t v) { put_u64(os, static_cast<uint64_t>(v)); }
inline int64_t get_i64(std::istream& is) { return static_cast<int64_t>(get_u64(is)); }

inline void put_f64(std::ostream& os, double v) {
    uint64_t bits;
    static_assert(sizeof(bits) == sizeof(v));
    std::memcpy(&bits, &v, 8);
    put_u64(os, bits);
}

inline double get_f64(std::istream& is) {
    const uint64_t bits = get_u64(is);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

inline void put_cmatrix(std::ostream& os, const CMatrix& a) {
    put_i64(os, a.rows());
    put_i64(os, a.cols());
    for (Index j = 0; j < a.cols(); ++j)
        for (Index i = 0; i < a.rows(); ++i) {
            put_f64(os, a(i, j).real());
            put_f64(os, a(i, j).imag());
        }
}

inline CMatrix get_cmatrix(std::istream& is) {
    const Index rows = get_i64(is);
    const Index cols = get_i64(is);
    CMatrix a(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) {
            const double re = get_f64(is);
            const double im = get_f64(is);
            a(i, j) = Complex(re, im);
        }
    return a;
}

inline void put_cvector(std::ostream& os, const CVector& v) { put_cmatrix(os, v); }
inline CVector get_cvector(std::istream& is) { return get_cmatrix(is); }

inline void put_index_list(std::ostream& os, const std::vector<Index>& v) {
    put_u64(os, v.size());
    for (Index x : v) put_i64(os, x);
}

inline std::vector<Index> get_index_list(std::istream& is) {
    std::vector<Index> v(get_u64(is));
    for (auto& x : v) x = get_i64(is);
    return v;
}

inline void put_compactq(std::ostream& os, const CompactQ& q) {
    put_i64(os, q.rows());
    put_i64(os, q.packed().cols());
    put_cmatrix(os, q.packed());
    put_cvector(os, q.tau());
}

inline CompactQ get_compactq(std::istream& is) {
    const Index rows = get_i64(is);
    const Index cols = get_i64(is);
    CMatrix packed = get_cmatrix(is);
    CVector tau = get_cvector(is);
    CompactQ q;
    q.set_packed(std::move(packed), std::move(tau), rows, cols);
    return q;
}

}  // namespace detail

inline constexpr char kMagic[4] = {'H', 'S', 'S', '1'};
inline constexpr char kUrvTag[4] = {'U', 'R', 'V', '1'};
inline constexpr uint64_t kVersion = 1;

inline void write_hss(std::ostream& os, const HssMatrix& H) {
    using namespace detail;
    put_u64(os, static_cast<uint64_t>(H.num_nodes()));
    put_i64(os, H.m);
    put_i64(os, H.n);
    for (Index t = 0; t < H.num_nodes(); ++t) {
        const HssTreeNode& nd = H.node(t);
        put_i64(os, nd.label);
        put_i64(os, nd.parent);
        put_i64(os, nd.left);
        put_i64(os, nd.right);
        put_i64(os, nd.kappa_lo);
        put_i64(os, nd.kappa_hi);
        put_i64(os, nd.row_begin);
        put_i64(os, nd.row_end);
        put_i64(os, nd.col_begin);
        put_i64(os, nd.col_end);
        const size_t s = static_cast<size_t>(t);
        put_cmatrix(os, H.D[s]);
        put_cmatrix(os, H.U[s]);
        put_cmatrix(os, H.V[s]);
        put_cmatrix(os, H.Rl[s]);
        put_cmatrix(os, H.Rr[s]);
        put_cmatrix(os, H.Wl[s]);
        put_cmatrix(os, H.Wr[s]);
        put_cmatrix(os, H.Blr[s]);
        put_cmatrix(os, H.Brl[s]);
        put_index_list(os, H.Srow[s]);
        put_index_list(os, H.Scol[s]);
    }
}

inline HssMatrix read_hss(std::istream& is) {
    using namespace detail;
    HssMatrix H;
    const uint64_t nn = get_u64(is);
    H.m = get_i64(is);
    H.n = get_i64(is);
    H.tree.m = H.m;
    H.tree.n = H.n;
    H.tree.nodes.resize(nn);
    H.resize_storage();
    for (uint64_t t = 0; t < nn; ++t) {
        HssTreeNode& nd = H.tree.nodes[t];
        nd.label = get_i64(is);
        nd.parent = get_i64(is);
        nd.left = get_i64(is);
        nd.right = get_i64(is);
        nd.kappa_lo = get_i64(is);
        nd.kappa_hi = get_i64(is);
        nd.row_begin = get_i64(is);
        nd.row_end = get_i64(is);
        nd.col_begin = get_i64(is);
        nd.col_end = get_i64(is);
        H.D[t] = get_cmatrix(is);
        H.U[t] = get_cmatrix(is);
        H.V[t] = get_cmatrix(is);
        H.Rl[t] = get_cmatrix(is);
        H.Rr[t] = get_cmatrix(is);
        H.Wl[t] = get_cmatrix(is);
        H.Wr[t] = get_cmatrix(is);
        H.Blr[t] = get_cmatrix(is);
        H.Brl[t] = get_cmatrix(is);
        H.Srow[t] = get_index_list(is);
        H.Scol[t] = get_index_list(is);
    }
    return H;
}

inline void write_urv(std::ostream& os, const UrvFactorization& F) {
    using namespace detail;
    os.write(kUrvTag, 4);
    put_u64(os, F.nodes.size());
    put_i64(os, F.m);
    put_i64(os, F.n);
    put_f64(os, F.srf);
    put_i64(os, F.flops);
    for (const UrvNode& nd : F.nodes) {
        put_i64(os, nd.label);
        put_i64(os, nd.left);
        put_i64(os, nd.right);
        put_i64(os, nd.parent);
        put_u64(os, nd.leaf ? 1 : 0);
        put_i64(os, nd.row_begin);
        put_i64(os, nd.row_end);
        put_i64(os, nd.col_begin);
        put_i64(os, nd.col_end);
        put_i64(os, nd.n_t);
        put_i64(os, nd.m_t);
        put_i64(os, nd.mt_red);
        put_i64(os, nd.ku);
        put_i64(os, nd.kv);
        put_u64(os, nd.has_omega ? 1 : 0);
        put_compactq(os, nd.omega);
        put_compactq(os, nd.pq);
        put_compactq(os, nd.qt);
        put_cmatrix(os, nd.D11);
        put_cmatrix(os, nd.D12);
        put_cmatrix(os, nd.U1);
        put_cmatrix(os, nd.Vbar);
        put_cmatrix(os, nd.Blr);
        put_cmatrix(os, nd.Brl);
        put_cmatrix(os, nd.Rl);
        put_cmatrix(os, nd.Rr);
    }
}

inline UrvFactorization read_urv(std::istream& is) {
    using namespace detail;
    char tag[4];
    is.read(tag, 4);
    if (std::memcmp(tag, kUrvTag, 4) != 0)
        throw std::runtime_error("read_urv: bad section tag");
    UrvFactorization F;
    const uint64_t nn = get_u64(is);
    F.m = get_i64(is);
    F.n = get_i64(is);
    F.srf = get_f64(is);
    F.flops = get_i64(is);
    F.nodes.resize(nn);
    for (UrvNode& nd : F.nodes) {
        nd.label = get_i64(is);
        nd.left = get_i64(is);
        nd.right = get_i64(is);
        nd.parent = get_i64(is);
        nd.leaf = get_u64(is) != 0;
        nd.row_begin = get_i64(is);
        nd.row_end = get_i64(is);
        nd.col_begin = get_i64(is);
        nd.col_end = get_i64(is);
        nd.n_t = get_i64(is);
        nd.m_t = get_i64(is);
        nd.mt_red = get_i64(is);
        nd.ku = get_i64(is);
        nd.kv = get_i64(is);
        nd.has_omega = get_u64(is) != 0;
        nd.omega = get_compactq(is);
        nd.pq = get_compactq(is);
        nd.qt = get_compactq(is);
        nd.D11 = get_cmatrix(is);
        nd.D12 = get_cmatrix(is);
        nd.U1 = get_cmatrix(is);
        nd.Vbar = get_cmatrix(is);
        nd.Blr = get_cmatrix(is);
        nd.Brl = get_cmatrix(is);
        nd.Rl = get_cmatrix(is);
        nd.Rr = get_cmatrix(is);
    }
    return F;
}

/// Full factorization container: node set, HSS generators, URV factors.
inline void write_factorization(std::ostream& os, const InudftFactorization& fact) {
    using namespace detail;
    os.write(kMagic, 4);
    put_u64(os, kVersion);
    put_i64(os, fact.m());
    put_i64(os, fact.n());
    put_f64(os, fact.epsilon);
    // sample locations in original input order; the node set is rebuilt
    // deterministically on load
    RVector p_raw(fact.m());
    for (Index i = 0; i < fact.m(); ++i) p_raw[fact.nodes.perm[i]] = fact.nodes.p[i];
    for (Index i = 0; i < fact.m(); ++i) put_f64(os, p_raw[i]);
    put_cvector(os, fact.w);
    write_hss(os, fact.H);
    write_urv(os, fact.urv);
}

inline InudftFactorization read_factorization(std::istream& is) {
    using namespace detail;
    char magic[4];
    is.read(magic, 4);
    if (std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("read_factorization: bad magic bytes");
    const uint64_t version = get_u64(is);
    if (version != kVersion)
        throw std::runtime_error("read_factorization: unsupported version " +
                                 std::to_string(version));
    InudftFactorization fact;
    const Index m = get_i64(is);
    const Index n = get_i64(is);
    fact.epsilon = get_f64(is);
    RVector p_raw(m);
    for (Index i = 0; i < m; ++i) p_raw[i] = get_f64(is);
    fact.nodes = make_node_set(p_raw, n);
    fact.w = get_cvector(is);
    fact.H = read_hss(is);
    fact.urv = read_urv(is);
    if (!is) throw std::runtime_error("read_factorization: truncated file");
    return fact;
}

inline void save_factorization(const std::string& path, const InudftFactorization& fact) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    write_factorization(os, fact);
    if (!os) throw std::runtime_error("failed writing " + path);
}

inline InudftFactorization load_factorization(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    return read_factorization(is);
}

/// Node file: UTF-8 text, one sample location per line at 17 significant
/// digits (full double round trip).
inline void write_nodes(std::ostream& os, const RVector& p) {
    char buf[64];
    for (Index i = 0; i < p.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g\n", p[i]);
        os << buf;
    }
}

inline RVector read_nodes(std::istream& is) {
    std::vector<double> vals;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        vals.push_back(std::stod(line));
    }
    RVector p(static_cast<Index>(vals.size()));
    for (size_t i = 0; i < vals.size(); ++i) p[static_cast<Index>(i)] = vals[i];
    return p;
}

/// Right-hand sides and solutions: CSV with a re,im column pair per
/// vector, one row per sample (or coefficient).
inline void write_complex_csv(std::ostream& os, const CMatrix& a) {
    char buf[64];
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            if (j > 0) os << ',';
            std::snprintf(buf, sizeof(buf), "%.17g", a(i, j).real());
            os << buf << ',';
            std::snprintf(buf, sizeof(buf), "%.17g", a(i, j).imag());
            os << buf;
        }
        os << '\n';
    }
}

inline CMatrix read_complex_csv(std::istream& is) {
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<double> fields;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) fields.push_back(std::stod(cell));
        if (fields.size() % 2 != 0)
            throw std::runtime_error("complex csv: odd field count on a row");
        if (!rows.empty() && fields.size() != rows.front().size())
            throw std::runtime_error("complex csv: ragged rows");
        rows.push_back(std::move(fields));
    }
    if (rows.empty()) return CMatrix(0, 0);
    const Index m = static_cast<Index>(rows.size());
    const Index r = static_cast<Index>(rows.front().size() / 2);
    CMatrix a(m, r);
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < r; ++j)
            a(i, j) = Complex(rows[static_cast<size_t>(i)][static_cast<size_t>(2 * j)],
                              rows[static_cast<size_t>(i)][static_cast<size_t>(2 * j + 1)]);
    return a;
}

}  // namespace io
}  // namespace inudft

#endif  // INUDFT_IO_HPP
