#include "qldpc/alist.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qldpc {

namespace {

long long next_int(std::istream &in, const char *what) {
    long long v;
    if (!(in >> v))
        throw std::runtime_error(std::string("alist: expected integer (") + what + ")");
    return v;
}

}  // namespace

SparseBinaryMatrix read_alist(std::istream &in) {
    long long n = next_int(in, "N");
    long long m = next_int(in, "M");
    if (n <= 0 || m <= 0)
        throw std::runtime_error("alist: non-positive dimensions");
    long long max_col = next_int(in, "max col degree");
    long long max_row = next_int(in, "max row degree");
    if (max_col < 0 || max_row < 0)
        throw std::runtime_error("alist: negative degree");

    std::vector<long long> col_deg(static_cast<std::size_t>(n));
    for (auto &d : col_deg) {
        d = next_int(in, "column degree");
        if (d < 0 || d > max_col)
            throw std::runtime_error("alist: column degree out of range");
    }
    std::vector<long long> row_deg(static_cast<std::size_t>(m));
    for (auto &d : row_deg) {
        d = next_int(in, "row degree");
        if (d < 0 || d > max_row)
            throw std::runtime_error("alist: row degree out of range");
    }

    // Column lists: read max_col entries per column, drop padding zeros.
    std::vector<std::vector<std::uint32_t>> cols(static_cast<std::size_t>(n));
    for (long long j = 0; j < n; ++j) {
        long long seen = 0;
        for (long long k = 0; k < max_col; ++k) {
            long long r = next_int(in, "column entry");
            if (r == 0)
                continue;
            if (r < 1 || r > m)
                throw std::runtime_error("alist: row index out of range in column list");
            cols[static_cast<std::size_t>(j)].push_back(static_cast<std::uint32_t>(r - 1));
            ++seen;
        }
        if (seen != col_deg[static_cast<std::size_t>(j)])
            throw std::runtime_error("alist: column entry count disagrees with declared degree");
    }

    std::vector<std::vector<std::uint32_t>> rows(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
        long long seen = 0;
        for (long long k = 0; k < max_row; ++k) {
            long long c = next_int(in, "row entry");
            if (c == 0)
                continue;
            if (c < 1 || c > n)
                throw std::runtime_error("alist: column index out of range in row list");
            rows[static_cast<std::size_t>(i)].push_back(static_cast<std::uint32_t>(c - 1));
            ++seen;
        }
        if (seen != row_deg[static_cast<std::size_t>(i)])
            throw std::runtime_error("alist: row entry count disagrees with declared degree");
    }

    auto mat = SparseBinaryMatrix::from_rows(static_cast<std::uint32_t>(m),
                                             static_cast<std::uint32_t>(n), std::move(rows));
    // Cross-check the column lists against the row-derived adjacency.
    for (long long j = 0; j < n; ++j) {
        auto want = cols[static_cast<std::size_t>(j)];
        std::sort(want.begin(), want.end());
        if (want != mat.col_support(static_cast<std::uint32_t>(j)))
            throw std::runtime_error("alist: row and column lists describe different matrices");
    }
    return mat;
}

SparseBinaryMatrix read_alist_file(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("alist: cannot open " + path);
    return read_alist(in);
}

void write_alist(std::ostream &out, const SparseBinaryMatrix &m) {
    const std::uint32_t n = m.n_cols(), rows = m.n_rows();
    std::size_t max_col = 0, max_row = 0;
    for (std::uint32_t j = 0; j < n; ++j)
        max_col = std::max(max_col, m.col_support(j).size());
    for (std::uint32_t i = 0; i < rows; ++i)
        max_row = std::max(max_row, m.row_support(i).size());

    out << n << " " << rows << "\n";
    out << max_col << " " << max_row << "\n";
    for (std::uint32_t j = 0; j < n; ++j)
        out << m.col_support(j).size() << (j + 1 < n ? " " : "\n");
    if (n == 0) out << "\n";
    for (std::uint32_t i = 0; i < rows; ++i)
        out << m.row_support(i).size() << (i + 1 < rows ? " " : "\n");
    if (rows == 0) out << "\n";

    for (std::uint32_t j = 0; j < n; ++j) {
        const auto &c = m.col_support(j);
        for (std::size_t k = 0; k < max_col; ++k)
            out << (k < c.size() ? c[k] + 1 : 0) << (k + 1 < max_col ? " " : "");
        out << "\n";
    }
    for (std::uint32_t i = 0; i < rows; ++i) {
        const auto &r = m.row_support(i);
        for (std::size_t k = 0; k < max_row; ++k)
            out << (k < r.size() ? r[k] + 1 : 0) << (k + 1 < max_row ? " " : "");
        out << "\n";
    }
}

void write_alist_file(const std::string &path, const SparseBinaryMatrix &m) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("alist: cannot open " + path + " for writing");
    write_alist(out, m);
    if (!out)
        throw std::runtime_error("alist: write failed for " + path);
}

}  // namespace qldpc
