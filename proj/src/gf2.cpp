#include "qldpc/gf2.hpp"

#include <algorithm>
#include <stdexcept>

namespace qldpc {

BitVector xor_bits(const BitVector &a, const BitVector &b) {
    if (a.size() != b.size())
        throw std::invalid_argument("xor_bits: length mismatch");
    BitVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = static_cast<std::uint8_t>((a[i] ^ b[i]) & 1u);
    return out;
}

std::size_t weight(const BitVector &v) {
    std::size_t w = 0;
    for (auto b : v)
        w += (b != 0);
    return w;
}

bool is_zero(const BitVector &v) {
    return std::all_of(v.begin(), v.end(), [](std::uint8_t b) { return b == 0; });
}

SparseBinaryMatrix SparseBinaryMatrix::from_rows(std::uint32_t n_rows, std::uint32_t n_cols,
                                                 std::vector<std::vector<std::uint32_t>> rows) {
    if (rows.size() != n_rows)
        throw std::invalid_argument("SparseBinaryMatrix: row list count != n_rows");
    SparseBinaryMatrix m;
    m.n_rows_ = n_rows;
    m.n_cols_ = n_cols;
    m.row_support_ = std::move(rows);
    m.col_support_.assign(n_cols, {});
    for (std::uint32_t i = 0; i < n_rows; ++i) {
        auto &r = m.row_support_[i];
        std::sort(r.begin(), r.end());
        for (std::size_t k = 0; k < r.size(); ++k) {
            if (r[k] >= n_cols)
                throw std::invalid_argument("SparseBinaryMatrix: column index out of range");
            if (k > 0 && r[k] == r[k - 1])
                throw std::invalid_argument("SparseBinaryMatrix: duplicate entry in row");
        }
        m.n_entries_ += r.size();
        for (auto j : r)
            m.col_support_[j].push_back(i);
    }
    // rows are visited in increasing order, so column lists come out sorted
    return m;
}

SparseBinaryMatrix SparseBinaryMatrix::from_dense(std::uint32_t n_rows, std::uint32_t n_cols,
                                                  const std::uint8_t *row_major) {
    std::vector<std::vector<std::uint32_t>> rows(n_rows);
    for (std::uint32_t i = 0; i < n_rows; ++i)
        for (std::uint32_t j = 0; j < n_cols; ++j)
            if (row_major[static_cast<std::size_t>(i) * n_cols + j])
                rows[i].push_back(j);
    return from_rows(n_rows, n_cols, std::move(rows));
}

bool SparseBinaryMatrix::at(std::uint32_t i, std::uint32_t j) const {
    const auto &r = row_support_[i];
    return std::binary_search(r.begin(), r.end(), j);
}

SparseBinaryMatrix SparseBinaryMatrix::transposed() const {
    SparseBinaryMatrix t;
    t.n_rows_ = n_cols_;
    t.n_cols_ = n_rows_;
    t.n_entries_ = n_entries_;
    t.row_support_ = col_support_;
    t.col_support_ = row_support_;
    return t;
}

bool SparseBinaryMatrix::rows_orthogonal(std::uint32_t i, const SparseBinaryMatrix &other,
                                         std::uint32_t j) const {
    const auto &a = row_support_[i];
    const auto &b = other.row_support_[j];
    std::size_t ka = 0, kb = 0, overlap = 0;
    while (ka < a.size() && kb < b.size()) {
        if (a[ka] < b[kb]) ++ka;
        else if (a[ka] > b[kb]) ++kb;
        else { ++overlap; ++ka; ++kb; }
    }
    return (overlap & 1u) == 0;
}

std::string SparseBinaryMatrix::to_dense_string() const {
    std::string s;
    s.reserve(static_cast<std::size_t>(n_rows_) * (n_cols_ + 1));
    for (std::uint32_t i = 0; i < n_rows_; ++i) {
        std::size_t k = 0;
        const auto &r = row_support_[i];
        for (std::uint32_t j = 0; j < n_cols_; ++j) {
            bool one = k < r.size() && r[k] == j;
            s += one ? '1' : '0';
            if (one) ++k;
        }
        s += '\n';
    }
    return s;
}

BitVector mat_vec_mod2(const SparseBinaryMatrix &h, const BitVector &x) {
    if (x.size() != h.n_cols())
        throw std::invalid_argument("mat_vec_mod2: x.length != n_cols");
    BitVector y(h.n_rows(), 0);
    for (std::uint32_t i = 0; i < h.n_rows(); ++i) {
        std::uint8_t parity = 0;
        for (auto j : h.row_support(i))
            parity ^= (x[j] & 1u);
        y[i] = parity;
    }
    return y;
}

namespace {

std::vector<std::uint64_t> pack_row(const std::vector<std::uint32_t> &support, std::uint32_t words) {
    std::vector<std::uint64_t> w(words, 0);
    for (auto j : support)
        w[j >> 6] ^= (std::uint64_t{1} << (j & 63));
    return w;
}

std::vector<std::uint64_t> pack_bits(const BitVector &v, std::uint32_t words) {
    std::vector<std::uint64_t> w(words, 0);
    for (std::size_t j = 0; j < v.size(); ++j)
        if (v[j] & 1u)
            w[j >> 6] ^= (std::uint64_t{1} << (j & 63));
    return w;
}

}  // namespace

Gf2RowBasis::Gf2RowBasis(const SparseBinaryMatrix &h) {
    n_cols_ = h.n_cols();
    words_ = (n_cols_ + 63) / 64;
    std::vector<std::vector<std::uint64_t>> basis;   // packed echelon rows
    for (std::uint32_t i = 0; i < h.n_rows(); ++i) {
        auto row = pack_row(h.row_support(i), words_);
        for (std::size_t r = 0; r < basis.size(); ++r) {
            std::uint32_t p = pivot_col_[r];
            if (row[p >> 6] & (std::uint64_t{1} << (p & 63)))
                for (std::uint32_t w = 0; w < words_; ++w)
                    row[w] ^= basis[r][w];
        }
        std::uint32_t pivot = n_cols_;
        for (std::uint32_t w = 0; w < words_ && pivot == n_cols_; ++w)
            if (row[w])
                pivot = (w << 6) + static_cast<std::uint32_t>(__builtin_ctzll(row[w]));
        if (pivot < n_cols_) {
            pivot_col_.push_back(pivot);
            basis.push_back(std::move(row));
        }
    }
    rows_.resize(static_cast<std::size_t>(basis.size()) * words_);
    for (std::size_t r = 0; r < basis.size(); ++r)
        std::copy(basis[r].begin(), basis[r].end(), rows_.begin() + static_cast<std::ptrdiff_t>(r * words_));
}

bool Gf2RowBasis::contains(const BitVector &v) const {
    if (v.size() != n_cols_)
        throw std::invalid_argument("Gf2RowBasis::contains: length mismatch");
    auto row = pack_bits(v, words_);
    for (std::size_t r = 0; r < pivot_col_.size(); ++r) {
        std::uint32_t p = pivot_col_[r];
        if (row[p >> 6] & (std::uint64_t{1} << (p & 63))) {
            const std::uint64_t *b = rows_.data() + r * words_;
            for (std::uint32_t w = 0; w < words_; ++w)
                row[w] ^= b[w];
        }
    }
    return std::all_of(row.begin(), row.end(), [](std::uint64_t w) { return w == 0; });
}

std::uint32_t rank_mod2(const SparseBinaryMatrix &h) {
    return Gf2RowBasis(h).rank();
}

bool in_row_space(const SparseBinaryMatrix &h, const BitVector &v) {
    if (v.size() != h.n_cols())
        throw std::invalid_argument("in_row_space: length mismatch");
    return Gf2RowBasis(h).contains(v);
}

}  // namespace qldpc
