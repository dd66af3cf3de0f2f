#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qldpc {

/// Dense 0/1 vector. Entries are 0 or 1; length is the container size.
using BitVector = std::vector<std::uint8_t>;

BitVector xor_bits(const BitVector &a, const BitVector &b);
std::size_t weight(const BitVector &v);
bool is_zero(const BitVector &v);

/// Sparse matrix over GF(2) with eagerly stored dual adjacency: per-row
/// sorted column lists and per-column sorted row lists. Both views describe
/// the same nonzero set; decoders walk rows and columns constantly, so the
/// transpose view is built once at construction. Immutable after
/// construction and safe to share across threads.
class SparseBinaryMatrix {
public:
    SparseBinaryMatrix() = default;

    /// Build from per-row column-index lists. Lists are sorted and validated
    /// (indices in range, no duplicates within a row).
    static SparseBinaryMatrix from_rows(std::uint32_t n_rows, std::uint32_t n_cols,
                                        std::vector<std::vector<std::uint32_t>> rows);

    /// Build from a dense row-major 0/1 buffer.
    static SparseBinaryMatrix from_dense(std::uint32_t n_rows, std::uint32_t n_cols,
                                         const std::uint8_t *row_major);

    std::uint32_t n_rows() const { return n_rows_; }
    std::uint32_t n_cols() const { return n_cols_; }
    std::uint64_t n_entries() const { return n_entries_; }

    const std::vector<std::uint32_t> &row_support(std::uint32_t i) const { return row_support_[i]; }
    const std::vector<std::uint32_t> &col_support(std::uint32_t j) const { return col_support_[j]; }
    const std::vector<std::vector<std::uint32_t>> &rows() const { return row_support_; }
    const std::vector<std::vector<std::uint32_t>> &cols() const { return col_support_; }

    bool at(std::uint32_t i, std::uint32_t j) const;

    SparseBinaryMatrix transposed() const;

    /// Row of this * row of other (mod 2), i.e. one entry of this * other^T.
    bool rows_orthogonal(std::uint32_t i, const SparseBinaryMatrix &other, std::uint32_t j) const;

    std::string to_dense_string() const;  // debugging aid

private:
    std::uint32_t n_rows_ = 0, n_cols_ = 0;
    std::uint64_t n_entries_ = 0;
    std::vector<std::vector<std::uint32_t>> row_support_;
    std::vector<std::vector<std::uint32_t>> col_support_;
};

/// y = H * x over GF(2). Throws std::invalid_argument on dimension mismatch.
BitVector mat_vec_mod2(const SparseBinaryMatrix &h, const BitVector &x);

/// GF(2) rank by Gaussian elimination on a bit-packed dense copy.
/// Matrices here are at most a few thousand columns, so dense is fine.
std::uint32_t rank_mod2(const SparseBinaryMatrix &h);

/// true iff v lies in the row space of h, i.e. appending v as a row does not
/// increase the rank. Throws on dimension mismatch.
bool in_row_space(const SparseBinaryMatrix &h, const BitVector &v);

/// Row-echelon basis of a matrix's row space, kept bit-packed for repeated
/// membership queries (classify_outcome runs one per converged frame).
class Gf2RowBasis {
public:
    Gf2RowBasis() = default;
    explicit Gf2RowBasis(const SparseBinaryMatrix &h);

    std::uint32_t rank() const { return static_cast<std::uint32_t>(pivot_col_.size()); }
    std::uint32_t n_cols() const { return n_cols_; }

    /// true iff v reduces to zero against the basis (v in the row space).
    bool contains(const BitVector &v) const;

private:
    std::uint32_t n_cols_ = 0, words_ = 0;
    std::vector<std::uint64_t> rows_;       // rank x words_, echelon order
    std::vector<std::uint32_t> pivot_col_;  // pivot column of each stored row
};

}  // namespace qldpc
