#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qldpc/gf2.hpp"

namespace qldpc {

/// Raised when a pair (H_X, H_Z) fails CSS validation.
class CssValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// CSS code given by the pair (H_X, H_Z) with H_X * H_Z^T = 0 over GF(2).
/// k is computed as n - rank(H_X) - rank(H_Z). Decoding in this project runs
/// against H_Z (bit-flip channel); H_X supplies the stabilizer group used to
/// classify converged frames. Immutable once constructed.
class CssCode {
public:
    /// Validates dimensions and row orthogonality; throws CssValidationError
    /// naming the first offending row pair.
    CssCode(SparseBinaryMatrix h_x, SparseBinaryMatrix h_z, std::string label);

    const SparseBinaryMatrix &h_x() const { return h_x_; }
    const SparseBinaryMatrix &h_z() const { return h_z_; }
    std::uint32_t n() const { return h_z_.n_cols(); }
    std::uint32_t k() const { return k_; }
    const std::string &label() const { return label_; }

    /// Echelonized row space of H_X, for stabilizer-equivalence tests.
    const Gf2RowBasis &x_stabilizers() const { return x_basis_; }

private:
    SparseBinaryMatrix h_x_, h_z_;
    std::string label_;
    std::uint32_t k_ = 0;
    Gf2RowBasis x_basis_;
};

/// MacKay bicycle code. A random circulant C of size n/2 with row weight
/// row_weight/2 is drawn from the seed, H = [C | C^T], and n/2 - rows_kept
/// rows are deleted greedily to keep column weights as uniform as possible.
/// h_x = h_z = H; H H^T = C C^T + C^T C = 0 holds because circulants commute,
/// and the CssCode invariant check runs regardless.
CssCode make_bicycle(std::uint32_t n, std::uint32_t row_weight, std::uint32_t rows_kept,
                     std::uint64_t seed);

/// Generalized bicycle code from two circulant polynomials over
/// GF(2)[x]/(x^block_size - 1): H_X = [A | B], H_Z = [B^T | A^T].
/// Exponents must be unique and < block_size.
CssCode make_generalized_bicycle(const std::vector<std::uint32_t> &a_poly,
                                 const std::vector<std::uint32_t> &b_poly,
                                 std::uint32_t block_size);

/// Hypergraph product of two classical parity-check matrices:
///   H_X = [H1 x I | I x H2^T],  H_Z = [I x H2 | H1^T x I].
CssCode make_hypergraph_product(const SparseBinaryMatrix &h1, const SparseBinaryMatrix &h2);

/// Load and validate a CSS code from two alist files.
CssCode load_code(const std::string &path_x, const std::string &path_z);

/// Steane [[7,1,3]] code: h_x = h_z = the Hamming [7,4] parity matrix.
CssCode make_steane();

// Pinned desk-scale instances used by the CLI presets and the experiment
// suite. The literature instances behind the published curves are not
// available, so these are self-generated with frozen parameters.
CssCode preset_bicycle_256_32();       // [[256,32]], row weight 16
CssCode preset_gb_126_28();            // [[126,28]] generalized bicycle
CssCode preset_hp_400_16();            // [[400,16,6]] hypergraph product
const SparseBinaryMatrix &hp_base_16_4_6();  // the (3,4)-regular [16,4,6] seed matrix

/// Lookup by preset name ("steane", "bicycle-256-32", "gb-126-28",
/// "hp-400-16"); throws std::invalid_argument for unknown names.
CssCode make_preset(const std::string &name);
std::vector<std::string> preset_names();

}  // namespace qldpc
