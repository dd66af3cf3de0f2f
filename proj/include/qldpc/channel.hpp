#pragma once

#include <cstdint>

#include "qldpc/code.hpp"
#include "qldpc/gf2.hpp"

namespace qldpc {

/// i.i.d. bit-flip channel. p_x = 0 is accepted as the degenerate error-free
/// channel (handy for sweep smoke tests); p_x >= 0.5 is rejected.
struct ChannelConfig {
    double p_x = 0.0;
    std::uint64_t seed = 0;
};

enum class FailureClass : std::uint8_t {
    ConvergedSuccess = 0,
    ConvergedLogicalFailure = 1,
    NotConverged = 2,
};

const char *to_string(FailureClass c);

/// Sample an n-bit error, each bit independently 1 with probability p_x.
/// The stream is keyed by (seed, trial), so a frame can be re-materialized
/// later for debugging regardless of worker scheduling.
BitVector sample_error(const ChannelConfig &cfg, std::size_t n, std::uint64_t trial = 0);

/// Sample uniformly among the supports of exactly the given weight.
BitVector sample_error_of_weight(std::uint64_t seed, std::uint64_t trial, std::size_t n,
                                 std::uint32_t weight);

/// Classify a decode: NotConverged if the decoder gave up; otherwise success
/// iff the residual error e_true + e_hat is a product of X stabilizers
/// (lies in the row space of H_X). A converged claim with mismatched
/// syndromes is a decoder bug and throws.
FailureClass classify_outcome(const CssCode &code, const BitVector &e_true,
                              const BitVector &e_hat, bool converged);

}  // namespace qldpc
