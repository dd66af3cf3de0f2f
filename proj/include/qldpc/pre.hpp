#pragma once

#include <cstdint>
#include <vector>

#include "qldpc/decoders.hpp"

namespace qldpc {

/// Variables ordered by how likely they are to sit in the error support
/// given the syndrome. metric[r] = d_v - 2*w1 for the r-th variable of the
/// order, where w1 counts the variable's neighboring checks inside supp(s);
/// lower metric means more likely in error. Ties order by variable index.
struct SupportSequence {
    std::vector<std::uint32_t> order;  // variable indices, metric ascending
    std::vector<std::int32_t> metric;  // aligned with order, non-decreasing
};

SupportSequence build_support_sequence(const SparseBinaryMatrix &h, const BitVector &s);
SupportSequence build_support_sequence(const TannerGraph &g, const BitVector &s);
SupportSequence build_support_sequence(const CssCode &code, const BitVector &s);

/// Independent verification oracle for the sequence ordering: the marginal
/// ratio q1/q0 of each variable after one iteration of probability-domain
/// BP, in closed form. Requires a constant check degree d_c; throws
/// otherwise. Descending ratio must match ascending metric up to ties.
std::vector<double> one_iter_bp_error_ratios(const SparseBinaryMatrix &h, const BitVector &s,
                                             double p);

/// Per-variable flag lists of the proposed edge pool. flag(v, c) marks that
/// check c was already used for a selection induced by v; once d_v - 1 flags
/// of a variable are set they all reset, so the pool induced by v never
/// empties through flagging alone.
class FlagLists {
public:
    explicit FlagLists(const TannerGraph &g);

    void reset_all();
    bool is_set(std::uint32_t var_slot) const { return flag_[var_slot] != 0; }

    /// Mark (v_t, c_max) used and apply the reset rule. c_max must be an
    /// unflagged neighbor of v_t.
    void mark(const TannerGraph &g, std::uint32_t v_t, std::uint32_t c_max);

    std::uint32_t set_count(std::uint32_t v) const { return set_count_[v]; }

private:
    std::vector<std::uint8_t> flag_;        // indexed by variable-major slot
    std::vector<std::uint32_t> set_count_;  // per variable
};

/// Single run of the proposed edge pool: v_t cycles 0..N-1 (advancing once
/// per C2V selection), and the pool holds the edges of v_t's unflagged
/// neighboring checks towards their other variables.
DecodeOutcome decode_proposed_pool(const TannerGraph &g, const BitVector &s,
                                   const DecodeOptions &opts);
DecodeOutcome decode_proposed_pool(const CssCode &code, const BitVector &s,
                                   const DecodeOptions &opts);

/// PRE-sRBP: build the support sequence once from s, then per trial reduce
/// the syndrome by one predicted error position and run the proposed-pool
/// decoder for i_t iterations from a fresh state. On convergence the
/// reduction is undone in the returned estimate.
DecodeOutcome decode_pre_srbp(const TannerGraph &g, const BitVector &s, double p,
                              const TrialConfig &trial, const DecodeOptions &base_opts);
DecodeOutcome decode_pre_srbp(const CssCode &code, const BitVector &s, double p,
                              const TrialConfig &trial, const DecodeOptions &base_opts);

}  // namespace qldpc
