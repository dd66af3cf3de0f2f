#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qldpc/bp.hpp"
#include "qldpc/code.hpp"
#include "qldpc/rng.hpp"

namespace qldpc {

enum class DecoderPolicy : std::uint8_t {
    Sbp,           // flooding
    Slbp,          // layered, one check per layer in ascending row order
    Srbp,          // residual BP, global edge pool
    NwSrbp,        // node-wise: all edges of the selected check at once
    LmdSrbp,       // latest-message-driven two-stage pool
    ProposedPool,  // flag-list pool cycling v_t (single run, no trials)
    PreSrbp,       // predict-and-reduce trial loop around ProposedPool
};

const char *to_string(DecoderPolicy policy);
DecoderPolicy parse_decoder(std::string_view name);

enum class TieBreak : std::uint8_t {
    Lexicographic,  // lowest (check, variable); the default, required for reproducibility
    SeededRandom,   // uniform among tied edges, for experimentation
};

struct OpCounters {
    std::uint64_t c2v_updates = 0;
    std::uint64_t v2c_updates = 0;
    std::uint64_t pre_computations = 0;
    std::uint64_t residual_comparisons = 0;

    OpCounters &operator+=(const OpCounters &o);
    friend OpCounters operator-(OpCounters a, const OpCounters &b);
    bool operator==(const OpCounters &) const = default;
};

/// PRE-sRBP trial budget: lambda_max positions tried, i_t iterations each,
/// so the total iteration budget is i_t * lambda_max. include_plain_trial
/// prepends a trial with no reduction.
struct TrialConfig {
    std::uint32_t lambda_max = 15;
    std::uint32_t i_t = 6;
    bool include_plain_trial = false;
};

struct DecodeOptions {
    double p = 0.05;           // channel probability behind the prior LLR
    std::uint32_t i_max = 90;  // iterations (ignored by PreSrbp, which uses trial)
    TieBreak tie_break = TieBreak::Lexicographic;
    std::uint64_t tie_seed = 0;
    TrialConfig trial{};
};

struct DecodeOutcome {
    bool converged = false;
    BitVector e_hat;
    std::uint32_t iterations = 0;  // closed iterations when the decode stopped
    std::uint32_t trials = 0;      // PreSrbp: trials consumed; 0 otherwise
    OpCounters totals;
    std::vector<OpCounters> per_iteration;
};

/// Residuals of the directed C2V edges. pre_computed holds the would-be
/// message behind each fresh residual; an edge updated in S.1 has residual
/// exactly 0 until the next refresh touches it.
///
/// Pre-computations use the same exact update rule as the scheduler's C2V
/// updates. A min-sum shortcut here leaves a permanent residual floor of
/// min|v2c| - 2 atanh(prod tanh(v2c/2)) on every refreshed edge (about 9.7
/// at saturation for d_c = 16), and with the identical priors of the
/// syndrome channel that floor outranks the true error region and starves
/// it. Measured on the [[256,32]] instance: weight-1 solvable ratio 0.32
/// with the min-sum shortcut vs 1.0 with exact pre-computations.
struct ResidualTable {
    std::vector<double> residual;
    std::vector<double> pre_computed;
};

/// Fill the table from scratch: stored C2V messages are 0 before anything is
/// sent, so every residual starts at |pre-computation|. On a regular code
/// with the uniform prior this makes all E residuals equal.
void init_residuals(const TannerGraph &g, const MessageState &st, const BitVector &s,
                    ResidualTable &table);

struct EdgeSelection {
    bool found = false;
    std::uint32_t edge = 0;
    std::uint32_t check = 0;
    std::uint32_t var = 0;
};

/// Argmax residual over an explicit pool of edge ids (step S.1 selection).
/// Ties break to the lowest (check, variable), which is the lowest edge id;
/// SeededRandom picks uniformly among the tied maxima. Adds
/// max(pool.size()-1, 0) residual comparisons.
EdgeSelection select_max_edge(const TannerGraph &g, const ResidualTable &table,
                              std::span<const std::uint32_t> pool, OpCounters &counters,
                              TieBreak tie = TieBreak::Lexicographic, CounterRng *rng = nullptr);

/// Step S.2 for a just-updated edge (c_max, v_max): recompute the V2C
/// messages leaving v_max (except towards c_max), then refresh the
/// pre-computation and residual of every other edge leaving those checks.
/// Adds d_v-1 V2C updates and (d_v-1)(d_c-1) pre-computations.
void propagate_and_refresh(const TannerGraph &g, const BitVector &s, MessageState &st,
                           ResidualTable &table, std::uint32_t c_max, std::uint32_t v_max,
                           OpCounters &counters);

/// Shared per-decode state for the edge-wise schedulers: messages, residual
/// table, flag lists (proposed pool only) and counters. The iteration clock
/// is edge-wise: an iteration closes once E C2V updates have accumulated,
/// and only then are the marginals, hard decision and convergence checked.
class DecoderState {
public:
    DecoderState(const TannerGraph &g, double p);

    void reset(const BitVector &s);  // fresh messages/residuals/counters for s

    const TannerGraph &graph() const { return *g_; }
    const BitVector &syndrome() const { return *s_; }
    MessageState &messages() { return st_; }
    ResidualTable &residuals() { return rt_; }
    OpCounters &counters() { return counters_; }
    const std::vector<OpCounters> &per_iteration() const { return per_iter_; }
    std::uint32_t iterations() const { return iterations_; }
    std::uint32_t c2v_in_iteration() const { return c2v_in_iter_; }

    /// Iteration-0 test: hard decision from the priors alone.
    bool initial_check();

    /// S.1 tail for one edge: exact C2V update, residual zeroed.
    void update_edge(std::uint32_t edge);

    /// S.2 wrapper.
    void propagate(std::uint32_t c_max, std::uint32_t v_max);

    bool iteration_boundary_due() const { return c2v_in_iter_ >= g_->edges; }

    /// Close the iteration: snapshot per-iteration counters, run the
    /// marginal pass and the syndrome test. Returns true on convergence.
    bool close_iteration_and_check();

    DecodeOutcome take_outcome(bool converged);

private:
    const TannerGraph *g_;
    const BitVector *s_ = nullptr;
    double p_;
    MessageState st_;
    ResidualTable rt_;
    OpCounters counters_{};
    OpCounters iter_snapshot_{};
    std::vector<OpCounters> per_iter_;
    std::uint32_t c2v_in_iter_ = 0;
    std::uint32_t iterations_ = 0;
};

// Engine-level entry points (graph of H_Z plus syndrome); the CssCode
// overloads below build the graph on the fly.
DecodeOutcome decode_flooding(const TannerGraph &g, const BitVector &s, const DecodeOptions &opts);
DecodeOutcome decode_layered(const TannerGraph &g, const BitVector &s, const DecodeOptions &opts);
DecodeOutcome decode_srbp(const TannerGraph &g, const BitVector &s, const DecodeOptions &opts);
DecodeOutcome decode_nw_srbp(const TannerGraph &g, const BitVector &s, const DecodeOptions &opts);
DecodeOutcome decode_lmd_srbp(const TannerGraph &g, const BitVector &s, const DecodeOptions &opts);

DecodeOutcome decode_flooding(const CssCode &code, const BitVector &s, const DecodeOptions &opts);
DecodeOutcome decode_layered(const CssCode &code, const BitVector &s, const DecodeOptions &opts);
DecodeOutcome decode_srbp(const CssCode &code, const BitVector &s, const DecodeOptions &opts);
DecodeOutcome decode_nw_srbp(const CssCode &code, const BitVector &s, const DecodeOptions &opts);
DecodeOutcome decode_lmd_srbp(const CssCode &code, const BitVector &s, const DecodeOptions &opts);

/// Dispatch on policy (covers all seven, including the pre-decoder family).
DecodeOutcome decode(const TannerGraph &g, const BitVector &s, DecoderPolicy policy,
                     const DecodeOptions &opts);
DecodeOutcome decode(const CssCode &code, const BitVector &s, DecoderPolicy policy,
                     const DecodeOptions &opts);

}  // namespace qldpc
