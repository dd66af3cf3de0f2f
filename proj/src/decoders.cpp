#include "qldpc/decoders.hpp"

#include <cmath>
#include <stdexcept>

#include "qldpc/pre.hpp"

namespace qldpc {

const char *to_string(DecoderPolicy policy) {
    switch (policy) {
        case DecoderPolicy::Sbp: return "sbp";
        case DecoderPolicy::Slbp: return "slbp";
        case DecoderPolicy::Srbp: return "srbp";
        case DecoderPolicy::NwSrbp: return "nw-srbp";
        case DecoderPolicy::LmdSrbp: return "lmd-srbp";
        case DecoderPolicy::ProposedPool: return "pre-pool";
        case DecoderPolicy::PreSrbp: return "pre-srbp";
    }
    return "?";
}

DecoderPolicy parse_decoder(std::string_view name) {
    if (name == "sbp") return DecoderPolicy::Sbp;
    if (name == "slbp") return DecoderPolicy::Slbp;
    if (name == "srbp") return DecoderPolicy::Srbp;
    if (name == "nw-srbp") return DecoderPolicy::NwSrbp;
    if (name == "lmd-srbp") return DecoderPolicy::LmdSrbp;
    if (name == "pre-pool") return DecoderPolicy::ProposedPool;
    if (name == "pre-srbp") return DecoderPolicy::PreSrbp;
    throw std::invalid_argument("unknown decoder '" + std::string(name) + "'");
}

OpCounters &OpCounters::operator+=(const OpCounters &o) {
    c2v_updates += o.c2v_updates;
    v2c_updates += o.v2c_updates;
    pre_computations += o.pre_computations;
    residual_comparisons += o.residual_comparisons;
    return *this;
}

OpCounters operator-(OpCounters a, const OpCounters &b) {
    a.c2v_updates -= b.c2v_updates;
    a.v2c_updates -= b.v2c_updates;
    a.pre_computations -= b.pre_computations;
    a.residual_comparisons -= b.residual_comparisons;
    return a;
}

void init_residuals(const TannerGraph &g, const MessageState &st, const BitVector &s,
                    ResidualTable &table) {
    table.residual.assign(g.edges, 0.0);
    table.pre_computed.assign(g.edges, 0.0);
    for (std::uint32_t e = 0; e < g.edges; ++e) {
        const double pre = c2v_exact(g, st, s[g.chk_of[e]], e);
        table.pre_computed[e] = pre;
        table.residual[e] = std::fabs(pre);  // stored c2v is 0 before any send
    }
}

namespace {

void check_syndrome_length(const TannerGraph &g, const BitVector &s) {
    if (s.size() != g.checks)
        throw std::invalid_argument("decode: syndrome length != number of checks");
}

/// Argmax scan helper shared by the pool implementations. Candidates must be
/// offered in increasing edge-id order for the lexicographic rule.
struct ArgmaxScan {
    double best = -1.0;
    std::uint32_t best_edge = 0;
    std::uint64_t seen = 0;
    std::uint32_t tie_count = 0;
    TieBreak tie;
    CounterRng *rng;

    explicit ArgmaxScan(TieBreak t, CounterRng *r) : tie(t), rng(r) {}

    void offer(std::uint32_t edge, double value) {
        ++seen;
        if (seen == 1 || value > best) {
            best = value;
            best_edge = edge;
            tie_count = 1;
            return;
        }
        if (value == best && tie == TieBreak::SeededRandom && rng != nullptr) {
            ++tie_count;
            if (rng->uniform_below(tie_count) == 0)
                best_edge = edge;
        }
        // Lexicographic: keep the earlier offer (lower edge id).
    }

    std::uint64_t comparisons() const { return seen > 0 ? seen - 1 : 0; }
};

}  // namespace

EdgeSelection select_max_edge(const TannerGraph &g, const ResidualTable &table,
                              std::span<const std::uint32_t> pool, OpCounters &counters,
                              TieBreak tie, CounterRng *rng) {
    ArgmaxScan scan(tie, rng);
    if (tie == TieBreak::Lexicographic) {
        // Lowest (check, variable) among ties regardless of pool order.
        for (auto e : pool) {
            ++scan.seen;
            if (scan.seen == 1 || table.residual[e] > scan.best ||
                (table.residual[e] == scan.best && e < scan.best_edge)) {
                scan.best = table.residual[e];
                scan.best_edge = e;
            }
        }
    } else {
        for (auto e : pool)
            scan.offer(e, table.residual[e]);
    }
    counters.residual_comparisons += scan.comparisons();
    EdgeSelection sel;
    if (scan.seen == 0)
        return sel;
    sel.found = true;
    sel.edge = scan.best_edge;
    sel.check = g.chk_of[sel.edge];
    sel.var = g.var_of[sel.edge];
    return sel;
}

void propagate_and_refresh(const TannerGraph &g, const BitVector &s, MessageState &st,
                           ResidualTable &table, std::uint32_t c_max, std::uint32_t v_max,
                           OpCounters &counters) {
    for (std::uint32_t k = g.var_ptr[v_max]; k < g.var_ptr[v_max + 1]; ++k) {
        const std::uint32_t e2 = g.var_edges[k];
        const std::uint32_t c_a = g.chk_of[e2];
        if (c_a == c_max)
            continue;
        st.set_v2c(e2, v2c_value(g, st, e2));
        ++counters.v2c_updates;
        for (std::uint32_t e3 = g.chk_ptr[c_a]; e3 < g.chk_ptr[c_a + 1]; ++e3) {
            if (g.var_of[e3] == v_max)
                continue;
            const double pre = c2v_exact(g, st, s[c_a], e3);
            table.pre_computed[e3] = pre;
            table.residual[e3] = std::fabs(pre - st.c2v[e3]);
            ++counters.pre_computations;
        }
    }
}

DecoderState::DecoderState(const TannerGraph &g, double p) : g_(&g), p_(p) {}

void DecoderState::reset(const BitVector &s) {
    check_syndrome_length(*g_, s);
    s_ = &s;
    st_.init(*g_, prior_llr(p_));
    init_residuals(*g_, st_, s, rt_);
    counters_ = OpCounters{};
    iter_snapshot_ = OpCounters{};
    per_iter_.clear();
    c2v_in_iter_ = 0;
    iterations_ = 0;
}

bool DecoderState::initial_check() {
    marginal_and_decide(*g_, st_);
    return check_convergence(*g_, st_, *s_);
}

void DecoderState::update_edge(std::uint32_t edge) {
    st_.c2v[edge] = c2v_exact(*g_, st_, (*s_)[g_->chk_of[edge]], edge);
    rt_.residual[edge] = 0.0;
    ++counters_.c2v_updates;
    ++c2v_in_iter_;
}

void DecoderState::propagate(std::uint32_t c_max, std::uint32_t v_max) {
    propagate_and_refresh(*g_, *s_, st_, rt_, c_max, v_max, counters_);
}

bool DecoderState::close_iteration_and_check() {
    per_iter_.push_back(counters_ - iter_snapshot_);
    iter_snapshot_ = counters_;
    c2v_in_iter_ = 0;
    ++iterations_;
    st_.iteration = iterations_;
    marginal_and_decide(*g_, st_);
    return check_convergence(*g_, st_, *s_);
}

DecodeOutcome DecoderState::take_outcome(bool converged) {
    DecodeOutcome out;
    out.converged = converged;
    out.e_hat = st_.e_hat;
    out.iterations = iterations_;
    out.totals = counters_;
    out.per_iteration = std::move(per_iter_);
    return out;
}

// --- fixed schedules --------------------------------------------------------

namespace {

/// Shared skeleton for flooding and layered: an initial iteration-0 check,
/// then full sweeps with a convergence test per sweep.
template <typename SweepFn>
DecodeOutcome run_fixed_schedule(const TannerGraph &g, const BitVector &s,
                                 const DecodeOptions &opts, SweepFn sweep) {
    check_syndrome_length(g, s);
    MessageState st;
    st.init(g, prior_llr(opts.p));
    OpCounters counters{};
    OpCounters snapshot{};
    DecodeOutcome out;

    marginal_and_decide(g, st);
    if (check_convergence(g, st, s)) {
        out.converged = true;
        out.e_hat = st.e_hat;
        return out;
    }
    for (std::uint32_t k = 1; k <= opts.i_max; ++k) {
        sweep(st, counters);
        marginal_and_decide(g, st);
        out.per_iteration.push_back(counters - snapshot);
        snapshot = counters;
        st.iteration = k;
        out.iterations = k;
        if (check_convergence(g, st, s)) {
            out.converged = true;
            break;
        }
    }
    out.e_hat = st.e_hat;
    out.totals = counters;
    return out;
}

}  // namespace

DecodeOutcome decode_flooding(const TannerGraph &g, const BitVector &s,
                              const DecodeOptions &opts) {
    return run_fixed_schedule(g, s, opts, [&](MessageState &st, OpCounters &counters) {
        // all C2V from the previous V2C, then all V2C
        for (std::uint32_t e = 0; e < g.edges; ++e) {
            st.c2v[e] = c2v_exact(g, st, s[g.chk_of[e]], e);
            ++counters.c2v_updates;
        }
        for (std::uint32_t e = 0; e < g.edges; ++e) {
            st.set_v2c(e, v2c_value(g, st, e));
            ++counters.v2c_updates;
        }
    });
}

DecodeOutcome decode_layered(const TannerGraph &g, const BitVector &s,
                             const DecodeOptions &opts) {
    return run_fixed_schedule(g, s, opts, [&](MessageState &st, OpCounters &counters) {
        for (std::uint32_t c = 0; c < g.checks; ++c) {
            for (std::uint32_t e = g.chk_ptr[c]; e < g.chk_ptr[c + 1]; ++e) {
                st.set_v2c(e, v2c_value(g, st, e));
                ++counters.v2c_updates;
            }
            for (std::uint32_t e = g.chk_ptr[c]; e < g.chk_ptr[c + 1]; ++e) {
                st.c2v[e] = c2v_exact(g, st, s[c], e);
                ++counters.c2v_updates;
            }
        }
    });
}

// --- edge-wise schedules -----------------------------------------------------

namespace {

/// Full scan over every directed edge (the global pool of sRBP/NW-sRBP).
EdgeSelection select_global(const TannerGraph &g, const ResidualTable &rt, OpCounters &counters,
                            TieBreak tie, CounterRng *rng) {
    ArgmaxScan scan(tie, rng);
    for (std::uint32_t e = 0; e < g.edges; ++e)
        scan.offer(e, rt.residual[e]);
    counters.residual_comparisons += scan.comparisons();
    EdgeSelection sel;
    if (scan.seen == 0)
        return sel;
    sel.found = true;
    sel.edge = scan.best_edge;
    sel.check = g.chk_of[sel.edge];
    sel.var = g.var_of[sel.edge];
    return sel;
}

struct EdgeWiseSetup {
    DecoderState state;
    CounterRng rng;
    bool done = false;
    DecodeOutcome early;
};

EdgeWiseSetup edge_wise_setup(const TannerGraph &g, const BitVector &s,
                              const DecodeOptions &opts) {
    EdgeWiseSetup setup{DecoderState(g, opts.p), CounterRng(opts.tie_seed, 0x746965ull), false,
                        DecodeOutcome{}};
    setup.state.reset(s);
    const bool converged_at_init = setup.state.initial_check();
    if (converged_at_init || opts.i_max == 0 || g.edges == 0) {
        setup.done = true;
        setup.early = setup.state.take_outcome(converged_at_init);
    }
    return setup;
}

}  // namespace

DecodeOutcome decode_srbp(const TannerGraph &g, const BitVector &s, const DecodeOptions &opts) {
    auto setup = edge_wise_setup(g, s, opts);
    if (setup.done)
        return setup.early;
    DecoderState &st = setup.state;
    CounterRng *rng = opts.tie_break == TieBreak::SeededRandom ? &setup.rng : nullptr;
    while (true) {
        const auto sel = select_global(g, st.residuals(), st.counters(), opts.tie_break, rng);
        st.update_edge(sel.edge);
        st.propagate(sel.check, sel.var);
        if (st.iteration_boundary_due()) {
            if (st.close_iteration_and_check())
                return st.take_outcome(true);
            if (st.iterations() >= opts.i_max)
                return st.take_outcome(false);
        }
    }
}

DecodeOutcome decode_nw_srbp(const TannerGraph &g, const BitVector &s, const DecodeOptions &opts) {
    auto setup = edge_wise_setup(g, s, opts);
    if (setup.done)
        return setup.early;
    DecoderState &st = setup.state;
    CounterRng *rng = opts.tie_break == TieBreak::SeededRandom ? &setup.rng : nullptr;
    while (true) {
        const auto sel = select_global(g, st.residuals(), st.counters(), opts.tie_break, rng);
        const std::uint32_t c = sel.check;
        // All d_c outgoing edges of c_max are updated as one selection; the
        // new values only depend on the inbound V2C, so updating them in
        // sequence matches the simultaneous semantics.
        for (std::uint32_t e = g.chk_ptr[c]; e < g.chk_ptr[c + 1]; ++e)
            st.update_edge(e);
        for (std::uint32_t e = g.chk_ptr[c]; e < g.chk_ptr[c + 1]; ++e)
            st.propagate(c, g.var_of[e]);
        if (st.iteration_boundary_due()) {
            if (st.close_iteration_and_check())
                return st.take_outcome(true);
            if (st.iterations() >= opts.i_max)
                return st.take_outcome(false);
        }
    }
}

DecodeOutcome decode_lmd_srbp(const TannerGraph &g, const BitVector &s, const DecodeOptions &opts) {
    auto setup = edge_wise_setup(g, s, opts);
    if (setup.done)
        return setup.early;
    DecoderState &st = setup.state;
    CounterRng *rng = opts.tie_break == TieBreak::SeededRandom ? &setup.rng : nullptr;
    const ResidualTable &rt = st.residuals();

    EdgeSelection current;  // not found -> select from the global pool
    while (true) {
        if (!current.found)
            current = select_global(g, rt, st.counters(), opts.tie_break, rng);
        st.update_edge(current.edge);
        st.propagate(current.check, current.var);
        if (st.iteration_boundary_due()) {
            if (st.close_iteration_and_check())
                return st.take_outcome(true);
            if (st.iterations() >= opts.i_max)
                return st.take_outcome(false);
        }

        // S.3: v*_max is the variable end of the max-residual edge among the
        // edges refreshed for this update (R_I); the next edge is the
        // max-residual one among all edges into v*_max.
        ArgmaxScan ri_scan(opts.tie_break, rng);
        for (std::uint32_t k = g.var_ptr[current.var]; k < g.var_ptr[current.var + 1]; ++k) {
            const std::uint32_t c_a = g.chk_of[g.var_edges[k]];
            if (c_a == current.check)
                continue;
            for (std::uint32_t e3 = g.chk_ptr[c_a]; e3 < g.chk_ptr[c_a + 1]; ++e3)
                if (g.var_of[e3] != current.var)
                    ri_scan.offer(e3, rt.residual[e3]);
        }
        st.counters().residual_comparisons += ri_scan.comparisons();
        if (ri_scan.seen == 0) {
            current = EdgeSelection{};  // degenerate degrees: fall back to global
            continue;
        }
        const std::uint32_t v_star = g.var_of[ri_scan.best_edge];

        ArgmaxScan vstar_scan(opts.tie_break, rng);
        for (std::uint32_t k = g.var_ptr[v_star]; k < g.var_ptr[v_star + 1]; ++k)
            vstar_scan.offer(g.var_edges[k], rt.residual[g.var_edges[k]]);
        st.counters().residual_comparisons += vstar_scan.comparisons();
        current.found = true;
        current.edge = vstar_scan.best_edge;
        current.check = g.chk_of[current.edge];
        current.var = v_star;
    }
}

// --- CssCode overloads and dispatch ------------------------------------------

DecodeOutcome decode(const TannerGraph &g, const BitVector &s, DecoderPolicy policy,
                     const DecodeOptions &opts) {
    switch (policy) {
        case DecoderPolicy::Sbp: return decode_flooding(g, s, opts);
        case DecoderPolicy::Slbp: return decode_layered(g, s, opts);
        case DecoderPolicy::Srbp: return decode_srbp(g, s, opts);
        case DecoderPolicy::NwSrbp: return decode_nw_srbp(g, s, opts);
        case DecoderPolicy::LmdSrbp: return decode_lmd_srbp(g, s, opts);
        case DecoderPolicy::ProposedPool: return decode_proposed_pool(g, s, opts);
        case DecoderPolicy::PreSrbp: return decode_pre_srbp(g, s, opts.p, opts.trial, opts);
    }
    throw std::invalid_argument("decode: unknown policy");
}

DecodeOutcome decode_flooding(const CssCode &code, const BitVector &s, const DecodeOptions &opts) {
    return decode_flooding(TannerGraph::build(code.h_z()), s, opts);
}
DecodeOutcome decode_layered(const CssCode &code, const BitVector &s, const DecodeOptions &opts) {
    return decode_layered(TannerGraph::build(code.h_z()), s, opts);
}
DecodeOutcome decode_srbp(const CssCode &code, const BitVector &s, const DecodeOptions &opts) {
    return decode_srbp(TannerGraph::build(code.h_z()), s, opts);
}
DecodeOutcome decode_nw_srbp(const CssCode &code, const BitVector &s, const DecodeOptions &opts) {
    return decode_nw_srbp(TannerGraph::build(code.h_z()), s, opts);
}
DecodeOutcome decode_lmd_srbp(const CssCode &code, const BitVector &s, const DecodeOptions &opts) {
    return decode_lmd_srbp(TannerGraph::build(code.h_z()), s, opts);
}
DecodeOutcome decode(const CssCode &code, const BitVector &s, DecoderPolicy policy,
                     const DecodeOptions &opts) {
    return decode(TannerGraph::build(code.h_z()), s, policy, opts);
}

}  // namespace qldpc
