#include "qldpc/pre.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qldpc {

namespace {

SupportSequence sequence_from_metric(std::vector<std::int32_t> metric) {
    const auto n = static_cast<std::uint32_t>(metric.size());
    SupportSequence seq;
    seq.order.resize(n);
    std::iota(seq.order.begin(), seq.order.end(), 0u);
    std::sort(seq.order.begin(), seq.order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return metric[a] != metric[b] ? metric[a] < metric[b] : a < b;
    });
    seq.metric.resize(n);
    for (std::uint32_t r = 0; r < n; ++r)
        seq.metric[r] = metric[seq.order[r]];
    return seq;
}

}  // namespace

SupportSequence build_support_sequence(const SparseBinaryMatrix &h, const BitVector &s) {
    if (s.size() != h.n_rows())
        throw std::invalid_argument("build_support_sequence: syndrome length != rows");
    const std::uint32_t n = h.n_cols();
    std::vector<std::int32_t> metric(n);
    for (std::uint32_t j = 0; j < n; ++j) {
        const auto &checks = h.col_support(j);
        std::int32_t w1 = 0;
        for (auto i : checks)
            w1 += (s[i] != 0);
        metric[j] = static_cast<std::int32_t>(checks.size()) - 2 * w1;
    }
    return sequence_from_metric(std::move(metric));
}

SupportSequence build_support_sequence(const TannerGraph &g, const BitVector &s) {
    if (s.size() != g.checks)
        throw std::invalid_argument("build_support_sequence: syndrome length != checks");
    std::vector<std::int32_t> metric(g.vars);
    for (std::uint32_t j = 0; j < g.vars; ++j) {
        std::int32_t w1 = 0;
        for (std::uint32_t k = g.var_ptr[j]; k < g.var_ptr[j + 1]; ++k)
            w1 += (s[g.chk_of[g.var_edges[k]]] != 0);
        metric[j] = static_cast<std::int32_t>(g.var_degree(j)) - 2 * w1;
    }
    return sequence_from_metric(std::move(metric));
}

SupportSequence build_support_sequence(const CssCode &code, const BitVector &s) {
    return build_support_sequence(code.h_z(), s);
}

std::vector<double> one_iter_bp_error_ratios(const SparseBinaryMatrix &h, const BitVector &s,
                                             double p) {
    if (s.size() != h.n_rows())
        throw std::invalid_argument("one_iter_bp_error_ratios: syndrome length != rows");
    if (!(p > 0.0) || p >= 0.5)
        throw std::invalid_argument("one_iter_bp_error_ratios: p must lie in (0, 0.5)");
    if (h.n_rows() == 0)
        throw std::invalid_argument("one_iter_bp_error_ratios: empty matrix");
    const std::size_t d_c = h.row_support(0).size();
    for (std::uint32_t i = 1; i < h.n_rows(); ++i)
        if (h.row_support(i).size() != d_c)
            throw std::invalid_argument(
                "one_iter_bp_error_ratios: check degree is not constant (oracle hypothesis)");

    const double a = (1.0 + std::pow(1.0 - 2.0 * p, static_cast<double>(d_c) - 1.0)) / 2.0;
    const double base = (1.0 - a) / a;  // in (0,1) for d_c >= 2
    std::vector<double> ratio(h.n_cols());
    for (std::uint32_t j = 0; j < h.n_cols(); ++j) {
        const auto &checks = h.col_support(j);
        std::int32_t w1 = 0;
        for (auto i : checks)
            w1 += (s[i] != 0);
        const std::int32_t exponent = static_cast<std::int32_t>(checks.size()) - 2 * w1;
        ratio[j] = p / (1.0 - p) * std::pow(base, static_cast<double>(exponent));
    }
    return ratio;
}

FlagLists::FlagLists(const TannerGraph &g)
    : flag_(g.edges, 0), set_count_(g.vars, 0) {}

void FlagLists::reset_all() {
    std::fill(flag_.begin(), flag_.end(), 0);
    std::fill(set_count_.begin(), set_count_.end(), 0);
}

void FlagLists::mark(const TannerGraph &g, std::uint32_t v_t, std::uint32_t c_max) {
    for (std::uint32_t k = g.var_ptr[v_t]; k < g.var_ptr[v_t + 1]; ++k) {
        if (g.chk_of[g.var_edges[k]] == c_max) {
            flag_[k] = 1;
            ++set_count_[v_t];
            break;
        }
    }
    // reset rule: once d_v - 1 flags are set, clear them all
    const std::uint32_t d_v = g.var_degree(v_t);
    if (d_v >= 1 && set_count_[v_t] + 1 >= d_v) {
        for (std::uint32_t k = g.var_ptr[v_t]; k < g.var_ptr[v_t + 1]; ++k)
            flag_[k] = 0;
        set_count_[v_t] = 0;
    }
}

namespace {

/// One selection of the proposed pool: scan the edges of v_t's unflagged
/// checks towards their other variables. Candidates arrive in increasing
/// edge-id order, so keeping the first maximum is the lexicographic rule.
EdgeSelection select_proposed(const TannerGraph &g, const ResidualTable &rt,
                              const FlagLists &flags, std::uint32_t v_t, OpCounters &counters,
                              TieBreak tie, CounterRng *rng) {
    double best = -1.0;
    std::uint32_t best_edge = 0;
    std::uint64_t seen = 0;
    std::uint32_t tie_count = 0;
    for (std::uint32_t k = g.var_ptr[v_t]; k < g.var_ptr[v_t + 1]; ++k) {
        if (flags.is_set(k))
            continue;
        const std::uint32_t c_i = g.chk_of[g.var_edges[k]];
        for (std::uint32_t e = g.chk_ptr[c_i]; e < g.chk_ptr[c_i + 1]; ++e) {
            if (g.var_of[e] == v_t)
                continue;
            ++seen;
            const double r = rt.residual[e];
            if (seen == 1 || r > best) {
                best = r;
                best_edge = e;
                tie_count = 1;
            } else if (r == best && tie == TieBreak::SeededRandom && rng != nullptr) {
                ++tie_count;
                if (rng->uniform_below(tie_count) == 0)
                    best_edge = e;
            }
        }
    }
    counters.residual_comparisons += seen > 0 ? seen - 1 : 0;
    EdgeSelection sel;
    if (seen == 0)
        return sel;
    sel.found = true;
    sel.edge = best_edge;
    sel.check = g.chk_of[best_edge];
    sel.var = g.var_of[best_edge];
    return sel;
}

DecodeOutcome run_proposed_pool(DecoderState &st, FlagLists &flags, const DecodeOptions &opts,
                                CounterRng *rng) {
    const TannerGraph &g = st.graph();
    std::uint32_t v_t = 0;
    while (true) {
        EdgeSelection sel;
        std::uint32_t scanned = 0;
        // skip variables whose filtered pool is empty (degenerate degrees)
        while (scanned < g.vars) {
            sel = select_proposed(g, st.residuals(), flags, v_t, st.counters(), opts.tie_break,
                                  rng);
            if (sel.found)
                break;
            v_t = (v_t + 1) % g.vars;
            ++scanned;
        }
        bool from_pool = sel.found;
        if (!sel.found) {
            // every induced pool is empty (all checks have degree <= 1):
            // fall back to the global pool so the decode can still progress
            std::vector<std::uint32_t> all(g.edges);
            std::iota(all.begin(), all.end(), 0u);
            sel = select_max_edge(g, st.residuals(), all, st.counters(), opts.tie_break, rng);
        }
        st.update_edge(sel.edge);
        if (from_pool)
            flags.mark(g, v_t, sel.check);
        st.propagate(sel.check, sel.var);
        v_t = (v_t + 1) % g.vars;
        if (st.iteration_boundary_due()) {
            if (st.close_iteration_and_check())
                return st.take_outcome(true);
            if (st.iterations() >= opts.i_max)
                return st.take_outcome(false);
        }
    }
}

}  // namespace

DecodeOutcome decode_proposed_pool(const TannerGraph &g, const BitVector &s,
                                   const DecodeOptions &opts) {
    if (s.size() != g.checks)
        throw std::invalid_argument("decode: syndrome length != number of checks");
    DecoderState st(g, opts.p);
    st.reset(s);
    CounterRng tie_rng(opts.tie_seed, 0x746965ull);
    CounterRng *rng = opts.tie_break == TieBreak::SeededRandom ? &tie_rng : nullptr;
    const bool converged_at_init = st.initial_check();
    if (converged_at_init || opts.i_max == 0 || g.edges == 0)
        return st.take_outcome(converged_at_init);
    FlagLists flags(g);
    return run_proposed_pool(st, flags, opts, rng);
}

DecodeOutcome decode_pre_srbp(const TannerGraph &g, const BitVector &s, double p,
                              const TrialConfig &trial, const DecodeOptions &base_opts) {
    if (s.size() != g.checks)
        throw std::invalid_argument("decode: syndrome length != number of checks");
    if (trial.lambda_max == 0 || trial.i_t == 0)
        throw std::invalid_argument("decode_pre_srbp: lambda_max and i_t must be positive");
    if (trial.lambda_max > g.vars)
        throw std::invalid_argument("decode_pre_srbp: lambda_max exceeds the variable count");

    // sequence built once from the original syndrome (not per trial)
    const std::vector<std::uint32_t> order = build_support_sequence(g, s).order;

    DecodeOptions opts = base_opts;
    opts.p = p;
    opts.i_max = trial.i_t;

    DecodeOutcome combined;
    BitVector s_r(s.size());
    const std::int64_t first = trial.include_plain_trial ? -1 : 0;
    for (std::int64_t lambda = first; lambda < static_cast<std::int64_t>(trial.lambda_max);
         ++lambda) {
        std::uint32_t reduced_var = 0;
        s_r = s;
        if (lambda >= 0) {
            reduced_var = order[static_cast<std::size_t>(lambda)];
            // syndrome of the standard error pattern e_c = unit at reduced_var
            for (std::uint32_t k = g.var_ptr[reduced_var]; k < g.var_ptr[reduced_var + 1]; ++k)
                s_r[g.chk_of[g.var_edges[k]]] ^= 1;
        }

        DecodeOutcome trial_out = decode_proposed_pool(g, s_r, opts);
        ++combined.trials;
        combined.iterations += trial_out.iterations;
        combined.totals += trial_out.totals;
        combined.per_iteration.insert(combined.per_iteration.end(),
                                      trial_out.per_iteration.begin(),
                                      trial_out.per_iteration.end());
        combined.e_hat = std::move(trial_out.e_hat);
        if (lambda >= 0 && !combined.e_hat.empty())
            combined.e_hat[reduced_var] ^= 1;  // undo the reduction
        if (trial_out.converged) {
            combined.converged = true;
            return combined;
        }
    }
    combined.converged = false;
    return combined;
}

DecodeOutcome decode_proposed_pool(const CssCode &code, const BitVector &s,
                                   const DecodeOptions &opts) {
    return decode_proposed_pool(TannerGraph::build(code.h_z()), s, opts);
}

DecodeOutcome decode_pre_srbp(const CssCode &code, const BitVector &s, double p,
                              const TrialConfig &trial, const DecodeOptions &base_opts) {
    return decode_pre_srbp(TannerGraph::build(code.h_z()), s, p, trial, base_opts);
}

}  // namespace qldpc
