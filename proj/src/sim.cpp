#include "qldpc/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "qldpc/pre.hpp"
#include "qldpc/rng.hpp"

namespace qldpc {

namespace {

std::string fmt_g(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct FrameResult {
    FailureClass cls = FailureClass::NotConverged;
    bool converged = false;
    std::uint32_t iterations = 0;
    OpCounters totals{};
};

struct Accum {
    std::uint64_t frames = 0;
    std::uint64_t fail_total = 0;
    std::uint64_t fail_nonconv = 0;
    std::uint64_t fail_logical = 0;
    std::uint64_t converged_frames = 0;
    std::uint64_t iter_sum_converged = 0;
    OpCounters counter_sum{};

    void add(const FrameResult &r) {
        ++frames;
        if (r.cls != FailureClass::ConvergedSuccess)
            ++fail_total;
        if (r.cls == FailureClass::NotConverged)
            ++fail_nonconv;
        if (r.cls == FailureClass::ConvergedLogicalFailure)
            ++fail_logical;
        if (r.converged) {
            ++converged_frames;
            iter_sum_converged += r.iterations;
        }
        counter_sum += r.totals;
    }

    void merge(const Accum &o) {
        frames += o.frames;
        fail_total += o.fail_total;
        fail_nonconv += o.fail_nonconv;
        fail_logical += o.fail_logical;
        converged_frames += o.converged_frames;
        iter_sum_converged += o.iter_sum_converged;
        counter_sum += o.counter_sum;
    }
};

std::uint32_t resolve_workers(std::uint32_t requested) {
    if (requested > 0)
        return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

/// Run frames 0..frames-1 in fixed batches of 256. The early-stop test only
/// runs at batch boundaries, so the processed frame set (and hence every
/// aggregate) is identical for any worker count. All aggregates are integer
/// sums, so merge order does not matter either.
template <typename FrameFn>
Accum run_frames(std::uint64_t frames, std::uint64_t min_failures, std::uint64_t frame_floor,
                 std::uint32_t workers, FrameFn &&frame_fn) {
    constexpr std::uint64_t kBatch = 256;
    Accum acc;
    std::uint64_t next = 0;
    while (next < frames) {
        const std::uint64_t end = std::min(frames, next + kBatch);
        if (workers <= 1) {
            for (std::uint64_t t = next; t < end; ++t)
                acc.add(frame_fn(t));
        } else {
            std::vector<Accum> partial(workers);
            std::vector<std::thread> pool;
            pool.reserve(workers);
            for (std::uint32_t w = 0; w < workers; ++w) {
                pool.emplace_back([&, w]() {
                    for (std::uint64_t t = next + w; t < end; t += workers)
                        partial[w].add(frame_fn(t));
                });
            }
            for (auto &th : pool)
                th.join();
            for (const auto &p : partial)
                acc.merge(p);
        }
        next = end;
        if (acc.fail_total >= min_failures && next >= frame_floor)
            break;
    }
    return acc;
}

SweepRow make_row(const ExperimentConfig &cfg, const std::string &label, double p,
                  std::uint32_t i_max_column, const DecodeOptions &opts, const Accum &acc) {
    SweepRow row;
    row.decoder = to_string(cfg.decoder);
    row.code = label;
    row.seed = cfg.seed;
    row.p_x = p;
    row.i_max = i_max_column;
    if (cfg.decoder == DecoderPolicy::PreSrbp) {
        row.lambda_max = opts.trial.lambda_max;
        row.i_t = opts.trial.i_t;
    }
    row.frames = acc.frames;
    row.fail_total = acc.fail_total;
    row.fail_nonconv = acc.fail_nonconv;
    row.fail_logical = acc.fail_logical;
    row.fer = acc.frames ? static_cast<double>(acc.fail_total) / static_cast<double>(acc.frames)
                         : 0.0;
    wilson_interval(acc.fail_total, acc.frames, row.fer_lo, row.fer_hi);
    row.mean_iters = acc.converged_frames
                         ? static_cast<double>(acc.iter_sum_converged) /
                               static_cast<double>(acc.converged_frames)
                         : 0.0;
    if (acc.frames) {
        const double f = static_cast<double>(acc.frames);
        row.c2v = static_cast<double>(acc.counter_sum.c2v_updates) / f;
        row.v2c = static_cast<double>(acc.counter_sum.v2c_updates) / f;
        row.precomp = static_cast<double>(acc.counter_sum.pre_computations) / f;
        row.comparisons = static_cast<double>(acc.counter_sum.residual_comparisons) / f;
    }
    return row;
}

void validate_config(const ExperimentConfig &cfg) {
    if (cfg.code == nullptr)
        throw std::invalid_argument("ExperimentConfig: no code");
    if (cfg.frames == 0)
        throw std::invalid_argument("ExperimentConfig: frames must be >= 1");
    for (double p : cfg.p_list)
        if (!(p >= 0.0) || p >= 0.5)
            throw std::invalid_argument("ExperimentConfig: p_x values must lie in [0, 0.5)");
}

}  // namespace

void wilson_interval(std::uint64_t failures, std::uint64_t frames, double &lo, double &hi) {
    if (frames == 0) {
        lo = 0.0;
        hi = 1.0;
        return;
    }
    const double z = 1.959963984540054;  // 97.5th percentile of the normal
    const double n = static_cast<double>(frames);
    const double phat = static_cast<double>(failures) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2.0 * n)) / denom;
    const double half =
        z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    lo = failures == 0 ? 0.0 : std::max(0.0, center - half);
    hi = failures == frames ? 1.0 : std::min(1.0, center + half);
}

std::string SimReport::to_csv() const {
    std::string out =
        "decoder,code,seed,p_x,i_max,lambda_max,i_t,frames,fail_total,fail_nonconv,"
        "fail_logical,fer,fer_lo,fer_hi,mean_iters,c2v,v2c,precomp,comparisons\n";
    for (const auto &r : rows) {
        out += r.decoder + "," + r.code + "," + std::to_string(r.seed) + "," + fmt_g(r.p_x) +
               "," + std::to_string(r.i_max) + "," + std::to_string(r.lambda_max) + "," +
               std::to_string(r.i_t) + "," + std::to_string(r.frames) + "," +
               std::to_string(r.fail_total) + "," + std::to_string(r.fail_nonconv) + "," +
               std::to_string(r.fail_logical) + "," + fmt_g(r.fer) + "," + fmt_g(r.fer_lo) +
               "," + fmt_g(r.fer_hi) + "," + fmt_g(r.mean_iters) + "," + fmt_g(r.c2v) + "," +
               fmt_g(r.v2c) + "," + fmt_g(r.precomp) + "," + fmt_g(r.comparisons) + "\n";
    }
    return out;
}

SimReport run_fer_sweep(const ExperimentConfig &cfg) {
    validate_config(cfg);
    if (cfg.p_list.empty())
        throw std::invalid_argument("run_fer_sweep: empty p list");
    const std::string label = cfg.code_label.empty() ? cfg.code->label() : cfg.code_label;
    const TannerGraph graph = TannerGraph::build(cfg.code->h_z());
    const std::uint32_t workers = resolve_workers(cfg.workers);
    const std::uint64_t floor = std::min<std::uint64_t>(cfg.frames, 1000);

    SimReport report;
    for (double p : cfg.p_list) {
        DecodeOptions opts = cfg.opts;
        opts.p = p;
        auto frame_fn = [&](std::uint64_t t) {
            const BitVector e = sample_error(ChannelConfig{p, cfg.seed}, cfg.code->n(), t);
            const BitVector s = mat_vec_mod2(cfg.code->h_z(), e);
            DecodeOutcome out = decode(graph, s, cfg.decoder, opts);
            FrameResult r;
            r.converged = out.converged;
            r.iterations = out.iterations;
            r.totals = out.totals;
            r.cls = classify_outcome(*cfg.code, e, out.e_hat, out.converged);
            return r;
        };
        const Accum acc = run_frames(cfg.frames, cfg.min_failures, floor, workers, frame_fn);
        const std::uint32_t i_max_col = cfg.decoder == DecoderPolicy::PreSrbp
                                            ? opts.trial.i_t * opts.trial.lambda_max
                                            : opts.i_max;
        report.rows.push_back(make_row(cfg, label, p, i_max_col, opts, acc));
    }
    return report;
}

SimReport run_iter_sweep(const ExperimentConfig &cfg) {
    validate_config(cfg);
    if (cfg.p_list.empty())
        throw std::invalid_argument("run_iter_sweep: a fixed p is required (p_list.front())");
    if (cfg.i_max_list.empty())
        throw std::invalid_argument("run_iter_sweep: empty i_max list");
    const double p = cfg.p_list.front();
    const std::string label = cfg.code_label.empty() ? cfg.code->label() : cfg.code_label;
    const TannerGraph graph = TannerGraph::build(cfg.code->h_z());
    const std::uint32_t workers = resolve_workers(cfg.workers);
    const std::uint64_t floor = std::min<std::uint64_t>(cfg.frames, 1000);

    SimReport report;
    for (std::uint32_t i_max : cfg.i_max_list) {
        DecodeOptions opts = cfg.opts;
        opts.p = p;
        opts.i_max = i_max;
        if (cfg.decoder == DecoderPolicy::PreSrbp) {
            // trade trials for per-trial budget under the common ceiling
            const std::uint32_t base_it = std::max(1u, cfg.opts.trial.i_t);
            opts.trial.i_t = std::min(base_it, std::max(1u, i_max));
            opts.trial.lambda_max = std::max(1u, i_max / base_it);
            opts.trial.lambda_max =
                std::min(opts.trial.lambda_max, cfg.code->n());
        }
        auto frame_fn = [&](std::uint64_t t) {
            const BitVector e = sample_error(ChannelConfig{p, cfg.seed}, cfg.code->n(), t);
            const BitVector s = mat_vec_mod2(cfg.code->h_z(), e);
            DecodeOutcome out = decode(graph, s, cfg.decoder, opts);
            FrameResult r;
            r.converged = out.converged;
            r.iterations = out.iterations;
            r.totals = out.totals;
            r.cls = classify_outcome(*cfg.code, e, out.e_hat, out.converged);
            return r;
        };
        const Accum acc = run_frames(cfg.frames, cfg.min_failures, floor, workers, frame_fn);
        report.rows.push_back(make_row(cfg, label, p, i_max, opts, acc));
    }
    return report;
}

std::string WeightProfile::to_csv() const {
    std::string out = "decoder,code,seed,weight,samples,solved,ratio\n";
    for (const auto &r : rows) {
        out += decoder + "," + code + "," + std::to_string(seed) + "," +
               std::to_string(r.weight) + "," + std::to_string(r.samples) + "," +
               std::to_string(r.solved) + "," + fmt_g(r.ratio) + "\n";
    }
    return out;
}

WeightProfile run_weight_profile(const ExperimentConfig &cfg,
                                 std::span<const std::uint32_t> weights,
                                 std::uint64_t samples_per_weight) {
    validate_config(cfg);
    if (samples_per_weight == 0)
        throw std::invalid_argument("run_weight_profile: samples_per_weight must be >= 1");
    const double p = cfg.p_list.empty() ? 0.02 : cfg.p_list.front();
    const std::string label = cfg.code_label.empty() ? cfg.code->label() : cfg.code_label;
    const TannerGraph graph = TannerGraph::build(cfg.code->h_z());
    const std::uint32_t workers = resolve_workers(cfg.workers);

    WeightProfile profile;
    profile.decoder = to_string(cfg.decoder);
    profile.code = label;
    profile.seed = cfg.seed;
    for (std::uint32_t w : weights) {
        if (w > cfg.code->n())
            throw std::invalid_argument("run_weight_profile: weight exceeds n");
        DecodeOptions opts = cfg.opts;
        opts.p = p;
        auto frame_fn = [&, w](std::uint64_t t) {
            const BitVector e = sample_error_of_weight(cfg.seed, t, cfg.code->n(), w);
            const BitVector s = mat_vec_mod2(cfg.code->h_z(), e);
            DecodeOutcome out = decode(graph, s, cfg.decoder, opts);
            FrameResult r;
            r.converged = out.converged;
            r.iterations = out.iterations;
            r.totals = out.totals;
            r.cls = classify_outcome(*cfg.code, e, out.e_hat, out.converged);
            return r;
        };
        // fixed sample count per weight; no early stop
        const Accum acc = run_frames(samples_per_weight, samples_per_weight + 1,
                                     samples_per_weight, workers, frame_fn);
        WeightProfileRow row;
        row.weight = w;
        row.samples = acc.frames;
        row.solved = acc.frames - acc.fail_total;
        row.ratio = acc.frames ? static_cast<double>(row.solved) / static_cast<double>(acc.frames)
                               : 0.0;
        profile.rows.push_back(row);
    }
    return profile;
}

namespace {

bool graph_regular(const TannerGraph &g, std::uint32_t &d_v, std::uint32_t &d_c) {
    if (g.vars == 0 || g.checks == 0)
        return false;
    d_c = g.check_degree(0);
    d_v = g.var_degree(0);
    for (std::uint32_t c = 0; c < g.checks; ++c)
        if (g.check_degree(c) != d_c)
            return false;
    for (std::uint32_t v = 0; v < g.vars; ++v)
        if (g.var_degree(v) != d_v)
            return false;
    return true;
}

/// A syndrome the decoder can never satisfy keeps every scheduler busy for
/// the whole budget: prefer a unit syndrome outside the column space of H_Z,
/// fall back to a heavy error otherwise.
BitVector busy_syndrome(const CssCode &code) {
    const auto ht = code.h_z().transposed();
    const Gf2RowBasis col_space(ht);  // column space of H_Z = row space of H_Z^T
    const std::uint32_t m = code.h_z().n_rows();
    for (std::uint32_t i = 0; i < m; ++i) {
        BitVector s(m, 0);
        s[i] = 1;
        if (!col_space.contains(s))
            return s;
    }
    BitVector e(code.n(), 0);
    for (std::uint32_t j = 0; j < code.n(); j += 2)
        e[j] = 1;
    return mat_vec_mod2(code.h_z(), e);
}

}  // namespace

std::string CounterReport::to_text() const {
    std::string out = "decoder=" + decoder + " E=" + std::to_string(edges) +
                      " M=" + std::to_string(checks) + " d_v=" + std::to_string(d_v) +
                      " d_c=" + std::to_string(d_c) +
                      " iteration=" + std::to_string(measured_iteration) + "\n";
    for (const auto &c : checks_run) {
        out += "  " + c.quantity + ": " + std::to_string(c.actual) +
               (c.is_bound ? " <= " : " == ") + std::to_string(c.expected) + "  " +
               (c.ok ? "ok" : "VIOLATED") + "\n";
    }
    out += ok ? "all counter identities hold\n" : "counter identity violated\n";
    return out;
}

CounterReport verify_counters(const CssCode &code, DecoderPolicy policy) {
    const TannerGraph g = TannerGraph::build(code.h_z());
    CounterReport report;
    report.decoder = to_string(policy);
    report.edges = g.edges;
    report.checks = g.checks;
    if (!graph_regular(g, report.d_v, report.d_c))
        throw std::invalid_argument("verify_counters: code is not (d_v, d_c)-regular");
    report.regular = true;

    const std::uint64_t e = g.edges;
    const std::uint64_t m = g.checks;
    const std::uint64_t dv = report.d_v;
    const std::uint64_t dc = report.d_c;

    DecodeOptions opts;
    opts.p = 0.05;
    opts.i_max = 3;
    opts.trial = TrialConfig{1, 3, false};
    const BitVector s = busy_syndrome(code);
    const DecodeOutcome out = decode(g, s, policy, opts);
    if (out.per_iteration.size() < 2)
        throw std::runtime_error("verify_counters: decode finished before iteration 2");

    // Iteration 2: past the LMD bootstrap selection, every schedule is in its
    // steady state.
    const OpCounters &it = out.per_iteration[1];
    report.measured_iteration = 2;

    auto expect = [&](const char *name, std::uint64_t actual, std::uint64_t expected,
                      bool bound) {
        CounterCheck c;
        c.quantity = name;
        c.actual = actual;
        c.expected = expected;
        c.is_bound = bound;
        c.ok = bound ? actual <= expected : actual == expected;
        report.checks_run.push_back(c);
    };

    switch (policy) {
        case DecoderPolicy::Sbp:
        case DecoderPolicy::Slbp:
            expect("c2v", it.c2v_updates, e, false);
            expect("v2c", it.v2c_updates, e, false);
            expect("precomp", it.pre_computations, 0, false);
            expect("comparisons", it.residual_comparisons, 0, false);
            break;
        case DecoderPolicy::Srbp:
            expect("c2v", it.c2v_updates, e, false);
            expect("v2c", it.v2c_updates, e * (dv - 1), false);
            expect("precomp", it.pre_computations, e * (dc - 1) * (dv - 1), false);
            expect("comparisons", it.residual_comparisons, e * (e - 1), false);
            break;
        case DecoderPolicy::NwSrbp:
            expect("c2v", it.c2v_updates, e, false);
            expect("v2c", it.v2c_updates, e * (dv - 1), false);
            expect("precomp", it.pre_computations, e * (dc - 1) * (dv - 1), false);
            expect("comparisons", it.residual_comparisons, m * (e - 1), false);
            break;
        case DecoderPolicy::LmdSrbp:
            expect("c2v", it.c2v_updates, e, false);
            expect("v2c", it.v2c_updates, e * (dv - 1), false);
            expect("precomp", it.pre_computations, e * (dc - 1) * (dv - 1), false);
            expect("comparisons", it.residual_comparisons, e * ((dv - 1) * dc - 1), false);
            break;
        case DecoderPolicy::ProposedPool:
        case DecoderPolicy::PreSrbp:
            expect("c2v", it.c2v_updates, e, false);
            expect("v2c", it.v2c_updates, e * (dv - 1), false);
            expect("precomp", it.pre_computations, e * (dc - 1) * (dv - 1), false);
            expect("comparisons", it.residual_comparisons, e * (dv * (dc - 1) - 1), true);
            break;
    }
    report.ok = std::all_of(report.checks_run.begin(), report.checks_run.end(),
                            [](const CounterCheck &c) { return c.ok; });
    return report;
}

}  // namespace qldpc
