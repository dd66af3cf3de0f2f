// Acceptance suite: one pass/fail line per criterion. Exit code is the
// number of failed criteria. `acceptance --criterion N` runs one of them.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "qldpc/channel.hpp"
#include "qldpc/decoders.hpp"
#include "qldpc/pre.hpp"
#include "qldpc/sim.hpp"
#include "test_util.hpp"

using namespace qldpc;

namespace {

std::uint32_t g_workers = 0;

struct CritResult {
    bool pass = false;
    std::string detail;
};

using CritFn = std::function<CritResult()>;

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

// --- criterion 1: convergence soundness fuzz --------------------------------

CritResult crit1_convergence_soundness() {
    CounterRng rng(0xACCE9701, 1);
    const DecoderPolicy policies[] = {DecoderPolicy::Sbp,     DecoderPolicy::Slbp,
                                      DecoderPolicy::Srbp,    DecoderPolicy::NwSrbp,
                                      DecoderPolicy::LmdSrbp, DecoderPolicy::PreSrbp};
    const std::uint64_t kTriples = 10000;
    std::uint64_t checked = 0, convergent = 0;
    CssCode code = testutil::random_small_css(rng);
    TannerGraph graph = TannerGraph::build(code.h_z());
    for (std::uint64_t t = 0; t < kTriples; ++t) {
        if (t % 50 == 0 && t > 0) {  // fresh code every 50 triples
            code = testutil::random_small_css(rng);
            graph = TannerGraph::build(code.h_z());
        }
        auto e = testutil::random_bits(rng, code.n(), 0.5 * rng.uniform01());
        auto s = mat_vec_mod2(code.h_z(), e);
        DecodeOptions opts;
        opts.p = 0.01 + 0.4 * rng.uniform01();
        opts.i_max = 1 + rng.uniform_below(8);
        opts.trial = TrialConfig{1 + rng.uniform_below(std::min(code.n(), 5u)),
                                 1 + rng.uniform_below(4), rng.bernoulli(0.2)};
        auto out = decode(graph, s, policies[t % 6], opts);
        ++checked;
        if (!out.converged)
            continue;
        ++convergent;
        if (mat_vec_mod2(code.h_z(), out.e_hat) != s)
            return {false, "declared convergence with mismatched syndrome at triple " +
                               std::to_string(t) + " (" + to_string(policies[t % 6]) + ")"};
    }
    return {true, std::to_string(checked) + " triples, " + std::to_string(convergent) +
                      " convergent, all satisfied H_Z e = s"};
}

// --- criterion 2: Table-style counter identities -----------------------------

CritResult crit2_counter_identities() {
    const auto code = preset_gb_126_28();
    std::string detail;
    for (auto policy : {DecoderPolicy::Sbp, DecoderPolicy::Slbp, DecoderPolicy::Srbp,
                        DecoderPolicy::NwSrbp, DecoderPolicy::LmdSrbp,
                        DecoderPolicy::ProposedPool}) {
        auto report = verify_counters(code, policy);
        if (!report.ok)
            return {false, std::string(to_string(policy)) + " violated:\n" + report.to_text()};
        detail += std::string(to_string(policy)) + " ";
    }
    return {true, "per-iteration identities hold on gb-126-28 (E=630, M=63, d_v=5, d_c=10) for " +
                      detail};
}

// --- criterion 3: support-sequence oracle equivalence ------------------------

CritResult crit3_sequence_oracle() {
    CounterRng rng(0xACCE9703, 3);
    int done = 0;
    while (done < 100) {
        const std::uint32_t d_v = 2 + rng.uniform_below(3);
        const std::uint32_t d_c = 2 + rng.uniform_below(5);
        const std::uint32_t n = d_c * (1 + rng.uniform_below(6));
        if (n * d_v % d_c != 0)
            continue;
        SparseBinaryMatrix h;
        try {
            h = testutil::random_regular(rng, n, d_v, d_c);
        } catch (const std::exception &) {
            continue;
        }
        BitVector s(h.n_rows());
        for (auto &b : s)
            b = rng.bernoulli(0.5) ? 1 : 0;
        const double p = 0.02 + 0.3 * rng.uniform01();
        const auto seq = build_support_sequence(h, s);
        const auto ratios = one_iter_bp_error_ratios(h, s, p);
        for (std::size_t r = 1; r < seq.order.size(); ++r) {
            if (seq.metric[r - 1] > seq.metric[r])
                return {false, "sequence metric not ascending (code " + std::to_string(done) + ")"};
            const double a = ratios[seq.order[r - 1]], b = ratios[seq.order[r]];
            const bool tie = seq.metric[r - 1] == seq.metric[r];
            if (tie ? (a != b) : (a <= b))
                return {false, "ratio ordering disagrees with sequence at rank " +
                                   std::to_string(r) + " (code " + std::to_string(done) + ")"};
        }
        ++done;
    }
    return {true, "100 random regular codes: ascending metric == descending one-iteration "
                  "q1/q0 ratio, up to ties"};
}

// --- criterion 4: Steane exactness -------------------------------------------

CritResult crit4_steane_exactness() {
    const auto steane = make_steane();
    // flooding breaks the degree-3 quartet symmetry only with a weak prior;
    // the other schedules break it by update order and want a strong one
    const std::pair<DecoderPolicy, double> fixtures[] = {
        {DecoderPolicy::Sbp, 0.12},
        {DecoderPolicy::Slbp, 0.03},
        {DecoderPolicy::Srbp, 0.03},
        {DecoderPolicy::PreSrbp, 0.03},
    };
    for (auto [policy, p] : fixtures) {
        for (std::uint32_t j = 0; j < 7; ++j) {
            BitVector e(7, 0);
            e[j] = 1;
            const auto s = mat_vec_mod2(steane.h_z(), e);
            DecodeOptions opts;
            opts.p = p;
            opts.i_max = 10;
            opts.trial = TrialConfig{1, 10, false};
            const auto out = decode(steane, s, policy, opts);
            if (!out.converged || out.iterations > 10 || out.e_hat != e)
                return {false, std::string(to_string(policy)) + " (p=" + fmt(p) +
                                   ") missed the weight-1 error at position " +
                                   std::to_string(j)};
        }
    }
    return {true, "sbp(p=0.12), slbp/srbp/pre-srbp(p=0.03): all 7 weight-1 errors corrected "
                  "exactly within 10 iterations"};
}

// --- criterion 5: weight-profile shape ---------------------------------------

CritResult crit5_weight_profile() {
    const auto code = preset_bicycle_256_32();
    ExperimentConfig cfg;
    cfg.code = &code;
    cfg.seed = 11;
    cfg.workers = g_workers;
    cfg.p_list = {0.02};
    cfg.frames = 200;
    cfg.min_failures = 201;

    cfg.decoder = DecoderPolicy::Sbp;
    cfg.opts.i_max = 90;
    const std::uint32_t sbp_weights[] = {1, 2, 3, 4, 5, 6, 7, 8, 9, 14};
    auto sbp = run_weight_profile(cfg, sbp_weights, 200);
    std::string detail = "sbp:";
    for (const auto &row : sbp.rows) {
        detail += " w" + std::to_string(row.weight) + "=" + fmt(row.ratio);
        if (row.weight <= 9 && row.ratio < 0.90)
            return {false, "sbp ratio " + fmt(row.ratio) + " < 0.90 at weight " +
                               std::to_string(row.weight)};
        if (row.weight == 14 && row.ratio > 0.10)
            return {false, "sbp ratio " + fmt(row.ratio) + " > 0.10 at weight 14"};
    }

    cfg.decoder = DecoderPolicy::PreSrbp;
    cfg.opts.trial = TrialConfig{15, 6, false};
    const std::uint32_t pre_weights[] = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
    auto pre = run_weight_profile(cfg, pre_weights, 200);
    detail += " | pre-srbp:";
    for (const auto &row : pre.rows) {
        detail += " w" + std::to_string(row.weight) + "=" + fmt(row.ratio);
        if (row.ratio < 0.90)
            return {false, "pre-srbp ratio " + fmt(row.ratio) + " < 0.90 at weight " +
                               std::to_string(row.weight)};
    }
    return {true, detail};
}

// --- criterion 6: decoder ordering at desk scale ------------------------------

SweepRow fer_point(const CssCode &code, DecoderPolicy decoder, double p,
                   std::uint64_t frames, std::uint64_t seed) {
    ExperimentConfig cfg;
    cfg.code = &code;
    cfg.decoder = decoder;
    cfg.opts.i_max = 90;
    cfg.opts.trial = TrialConfig{15, 6, false};
    cfg.p_list = {p};
    cfg.frames = frames;
    cfg.min_failures = frames + 1;  // no early stop: fixed frame count
    cfg.seed = seed;
    cfg.workers = g_workers;
    return run_fer_sweep(cfg).rows.at(0);
}

CritResult crit6_orderings() {
    const std::uint64_t frames = 10000;

    const auto bicycle = preset_bicycle_256_32();
    const auto sbp = fer_point(bicycle, DecoderPolicy::Sbp, 0.02, frames, 20);
    const auto slbp = fer_point(bicycle, DecoderPolicy::Slbp, 0.02, frames, 20);
    const auto lmd = fer_point(bicycle, DecoderPolicy::LmdSrbp, 0.02, frames, 20);
    const auto pre = fer_point(bicycle, DecoderPolicy::PreSrbp, 0.02, frames, 20);
    std::string detail = "bicycle p=0.02: pre=" + fmt(pre.fer) + " lmd=" + fmt(lmd.fer) +
                         " slbp=" + fmt(slbp.fer) + " sbp=" + fmt(sbp.fer);
    if (!(pre.fer < lmd.fer))
        return {false, detail + " -- FER(pre) !< FER(lmd)"};
    if (!(lmd.fer <= slbp.fer))
        return {false, detail + " -- FER(lmd) !<= FER(slbp)"};
    if (!(slbp.fer <= sbp.fer))
        return {false, detail + " -- FER(slbp) !<= FER(sbp)"};
    if (!(pre.fer_hi < sbp.fer_lo))
        return {false, detail + " -- Wilson intervals of the outer pair overlap"};

    // HP instance at a p where FER(sbp) sits in [1e-2, 1e-1]
    const auto hp = preset_hp_400_16();
    const double hp_p = 0.02;
    const auto hp_sbp = fer_point(hp, DecoderPolicy::Sbp, hp_p, frames, 21);
    const auto hp_srbp = fer_point(hp, DecoderPolicy::Srbp, hp_p, frames, 21);
    const auto hp_nw = fer_point(hp, DecoderPolicy::NwSrbp, hp_p, frames, 21);
    const auto hp_lmd = fer_point(hp, DecoderPolicy::LmdSrbp, hp_p, frames, 21);
    const auto hp_pre = fer_point(hp, DecoderPolicy::PreSrbp, hp_p, frames, 21);
    detail += " | hp p=" + fmt(hp_p) + ": sbp=" + fmt(hp_sbp.fer) + " srbp=" + fmt(hp_srbp.fer) +
              " nw=" + fmt(hp_nw.fer) + " lmd=" + fmt(hp_lmd.fer) + " pre=" + fmt(hp_pre.fer);
    if (hp_sbp.fer < 0.01 || hp_sbp.fer > 0.1)
        return {false, detail + " -- FER(sbp) outside [1e-2, 1e-1]"};
    for (const auto *other : {&hp_srbp, &hp_nw, &hp_lmd}) {
        if (!(3.0 * hp_pre.fer <= other->fer))
            return {false, detail + " -- FER(pre) not 3x below " + other->decoder};
    }
    return {true, detail};
}

// --- criterion 7: lambda_max trend --------------------------------------------

CritResult crit7_lambda_trend() {
    const auto code = preset_bicycle_256_32();
    const std::uint64_t frames = 10000;
    const std::uint32_t lambdas[] = {1, 5, 10, 15};
    std::vector<SweepRow> rows;
    std::string detail = "p=0.02 i_t=6:";
    for (auto lambda : lambdas) {
        ExperimentConfig cfg;
        cfg.code = &code;
        cfg.decoder = DecoderPolicy::PreSrbp;
        cfg.opts.trial = TrialConfig{lambda, 6, false};
        cfg.p_list = {0.02};
        cfg.frames = frames;
        cfg.min_failures = frames + 1;
        cfg.seed = 22;
        cfg.workers = g_workers;
        rows.push_back(run_fer_sweep(cfg).rows.at(0));
        detail += " l" + std::to_string(lambda) + "=" + fmt(rows.back().fer);
    }
    for (std::size_t a = 0; a + 1 < rows.size(); ++a) {
        for (std::size_t b = a + 1; b < rows.size(); ++b) {
            const double fa = rows[a].fer, fb = rows[b].fer;
            const double n = static_cast<double>(frames);
            const double sigma =
                std::sqrt(fa * (1.0 - fa) / n + fb * (1.0 - fb) / n);
            if (fa < fb - 3.0 * sigma)
                return {false, detail + " -- FER increased beyond 3 sigma from lambda=" +
                                   std::to_string(lambdas[a]) + " to " +
                                   std::to_string(lambdas[b])};
        }
    }
    return {true, detail};
}

// --- criterion 8: equal residuals at initialization ----------------------------

CritResult crit8_equal_residuals() {
    CounterRng rng(0xACCE9708, 8);
    for (const auto &code : {preset_gb_126_28(), preset_bicycle_256_32()}) {
        const auto g = TannerGraph::build(code.h_z());
        MessageState st;
        st.init(g, prior_llr(0.02));
        BitVector s(g.checks);
        for (auto &b : s)
            b = rng.bernoulli(0.5) ? 1 : 0;
        ResidualTable rt;
        init_residuals(g, st, s, rt);
        for (std::uint32_t e = 1; e < g.edges; ++e)
            if (rt.residual[e] != rt.residual[0])
                return {false, code.label() + ": residual[" + std::to_string(e) +
                                   "] != residual[0] at initialization"};
    }
    return {true, "all E residuals identical at initialization on gb-126-28 and "
                  "bicycle-256-32 (uniform prior)"};
}

// --- criterion 9: determinism across worker counts -----------------------------

CritResult crit9_determinism() {
    const auto code = preset_bicycle_256_32();
    ExperimentConfig cfg;
    cfg.code = &code;
    cfg.decoder = DecoderPolicy::Slbp;
    cfg.opts.i_max = 30;
    cfg.p_list = {0.02, 0.05};
    cfg.frames = 2048;
    cfg.min_failures = 40;  // exercises the early-stop path
    cfg.seed = 23;
    std::vector<std::string> csvs;
    for (std::uint32_t workers : {1u, 2u, 5u}) {
        cfg.workers = workers;
        csvs.push_back(run_fer_sweep(cfg).to_csv());
    }
    if (csvs[0] != csvs[1] || csvs[0] != csvs[2])
        return {false, "CSV bytes differ between worker counts 1, 2, 5"};
    // and an iter sweep through the same path
    cfg.i_max_list = {2, 8};
    std::vector<std::string> iter_csvs;
    for (std::uint32_t workers : {1u, 3u}) {
        cfg.workers = workers;
        iter_csvs.push_back(run_iter_sweep(cfg).to_csv());
    }
    if (iter_csvs[0] != iter_csvs[1])
        return {false, "iter-sweep CSV bytes differ between worker counts 1, 3"};
    return {true, "byte-identical CSV for workers {1,2,5} (fer) and {1,3} (iter), "
                  "early stop exercised"};
}

}  // namespace

int main(int argc, char **argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc)
            only = std::atoi(argv[++i]);
        else if (std::strcmp(argv[i], "--workers") == 0 && i + 1 < argc)
            g_workers = static_cast<std::uint32_t>(std::atoi(argv[++i]));
    }

    struct Entry {
        int id;
        const char *name;
        double limit_minutes;
        CritFn fn;
    };
    const Entry entries[] = {
        {1, "convergence soundness (fuzz, all six decoders)", 5, crit1_convergence_soundness},
        {2, "per-iteration counter identities (regular GB)", 5, crit2_counter_identities},
        {3, "support sequence == one-iteration BP oracle", 5, crit3_sequence_oracle},
        {4, "Steane weight-1 exactness (sbp/slbp/srbp/pre)", 5, crit4_steane_exactness},
        {5, "weight-profile shape on bicycle-256-32", 10, crit5_weight_profile},
        {6, "decoder ordering at p=0.02 (bicycle + HP)", 30, crit6_orderings},
        {7, "lambda_max trend non-increasing", 15, crit7_lambda_trend},
        {8, "equal residuals at initialization", 5, crit8_equal_residuals},
        {9, "CSV determinism across worker counts", 5, crit9_determinism},
    };

    int failures = 0;
    for (const auto &entry : entries) {
        if (only != 0 && entry.id != only)
            continue;
        const auto start = std::chrono::steady_clock::now();
        CritResult result;
        try {
            result = entry.fn();
        } catch (const std::exception &e) {
            result = {false, std::string("exception: ") + e.what()};
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = elapsed <= entry.limit_minutes * 60.0;
        const bool pass = result.pass && in_time;
        std::printf("criterion %d: %s  [%s, %.1fs/%gmin]  %s%s\n", entry.id,
                    pass ? "PASS" : "FAIL", entry.name, elapsed, entry.limit_minutes,
                    result.detail.c_str(), in_time ? "" : " -- runtime limit exceeded");
        std::fflush(stdout);
        if (!pass)
            ++failures;
    }
    return failures;
}
