#include <cmath>

#include "doctest.h"
#include "qldpc/channel.hpp"
#include "qldpc/decoders.hpp"
#include "qldpc/pre.hpp"
#include "test_util.hpp"

using namespace qldpc;

namespace {

DecodeOptions quick_opts(double p = 0.05, std::uint32_t i_max = 10) {
    DecodeOptions o;
    o.p = p;
    o.i_max = i_max;
    return o;
}

/// Syndrome outside the column space of H_Z (never satisfiable), so the
/// decoder runs its full budget.
BitVector unsatisfiable_syndrome(const CssCode &code) {
    const Gf2RowBasis col_space(code.h_z().transposed());
    for (std::uint32_t i = 0; i < code.h_z().n_rows(); ++i) {
        BitVector s(code.h_z().n_rows(), 0);
        s[i] = 1;
        if (!col_space.contains(s))
            return s;
    }
    throw std::runtime_error("test: H_Z has full row rank, pick another code");
}

}  // namespace

TEST_CASE("single-run decoders converge instantly on the zero syndrome") {
    auto code = preset_gb_126_28();
    const BitVector s(code.h_z().n_rows(), 0);
    for (auto policy : {DecoderPolicy::Sbp, DecoderPolicy::Slbp, DecoderPolicy::Srbp,
                        DecoderPolicy::NwSrbp, DecoderPolicy::LmdSrbp,
                        DecoderPolicy::ProposedPool}) {
        auto out = decode(code, s, policy, quick_opts());
        CHECK(out.converged);
        CHECK(out.iterations == 0);
        CHECK(is_zero(out.e_hat));
        CHECK(out.totals.c2v_updates == 0);
    }
    // PRE always reduces one predicted position first, so its first trial
    // decodes a column syndrome; it must still undo the reduction exactly.
    auto out = decode(code, s, DecoderPolicy::PreSrbp, quick_opts());
    CHECK(out.converged);
    CHECK(is_zero(out.e_hat));
}

TEST_CASE("flooding and layered correct every weight-1 error on the Steane code") {
    // Flooding needs a weak prior here: with l0 < 2m its first iteration
    // flips the whole 4-cycle around the degree-3 column at once. The
    // sequential schedule breaks that symmetry and prefers a strong prior.
    auto steane = make_steane();
    for (std::uint32_t j = 0; j < 7; ++j) {
        BitVector e(7, 0);
        e[j] = 1;
        const auto s = mat_vec_mod2(steane.h_z(), e);
        for (auto [policy, p] : {std::pair{DecoderPolicy::Sbp, 0.12},
                                 std::pair{DecoderPolicy::Slbp, 0.04}}) {
            auto out = decode(steane, s, policy, quick_opts(p, 10));
            REQUIRE(out.converged);
            REQUIRE(out.iterations <= 10);
            REQUIRE(out.e_hat == e);
        }
    }
}

TEST_CASE("select_max_edge picks the maximum with lexicographic ties") {
    auto h = SparseBinaryMatrix::from_rows(3, 4, {{0, 1}, {1, 2}, {2, 3}});
    auto g = TannerGraph::build(h);
    ResidualTable rt;
    rt.residual = {0.1, 0.4, 0.2, 0.9, 0.9, 0.3};
    rt.pre_computed.assign(6, 0.0);
    std::vector<std::uint32_t> pool = {0, 1, 2, 3, 4, 5};
    OpCounters counters;

    auto sel = select_max_edge(g, rt, pool, counters);
    CHECK(sel.found);
    CHECK(sel.edge == 3);  // tie between edges 3 and 4 resolves to the lower id
    CHECK(sel.check == 1);
    CHECK(sel.var == 2);
    CHECK(counters.residual_comparisons == 5);

    rt.residual[5] = 2.0;
    sel = select_max_edge(g, rt, pool, counters);
    CHECK(sel.edge == 5);

    // pool order must not affect the lexicographic result
    std::vector<std::uint32_t> shuffled = {5, 4, 3, 2, 1, 0};
    rt.residual[5] = 0.3;
    sel = select_max_edge(g, rt, shuffled, counters, TieBreak::Lexicographic);
    CHECK(sel.edge == 3);

    std::vector<std::uint32_t> empty;
    sel = select_max_edge(g, rt, empty, counters);
    CHECK_FALSE(sel.found);
}

TEST_CASE("fresh initialization selects (c0, first neighbor)") {
    auto code = preset_gb_126_28();
    auto g = TannerGraph::build(code.h_z());
    MessageState st;
    st.init(g, prior_llr(0.05));
    BitVector s(g.checks, 0);
    s[3] = 1;
    ResidualTable rt;
    init_residuals(g, st, s, rt);
    // every inbound message is the prior, so each pre-computation is
    // (+-1)^s * 2 atanh(tanh(l0/2)^(d_c-1)) and all residuals coincide
    const double expected =
        2.0 * std::atanh(std::pow(std::tanh(st.l0 / 2.0), 9.0));
    for (std::uint32_t e = 0; e < g.edges; ++e)
        REQUIRE(rt.residual[e] == doctest::Approx(expected).epsilon(1e-12));
    std::vector<std::uint32_t> pool(g.edges);
    for (std::uint32_t e = 0; e < g.edges; ++e)
        pool[e] = e;
    OpCounters counters;
    auto sel = select_max_edge(g, rt, pool, counters);
    CHECK(sel.edge == 0);
    CHECK(sel.check == 0);
    CHECK(sel.var == g.var_of[0]);
}

TEST_CASE("equal residual at initialization on a regular code (degeneracy regression)") {
    auto code = preset_gb_126_28();
    auto g = TannerGraph::build(code.h_z());
    MessageState st;
    st.init(g, prior_llr(0.02));
    CounterRng rng(11, 40);
    BitVector s(g.checks);
    for (auto &b : s)
        b = rng.bernoulli(0.5) ? 1 : 0;
    ResidualTable rt;
    init_residuals(g, st, s, rt);
    for (std::uint32_t e = 1; e < g.edges; ++e)
        REQUIRE(rt.residual[e] == rt.residual[0]);
}

TEST_CASE("propagate_and_refresh touches exactly the S.2 neighborhood") {
    // v0 sits in c0 (degree 2), c1 and c2 (degree 4 each): d_v = 3, d_c = 4
    auto h = SparseBinaryMatrix::from_rows(
        3, 8, {{0, 7}, {0, 1, 2, 3}, {0, 4, 5, 6}});
    auto g = TannerGraph::build(h);
    MessageState st;
    st.init(g, prior_llr(0.05));
    BitVector s = {1, 0, 1};
    ResidualTable rt;
    init_residuals(g, st, s, rt);

    // S.1 on edge (c0, v0)
    OpCounters counters;
    const std::uint32_t edge = g.edge_id(0, 0);
    st.c2v[edge] = c2v_exact(g, st, s[0], edge);
    rt.residual[edge] = 0.0;
    propagate_and_refresh(g, s, st, rt, 0, 0, counters);
    CHECK(counters.v2c_updates == 2);        // d_v - 1
    CHECK(counters.pre_computations == 6);   // (d_v - 1)(d_c - 1)
    CHECK(rt.residual[edge] == 0.0);

    // refreshed residuals match an independent would-be recomputation
    for (std::uint32_t c : {1u, 2u}) {
        for (std::uint32_t e = g.chk_ptr[c]; e < g.chk_ptr[c + 1]; ++e) {
            if (g.var_of[e] == 0)
                continue;
            const double pre = c2v_exact(g, st, s[c], e);
            REQUIRE(rt.pre_computed[e] == doctest::Approx(pre).epsilon(1e-15));
            REQUIRE(rt.residual[e] ==
                    doctest::Approx(std::fabs(pre - st.c2v[e])).epsilon(1e-15));
        }
    }

    // a degree-1 variable propagates nothing
    auto h1 = SparseBinaryMatrix::from_rows(1, 2, {{0, 1}});
    auto g1 = TannerGraph::build(h1);
    MessageState st1;
    st1.init(g1, prior_llr(0.05));
    BitVector s1 = {1};
    ResidualTable rt1;
    init_residuals(g1, st1, s1, rt1);
    OpCounters c1;
    propagate_and_refresh(g1, s1, st1, rt1, 0, 0, c1);
    CHECK(c1.v2c_updates == 0);
    CHECK(c1.pre_computations == 0);
}

TEST_CASE("per-iteration counters match the closed forms on the regular GB code") {
    auto code = preset_gb_126_28();
    const auto g = TannerGraph::build(code.h_z());
    const std::uint64_t E = g.edges, M = g.checks, dv = 5, dc = 10;
    REQUIRE(E == M * dc);

    const BitVector s = unsatisfiable_syndrome(code);
    auto opts = quick_opts(0.05, 3);
    opts.trial = TrialConfig{1, 3, false};

    for (auto policy : {DecoderPolicy::Sbp, DecoderPolicy::Slbp, DecoderPolicy::Srbp,
                        DecoderPolicy::NwSrbp, DecoderPolicy::LmdSrbp,
                        DecoderPolicy::ProposedPool, DecoderPolicy::PreSrbp}) {
        auto out = decode(code, s, policy, opts);
        REQUIRE_FALSE(out.converged);
        REQUIRE(out.per_iteration.size() == 3);
        for (std::size_t k = 0; k < out.per_iteration.size(); ++k) {
            const auto &it = out.per_iteration[k];
            CAPTURE(to_string(policy));
            CAPTURE(k);
            CHECK(it.c2v_updates == E);
            switch (policy) {
                case DecoderPolicy::Sbp:
                case DecoderPolicy::Slbp:
                    CHECK(it.v2c_updates == E);
                    CHECK(it.pre_computations == 0);
                    CHECK(it.residual_comparisons == 0);
                    break;
                case DecoderPolicy::Srbp:
                    CHECK(it.v2c_updates == E * (dv - 1));
                    CHECK(it.pre_computations == E * (dc - 1) * (dv - 1));
                    CHECK(it.residual_comparisons == E * (E - 1));
                    break;
                case DecoderPolicy::NwSrbp:
                    CHECK(it.v2c_updates == E * (dv - 1));
                    CHECK(it.pre_computations == E * (dc - 1) * (dv - 1));
                    CHECK(it.residual_comparisons == M * (E - 1));
                    break;
                case DecoderPolicy::LmdSrbp:
                    CHECK(it.v2c_updates == E * (dv - 1));
                    CHECK(it.pre_computations == E * (dc - 1) * (dv - 1));
                    if (k >= 1)  // the very first selection is a global scan
                        CHECK(it.residual_comparisons == E * ((dv - 1) * dc - 1));
                    else
                        CHECK(it.residual_comparisons ==
                              (E - 1) + (E - 1) * ((dv - 1) * dc - 1));
                    break;
                case DecoderPolicy::ProposedPool:
                case DecoderPolicy::PreSrbp:
                    CHECK(it.v2c_updates == E * (dv - 1));
                    CHECK(it.pre_computations == E * (dc - 1) * (dv - 1));
                    CHECK(it.residual_comparisons <= E * (dv * (dc - 1) - 1));
                    break;
            }
        }
    }
}

TEST_CASE("NW-sRBP equals sRBP when every check has degree 1") {
    // h_z = I_4, h_x empty: trivial code where each check pins one variable
    auto hz = SparseBinaryMatrix::from_rows(4, 4, {{0}, {1}, {2}, {3}});
    auto hx = SparseBinaryMatrix::from_rows(0, 4, {});
    CssCode code(hx, hz, "identity");
    BitVector s = {1, 0, 1, 1};
    auto a = decode_srbp(code, s, quick_opts());
    auto b = decode_nw_srbp(code, s, quick_opts());
    CHECK(a.converged);
    CHECK(b.converged);
    CHECK(a.e_hat == b.e_hat);
    CHECK(a.e_hat == s);  // degree-1 checks force e = s
    CHECK(a.iterations == b.iterations);
    CHECK(a.totals == b.totals);
}

TEST_CASE("declared convergence implies a satisfied syndrome (mini fuzz)") {
    CounterRng rng(314159, 41);
    const DecoderPolicy policies[] = {DecoderPolicy::Sbp,     DecoderPolicy::Slbp,
                                      DecoderPolicy::Srbp,    DecoderPolicy::NwSrbp,
                                      DecoderPolicy::LmdSrbp, DecoderPolicy::ProposedPool,
                                      DecoderPolicy::PreSrbp};
    for (int it = 0; it < 300; ++it) {
        auto code = testutil::random_small_css(rng);
        auto e = testutil::random_bits(rng, code.n(), 0.5 * rng.uniform01());
        auto s = mat_vec_mod2(code.h_z(), e);
        auto policy = policies[it % 7];
        auto opts = quick_opts(0.01 + 0.4 * rng.uniform01(), 1 + rng.uniform_below(6));
        opts.trial = TrialConfig{1 + rng.uniform_below(std::min(code.n(), 4u)),
                                 1 + rng.uniform_below(4), rng.bernoulli(0.2)};
        auto out = decode(code, s, policy, opts);
        if (out.converged)
            REQUIRE(mat_vec_mod2(code.h_z(), out.e_hat) == s);
    }
}

TEST_CASE("decodes are bit-for-bit deterministic") {
    auto code = preset_gb_126_28();
    CounterRng rng(606060, 42);
    BitVector e(code.n(), 0);
    for (auto &b : e)
        b = rng.bernoulli(0.05) ? 1 : 0;
    auto s = mat_vec_mod2(code.h_z(), e);
    for (auto policy : {DecoderPolicy::Sbp, DecoderPolicy::Slbp, DecoderPolicy::Srbp,
                        DecoderPolicy::NwSrbp, DecoderPolicy::LmdSrbp,
                        DecoderPolicy::ProposedPool, DecoderPolicy::PreSrbp}) {
        auto a = decode(code, s, policy, quick_opts(0.05, 6));
        auto b = decode(code, s, policy, quick_opts(0.05, 6));
        CHECK(a.converged == b.converged);
        CHECK(a.e_hat == b.e_hat);
        CHECK(a.iterations == b.iterations);
        CHECK(a.totals == b.totals);
    }
    // seeded-random tie-breaking is deterministic per seed as well
    auto opts = quick_opts(0.05, 6);
    opts.tie_break = TieBreak::SeededRandom;
    opts.tie_seed = 99;
    auto a = decode(code, s, DecoderPolicy::Srbp, opts);
    auto b = decode(code, s, DecoderPolicy::Srbp, opts);
    CHECK(a.e_hat == b.e_hat);
    CHECK(a.totals == b.totals);
}

TEST_CASE("syndrome length is validated") {
    auto code = make_steane();
    BitVector bad(2, 0);
    CHECK_THROWS_AS(decode_flooding(code, bad, quick_opts()), std::invalid_argument);
    CHECK_THROWS_AS(decode_srbp(code, bad, quick_opts()), std::invalid_argument);
}
