#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qldpc/channel.hpp"
#include "qldpc/decoders.hpp"

namespace qldpc {

/// One Monte-Carlo experiment. Frames are independent work items; the RNG
/// stream of frame t under sweep point i is keyed by (seed, i, t), so any
/// worker count reproduces the same errors and the same CSV bytes.
struct ExperimentConfig {
    const CssCode *code = nullptr;
    std::string code_label;  // defaults to code->label()
    DecoderPolicy decoder = DecoderPolicy::Sbp;
    DecodeOptions opts{};
    std::vector<double> p_list;          // fer-sweep points; first entry is the
                                         // fixed p for iter sweeps / profiles
    std::vector<std::uint32_t> i_max_list;  // iter-sweep points
    std::uint64_t frames = 10000;
    std::uint64_t min_failures = 100;
    std::uint64_t seed = 0;
    std::uint32_t workers = 0;  // 0 = hardware concurrency
};

struct SweepRow {
    std::string decoder;
    std::string code;
    std::uint64_t seed = 0;
    double p_x = 0.0;
    std::uint32_t i_max = 0;
    std::uint32_t lambda_max = 0;  // PRE rows only, 0 otherwise
    std::uint32_t i_t = 0;
    std::uint64_t frames = 0;
    std::uint64_t fail_total = 0;
    std::uint64_t fail_nonconv = 0;
    std::uint64_t fail_logical = 0;
    double fer = 0.0;
    double fer_lo = 0.0;  // Wilson 95% interval
    double fer_hi = 0.0;
    double mean_iters = 0.0;  // over converged frames
    double c2v = 0.0;         // mean counter totals per frame
    double v2c = 0.0;
    double precomp = 0.0;
    double comparisons = 0.0;
};

struct SimReport {
    std::vector<SweepRow> rows;
    std::string to_csv() const;  // pinned header, byte-stable
};

/// 95% Wilson score interval for f failures out of n frames.
void wilson_interval(std::uint64_t failures, std::uint64_t frames, double &lo, double &hi);

/// FER per channel probability. Per p the run stops early, at a fixed batch
/// boundary, once min_failures failures are in and at least
/// min(frames, 1000) frames ran; it always stops at cfg.frames.
SimReport run_fer_sweep(const ExperimentConfig &cfg);

/// FER per iteration budget at fixed p = p_list.front(). For PRE-sRBP the
/// trial count follows the budget: lambda_max = max(1, i_max / i_t), with
/// the per-trial budget capped at i_max.
SimReport run_iter_sweep(const ExperimentConfig &cfg);

struct WeightProfileRow {
    std::uint32_t weight = 0;
    std::uint64_t samples = 0;
    std::uint64_t solved = 0;  // ConvergedSuccess frames
    double ratio = 0.0;
};

struct WeightProfile {
    std::string decoder;
    std::string code;
    std::uint64_t seed = 0;
    std::vector<WeightProfileRow> rows;
    std::string to_csv() const;
};

/// Solvable ratio over errors drawn uniformly among the supports of each
/// exact weight.
WeightProfile run_weight_profile(const ExperimentConfig &cfg,
                                 std::span<const std::uint32_t> weights,
                                 std::uint64_t samples_per_weight);

struct CounterCheck {
    std::string quantity;
    std::uint64_t expected = 0;  // or bound
    std::uint64_t actual = 0;
    bool is_bound = false;  // actual <= expected instead of equality
    bool ok = false;
};

struct CounterReport {
    std::string decoder;
    bool regular = false;
    std::uint32_t d_v = 0, d_c = 0, edges = 0, checks = 0;
    std::uint32_t measured_iteration = 0;
    std::vector<CounterCheck> checks_run;
    bool ok = false;
    std::string to_text() const;
};

/// Decode one non-trivial syndrome on a regular code and compare the
/// per-iteration counters against the closed-form per-iteration costs
/// (equalities for sBP/sLBP/sRBP/NW/LMD, an upper bound for the proposed
/// pool). Throws std::invalid_argument if the code is not regular.
CounterReport verify_counters(const CssCode &code, DecoderPolicy policy);

}  // namespace qldpc
