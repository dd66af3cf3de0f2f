// Command-line front end for the qldpc shared library. Talks to the C API
// only; see include/qldpc/qldpc.h.
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qldpc/qldpc.h"

namespace {

struct CodeArgs {
    std::string preset;
    std::string path_x, path_z;
};

void add_code_options(CLI::App *cmd, CodeArgs &args) {
    auto *preset = cmd->add_option("--preset", args.preset,
                                   "code preset (steane, bicycle-256-32, gb-126-28, hp-400-16)");
    auto *cx = cmd->add_option("--code-x", args.path_x, "H_X alist file");
    auto *cz = cmd->add_option("--code-z", args.path_z, "H_Z alist file");
    cx->needs(cz);
    cz->needs(cx);
    preset->excludes(cx);
}

[[noreturn]] void fail(const std::string &context) {
    std::cerr << "error: " << context << ": " << qldpc_last_error() << "\n";
    std::exit(1);
}

qldpc_code *open_code(const CodeArgs &args) {
    qldpc_code *code = nullptr;
    if (!args.preset.empty()) {
        if (qldpc_code_preset(args.preset.c_str(), &code) != QLDPC_OK)
            fail("preset '" + args.preset + "'");
    } else if (!args.path_x.empty()) {
        if (qldpc_code_load(args.path_x.c_str(), args.path_z.c_str(), &code) != QLDPC_OK)
            fail("loading code");
    } else {
        std::cerr << "error: provide --preset or --code-x/--code-z\n";
        std::exit(1);
    }
    return code;
}

struct DecoderArgs {
    std::string name = "sbp";
    double p = 0.02;
    std::uint32_t i_max = 90;
    std::uint32_t lambda_max = 15;
    std::uint32_t i_t = 6;
    bool plain_trial = false;
    bool tie_random = false;
    std::uint64_t tie_seed = 0;
};

void add_decoder_options(CLI::App *cmd, DecoderArgs &args) {
    cmd->add_option("--decoder", args.name, "sbp|slbp|srbp|nw-srbp|lmd-srbp|pre-srbp")
        ->check(CLI::IsMember({"sbp", "slbp", "srbp", "nw-srbp", "lmd-srbp", "pre-srbp",
                               "pre-pool"}));
    cmd->add_option("--p", args.p, "bit-flip probability / prior");
    cmd->add_option("--i-max", args.i_max, "iteration budget");
    cmd->add_option("--lambda-max", args.lambda_max, "PRE-sRBP trial count");
    cmd->add_option("--it", args.i_t, "PRE-sRBP iterations per trial");
    cmd->add_flag("--plain-trial", args.plain_trial, "PRE-sRBP: prepend a no-reduction trial");
    cmd->add_flag("--tie-random", args.tie_random, "random tie-breaking (seeded)");
    cmd->add_option("--tie-seed", args.tie_seed, "seed for --tie-random");
}

qldpc_decoder parse_decoder_name(const std::string &name) {
    if (name == "sbp") return QLDPC_DECODER_SBP;
    if (name == "slbp") return QLDPC_DECODER_SLBP;
    if (name == "srbp") return QLDPC_DECODER_SRBP;
    if (name == "nw-srbp") return QLDPC_DECODER_NW_SRBP;
    if (name == "lmd-srbp") return QLDPC_DECODER_LMD_SRBP;
    if (name == "pre-pool") return QLDPC_DECODER_PRE_POOL;
    return QLDPC_DECODER_PRE_SRBP;
}

qldpc_decode_params to_params(const DecoderArgs &args) {
    qldpc_decode_params p{};
    p.decoder = parse_decoder_name(args.name);
    p.p = args.p;
    p.i_max = args.i_max;
    p.lambda_max = args.lambda_max;
    p.i_t = args.i_t;
    p.plain_trial = args.plain_trial ? 1 : 0;
    p.random_tie_break = args.tie_random ? 1 : 0;
    p.tie_seed = args.tie_seed;
    return p;
}

void emit(const std::string &text, const std::string &out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "error: cannot open " << out_path << "\n";
        std::exit(1);
    }
    out << text;
}

std::string support_string(const std::vector<std::uint8_t> &bits) {
    std::string s = "{";
    bool first = true;
    for (std::size_t j = 0; j < bits.size(); ++j) {
        if (!bits[j])
            continue;
        if (!first)
            s += ",";
        s += std::to_string(j);
        first = false;
    }
    return s + "}";
}

int cmd_construct(const std::string &type, const CodeArgs &code_args, std::uint32_t n,
                  std::uint32_t row_weight, std::uint32_t rows_kept, std::uint64_t seed,
                  const std::vector<std::uint32_t> &a_poly,
                  const std::vector<std::uint32_t> &b_poly, std::uint32_t block_size,
                  const std::string &h1_path, const std::string &h2_path,
                  const std::string &out_x, const std::string &out_z,
                  const std::string &meta_path) {
    qldpc_code *code = nullptr;
    if (!code_args.preset.empty()) {
        if (qldpc_code_preset(code_args.preset.c_str(), &code) != QLDPC_OK)
            fail("preset");
    } else if (type == "bicycle") {
        if (qldpc_code_bicycle(n, row_weight, rows_kept, seed, &code) != QLDPC_OK)
            fail("bicycle construction");
    } else if (type == "gb") {
        if (qldpc_code_generalized_bicycle(a_poly.data(), a_poly.size(), b_poly.data(),
                                           b_poly.size(), block_size, &code) != QLDPC_OK)
            fail("generalized bicycle construction");
    } else if (type == "hp") {
        qldpc_matrix *h1 = nullptr, *h2 = nullptr;
        if (qldpc_matrix_load_alist(h1_path.c_str(), &h1) != QLDPC_OK)
            fail("loading --h1");
        if (qldpc_matrix_load_alist(h2_path.c_str(), &h2) != QLDPC_OK)
            fail("loading --h2");
        const auto st = qldpc_code_hypergraph_product(h1, h2, &code);
        qldpc_matrix_free(h1);
        qldpc_matrix_free(h2);
        if (st != QLDPC_OK)
            fail("hypergraph product");
    } else {
        std::cerr << "error: --type must be bicycle, gb or hp (or use --preset)\n";
        return 1;
    }

    if (qldpc_code_save(code, out_x.c_str(), out_z.c_str()) != QLDPC_OK)
        fail("saving alists");
    char *json = nullptr;
    if (qldpc_code_meta_json(code, &json) != QLDPC_OK)
        fail("metadata");
    auto meta = nlohmann::json::parse(json);
    qldpc_string_free(json);
    if (!code_args.preset.empty()) {
        meta["construction"] = {{"preset", code_args.preset}};
    } else if (type == "bicycle") {
        meta["construction"] = {{"type", "bicycle"}, {"n", n}, {"row_weight", row_weight},
                                {"rows_kept", rows_kept}, {"seed", seed}};
    } else if (type == "gb") {
        meta["construction"] = {{"type", "gb"}, {"block_size", block_size}, {"a_poly", a_poly},
                                {"b_poly", b_poly}};
    } else {
        meta["construction"] = {{"type", "hp"}, {"h1", h1_path}, {"h2", h2_path}};
    }
    emit(meta.dump(2) + "\n", meta_path);
    std::cerr << "wrote " << out_x << ", " << out_z << " ([[" << qldpc_code_n(code) << ","
              << qldpc_code_k(code) << "]])\n";
    qldpc_code_free(code);
    return 0;
}

int cmd_decode(const CodeArgs &code_args, const DecoderArgs &dec, std::uint64_t seed,
               std::uint64_t trial, int weight, const std::string &error_bits) {
    qldpc_code *code = open_code(code_args);
    const std::uint32_t n = qldpc_code_n(code);
    const std::uint32_t m = qldpc_code_checks(code);

    std::vector<std::uint8_t> e(n, 0);
    if (!error_bits.empty()) {
        if (error_bits.size() != n) {
            std::cerr << "error: --error needs exactly " << n << " bits\n";
            return 1;
        }
        for (std::uint32_t j = 0; j < n; ++j)
            e[j] = error_bits[j] == '1' ? 1 : 0;
    } else if (weight >= 0) {
        if (qldpc_sample_error_weight(n, static_cast<std::uint32_t>(weight), seed, trial,
                                      e.data()) != QLDPC_OK)
            fail("sampling weighted error");
    } else {
        if (qldpc_sample_error(n, dec.p, seed, trial, e.data()) != QLDPC_OK)
            fail("sampling error");
    }

    std::vector<std::uint8_t> s(m, 0);
    if (qldpc_syndrome(code, e.data(), s.data()) != QLDPC_OK)
        fail("syndrome");

    auto params = to_params(dec);
    std::vector<std::uint8_t> e_hat(n, 0);
    qldpc_decode_result result{};
    if (qldpc_decode(code, s.data(), &params, e_hat.data(), &result) != QLDPC_OK)
        fail("decode");
    qldpc_outcome_class cls;
    if (qldpc_classify(code, e.data(), e_hat.data(), result.converged, &cls) != QLDPC_OK)
        fail("classify");

    std::cout << "code:       " << qldpc_code_label(code) << " [[" << n << ","
              << qldpc_code_k(code) << "]], " << m << " checks, " << qldpc_code_edges(code)
              << " edges\n";
    std::cout << "decoder:    " << dec.name << " (p=" << dec.p << ", i_max=" << dec.i_max;
    if (params.decoder == QLDPC_DECODER_PRE_SRBP)
        std::cout << ", lambda_max=" << dec.lambda_max << ", i_t=" << dec.i_t;
    std::cout << ")\n";
    std::size_t e_weight = 0;
    for (auto b : e)
        e_weight += b;
    std::cout << "error:      weight " << e_weight << "\n";
    std::cout << "supp(e):    " << support_string(e) << "\n";
    std::cout << "supp(s):    " << support_string(s) << "\n";
    std::cout << "converged:  " << (result.converged ? "yes" : "no") << " after "
              << result.iterations << " iterations";
    if (params.decoder == QLDPC_DECODER_PRE_SRBP)
        std::cout << " (" << result.trials << " trials)";
    std::cout << "\n";
    std::cout << "supp(e^):   " << support_string(e_hat) << "\n";
    const char *cls_name = cls == QLDPC_OUTCOME_SUCCESS          ? "converged-success"
                           : cls == QLDPC_OUTCOME_LOGICAL_FAILURE ? "converged-logical-failure"
                                                                  : "not-converged";
    std::cout << "class:      " << cls_name << "\n";
    std::cout << "counters:   c2v=" << result.c2v_updates << " v2c=" << result.v2c_updates
              << " precomp=" << result.pre_computations
              << " comparisons=" << result.residual_comparisons << "\n";
    qldpc_code_free(code);
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Syndrome-based BP decoders for CSS quantum LDPC codes"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from a TOML-style file");

    // construct
    auto *construct = app.add_subcommand("construct", "build a code and write alist files");
    CodeArgs construct_code;
    construct->add_option("--preset", construct_code.preset, "emit a pinned preset instance");
    std::string type;
    construct->add_option("--type", type, "bicycle|gb|hp");
    std::uint32_t n = 256, row_weight = 16, rows_kept = 112, block_size = 63;
    std::uint64_t seed = 1;
    std::vector<std::uint32_t> a_poly, b_poly;
    std::string h1_path, h2_path, out_x = "hx.alist", out_z = "hz.alist", meta_path;
    construct->add_option("--n", n, "bicycle: qubit count");
    construct->add_option("--row-weight", row_weight, "bicycle: row weight");
    construct->add_option("--rows-kept", rows_kept, "bicycle: rows kept after deletion");
    construct->add_option("--seed", seed, "bicycle: circulant seed");
    construct->add_option("--a-poly", a_poly, "gb: exponents of a(x)")->delimiter(',');
    construct->add_option("--b-poly", b_poly, "gb: exponents of b(x)")->delimiter(',');
    construct->add_option("--block-size", block_size, "gb: circulant size");
    construct->add_option("--h1", h1_path, "hp: first classical alist");
    construct->add_option("--h2", h2_path, "hp: second classical alist");
    construct->add_option("--out-x", out_x, "output H_X alist path");
    construct->add_option("--out-z", out_z, "output H_Z alist path");
    construct->add_option("--meta", meta_path, "JSON metadata sidecar (default stdout)");

    // decode
    auto *dec_cmd = app.add_subcommand("decode", "decode one frame with a verbose trace");
    CodeArgs decode_code;
    add_code_options(dec_cmd, decode_code);
    DecoderArgs decode_dec;
    add_decoder_options(dec_cmd, decode_dec);
    std::uint64_t decode_seed = 0, decode_trial = 0;
    int decode_weight = -1;
    std::string error_bits;
    dec_cmd->add_option("--seed", decode_seed, "error stream seed");
    dec_cmd->add_option("--trial", decode_trial, "frame index within the stream");
    dec_cmd->add_option("--weight", decode_weight, "sample an exact-weight error instead");
    dec_cmd->add_option("--error", error_bits, "explicit error bit string (length n)");

    // shared sweep options
    struct SweepArgs {
        CodeArgs code;
        DecoderArgs dec;
        std::vector<double> p_list;
        std::vector<std::uint32_t> i_max_list;
        std::uint64_t frames = 10000, min_failures = 100, seed = 0;
        std::uint32_t workers = 0;
        std::string out;
    };

    auto add_sweep_options = [](CLI::App *cmd, SweepArgs &args, bool needs_p_list) {
        add_code_options(cmd, args.code);
        add_decoder_options(cmd, args.dec);
        if (needs_p_list)
            cmd->add_option("--p-list", args.p_list, "channel probabilities")
                ->delimiter(',')
                ->required();
        cmd->add_option("--frames", args.frames, "frames per point");
        cmd->add_option("--min-failures", args.min_failures, "early-stop failure target");
        cmd->add_option("--seed", args.seed, "experiment seed")->required();
        cmd->add_option("--workers", args.workers, "worker threads (0 = hardware)");
        cmd->add_option("--out", args.out, "CSV output path (default stdout)");
    };

    auto *fer = app.add_subcommand("fer-sweep", "frame error rate vs channel probability");
    SweepArgs fer_args;
    add_sweep_options(fer, fer_args, true);

    auto *iter = app.add_subcommand("iter-sweep", "frame error rate vs iteration budget");
    SweepArgs iter_args;
    add_sweep_options(iter, iter_args, false);  // fixed p comes from --p
    iter->add_option("--i-max-list", iter_args.i_max_list, "iteration budgets")
        ->delimiter(',')
        ->required();

    auto *wp = app.add_subcommand("weight-profile", "solvable ratio per exact error weight");
    SweepArgs wp_args;
    add_sweep_options(wp, wp_args, false);  // decoder prior comes from --p
    std::vector<std::uint32_t> weights;
    std::uint32_t samples = 200;
    wp->add_option("--weights", weights, "error weights")->delimiter(',')->required();
    wp->add_option("--samples", samples, "samples per weight");

    auto *vc = app.add_subcommand("verify-counters", "check the per-iteration operation-counter identities");
    CodeArgs vc_code;
    add_code_options(vc, vc_code);
    std::string vc_decoder = "all";
    vc->add_option("--decoder", vc_decoder,
                   "decoder name or 'all' (pre-pool checks the PRE-sRBP bound)");

    CLI11_PARSE(app, argc, argv);

    if (construct->parsed())
        return cmd_construct(type, construct_code, n, row_weight, rows_kept, seed, a_poly,
                             b_poly, block_size, h1_path, h2_path, out_x, out_z, meta_path);

    if (dec_cmd->parsed())
        return cmd_decode(decode_code, decode_dec, decode_seed, decode_trial, decode_weight,
                          error_bits);

    auto run_sweep = [&](SweepArgs &args, bool is_iter) {
        qldpc_code *code = open_code(args.code);
        qldpc_sim_params sim{};
        sim.decode = to_params(args.dec);
        sim.p_list = args.p_list.data();
        sim.p_count = args.p_list.size();
        sim.i_max_list = args.i_max_list.data();
        sim.i_max_count = args.i_max_list.size();
        sim.frames = args.frames;
        sim.min_failures = args.min_failures;
        sim.seed = args.seed;
        sim.workers = args.workers;
        char *csv = nullptr;
        const auto st = is_iter ? qldpc_iter_sweep(code, &sim, &csv)
                                : qldpc_fer_sweep(code, &sim, &csv);
        if (st != QLDPC_OK)
            fail("sweep");
        emit(csv, args.out);
        qldpc_string_free(csv);
        qldpc_code_free(code);
        return 0;
    };

    if (fer->parsed())
        return run_sweep(fer_args, false);
    if (iter->parsed()) {
        iter_args.p_list = {iter_args.dec.p};
        return run_sweep(iter_args, true);
    }

    if (wp->parsed()) {
        qldpc_code *code = open_code(wp_args.code);
        wp_args.p_list = {wp_args.dec.p};
        qldpc_sim_params sim{};
        sim.decode = to_params(wp_args.dec);
        sim.p_list = wp_args.p_list.data();
        sim.p_count = wp_args.p_list.size();
        sim.frames = samples;
        sim.min_failures = samples + 1;
        sim.seed = wp_args.seed;
        sim.workers = wp_args.workers;
        char *csv = nullptr;
        if (qldpc_weight_profile(code, &sim, weights.data(), weights.size(), samples, &csv) !=
            QLDPC_OK)
            fail("weight profile");
        emit(csv, wp_args.out);
        qldpc_string_free(csv);
        qldpc_code_free(code);
        return 0;
    }

    if (vc->parsed()) {
        qldpc_code *code = open_code(vc_code);
        std::vector<std::string> names;
        if (vc_decoder == "all")
            names = {"sbp", "slbp", "srbp", "nw-srbp", "lmd-srbp", "pre-pool", "pre-srbp"};
        else
            names = {vc_decoder};
        bool all_ok = true;
        for (const auto &name : names) {
            char *report = nullptr;
            const auto st = qldpc_verify_counters(code, parse_decoder_name(name), &report);
            if (report != nullptr) {
                std::cout << report;
                qldpc_string_free(report);
            }
            if (st == QLDPC_ERR_VALIDATION) {
                all_ok = false;
            } else if (st != QLDPC_OK) {
                fail("verify-counters");
            }
        }
        qldpc_code_free(code);
        return all_ok ? 0 : 1;
    }

    return 0;
}
