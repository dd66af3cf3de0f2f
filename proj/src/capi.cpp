#include "qldpc/qldpc.h"

#include <cstdlib>
#include <cstring>
#include <map>
#include <string>

#include "json.hpp"
#include "qldpc/alist.hpp"
#include "qldpc/channel.hpp"
#include "qldpc/code.hpp"
#include "qldpc/decoders.hpp"
#include "qldpc/pre.hpp"
#include "qldpc/sim.hpp"

using namespace qldpc;

struct qldpc_matrix {
    SparseBinaryMatrix m;
};

struct qldpc_code {
    CssCode code;
    TannerGraph graph;  // of h_z, built once
    explicit qldpc_code(CssCode c) : code(std::move(c)), graph(TannerGraph::build(code.h_z())) {}
};

namespace {

thread_local std::string g_last_error;

char *dup_string(const std::string &s) {
    char *out = static_cast<char *>(std::malloc(s.size() + 1));
    if (out != nullptr)
        std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

/// Run fn, translating exceptions into status codes + the thread-local
/// message.
template <typename Fn>
qldpc_status guarded(Fn &&fn) {
    try {
        return fn();
    } catch (const CssValidationError &e) {
        g_last_error = e.what();
        return QLDPC_ERR_VALIDATION;
    } catch (const std::invalid_argument &e) {
        g_last_error = e.what();
        return QLDPC_ERR_INVALID_ARGUMENT;
    } catch (const std::runtime_error &e) {
        g_last_error = e.what();
        const std::string what = e.what();
        if (what.find("alist") != std::string::npos)
            return what.find("open") != std::string::npos || what.find("write") != std::string::npos
                       ? QLDPC_ERR_IO
                       : QLDPC_ERR_PARSE;
        return QLDPC_ERR_INTERNAL;
    } catch (const std::exception &e) {
        g_last_error = e.what();
        return QLDPC_ERR_INTERNAL;
    }
}

qldpc_status require(bool ok, const char *message) {
    if (ok)
        return QLDPC_OK;
    g_last_error = message;
    return QLDPC_ERR_INVALID_ARGUMENT;
}

DecoderPolicy to_policy(qldpc_decoder d) {
    switch (d) {
        case QLDPC_DECODER_SBP: return DecoderPolicy::Sbp;
        case QLDPC_DECODER_SLBP: return DecoderPolicy::Slbp;
        case QLDPC_DECODER_SRBP: return DecoderPolicy::Srbp;
        case QLDPC_DECODER_NW_SRBP: return DecoderPolicy::NwSrbp;
        case QLDPC_DECODER_LMD_SRBP: return DecoderPolicy::LmdSrbp;
        case QLDPC_DECODER_PRE_POOL: return DecoderPolicy::ProposedPool;
        case QLDPC_DECODER_PRE_SRBP: return DecoderPolicy::PreSrbp;
    }
    throw std::invalid_argument("unknown qldpc_decoder value");
}

DecodeOptions to_options(const qldpc_decode_params &p) {
    DecodeOptions opts;
    opts.p = p.p;
    opts.i_max = p.i_max;
    opts.tie_break = p.random_tie_break ? TieBreak::SeededRandom : TieBreak::Lexicographic;
    opts.tie_seed = p.tie_seed;
    opts.trial.lambda_max = p.lambda_max > 0 ? p.lambda_max : 15;
    opts.trial.i_t = p.i_t > 0 ? p.i_t : 6;
    opts.trial.include_plain_trial = p.plain_trial != 0;
    return opts;
}

ExperimentConfig to_experiment(const qldpc_code *code, const qldpc_sim_params &p) {
    ExperimentConfig cfg;
    cfg.code = &code->code;
    cfg.decoder = to_policy(p.decode.decoder);
    cfg.opts = to_options(p.decode);
    cfg.p_list.assign(p.p_list, p.p_list + p.p_count);
    if (p.i_max_list != nullptr)
        cfg.i_max_list.assign(p.i_max_list, p.i_max_list + p.i_max_count);
    cfg.frames = p.frames;
    cfg.min_failures = p.min_failures;
    cfg.seed = p.seed;
    cfg.workers = p.workers;
    return cfg;
}

}  // namespace

extern "C" {

const char *qldpc_last_error(void) { return g_last_error.c_str(); }

void qldpc_string_free(char *s) { std::free(s); }

qldpc_status qldpc_matrix_load_alist(const char *path, qldpc_matrix **out) {
    if (auto st = require(path && out, "null argument"))
        return st;
    return guarded([&] {
        *out = new qldpc_matrix{read_alist_file(path)};
        return QLDPC_OK;
    });
}

qldpc_status qldpc_matrix_save_alist(const qldpc_matrix *m, const char *path) {
    if (auto st = require(m && path, "null argument"))
        return st;
    return guarded([&] {
        write_alist_file(path, m->m);
        return QLDPC_OK;
    });
}

qldpc_status qldpc_matrix_from_dense(uint32_t rows, uint32_t cols, const uint8_t *row_major,
                                     qldpc_matrix **out) {
    if (auto st = require(row_major && out, "null argument"))
        return st;
    return guarded([&] {
        *out = new qldpc_matrix{SparseBinaryMatrix::from_dense(rows, cols, row_major)};
        return QLDPC_OK;
    });
}

uint32_t qldpc_matrix_rows(const qldpc_matrix *m) { return m ? m->m.n_rows() : 0; }
uint32_t qldpc_matrix_cols(const qldpc_matrix *m) { return m ? m->m.n_cols() : 0; }
uint32_t qldpc_matrix_rank(const qldpc_matrix *m) { return m ? rank_mod2(m->m) : 0; }
void qldpc_matrix_free(qldpc_matrix *m) { delete m; }

qldpc_status qldpc_code_bicycle(uint32_t n, uint32_t row_weight, uint32_t rows_kept,
                                uint64_t seed, qldpc_code **out) {
    if (auto st = require(out != nullptr, "null argument"))
        return st;
    return guarded([&] {
        *out = new qldpc_code(make_bicycle(n, row_weight, rows_kept, seed));
        return QLDPC_OK;
    });
}

qldpc_status qldpc_code_generalized_bicycle(const uint32_t *a_exponents, size_t a_len,
                                            const uint32_t *b_exponents, size_t b_len,
                                            uint32_t block_size, qldpc_code **out) {
    if (auto st = require(a_exponents && b_exponents && out, "null argument"))
        return st;
    return guarded([&] {
        std::vector<std::uint32_t> a(a_exponents, a_exponents + a_len);
        std::vector<std::uint32_t> b(b_exponents, b_exponents + b_len);
        *out = new qldpc_code(make_generalized_bicycle(a, b, block_size));
        return QLDPC_OK;
    });
}

qldpc_status qldpc_code_hypergraph_product(const qldpc_matrix *h1, const qldpc_matrix *h2,
                                           qldpc_code **out) {
    if (auto st = require(h1 && h2 && out, "null argument"))
        return st;
    return guarded([&] {
        *out = new qldpc_code(make_hypergraph_product(h1->m, h2->m));
        return QLDPC_OK;
    });
}

qldpc_status qldpc_code_load(const char *path_x, const char *path_z, qldpc_code **out) {
    if (auto st = require(path_x && path_z && out, "null argument"))
        return st;
    return guarded([&] {
        *out = new qldpc_code(load_code(path_x, path_z));
        return QLDPC_OK;
    });
}

qldpc_status qldpc_code_preset(const char *name, qldpc_code **out) {
    if (auto st = require(name && out, "null argument"))
        return st;
    return guarded([&] {
        *out = new qldpc_code(make_preset(name));
        return QLDPC_OK;
    });
}

qldpc_status qldpc_code_save(const qldpc_code *code, const char *path_x, const char *path_z) {
    if (auto st = require(code && path_x && path_z, "null argument"))
        return st;
    return guarded([&] {
        write_alist_file(path_x, code->code.h_x());
        write_alist_file(path_z, code->code.h_z());
        return QLDPC_OK;
    });
}

qldpc_status qldpc_code_meta_json(const qldpc_code *code, char **json_out) {
    if (auto st = require(code && json_out, "null argument"))
        return st;
    return guarded([&] {
        const auto &c = code->code;
        auto hist = [](const SparseBinaryMatrix &m, bool rows) {
            std::map<std::size_t, std::uint32_t> h;
            if (rows)
                for (std::uint32_t i = 0; i < m.n_rows(); ++i)
                    ++h[m.row_support(i).size()];
            else
                for (std::uint32_t j = 0; j < m.n_cols(); ++j)
                    ++h[m.col_support(j).size()];
            nlohmann::json out = nlohmann::json::object();
            for (auto [w, count] : h)
                out[std::to_string(w)] = count;
            return out;
        };
        nlohmann::json j{
            {"label", c.label()},
            {"n", c.n()},
            {"k", c.k()},
            {"m_x", c.h_x().n_rows()},
            {"m_z", c.h_z().n_rows()},
            {"row_weight_hist_x", hist(c.h_x(), true)},
            {"row_weight_hist_z", hist(c.h_z(), true)},
            {"col_weight_hist_x", hist(c.h_x(), false)},
            {"col_weight_hist_z", hist(c.h_z(), false)},
        };
        *json_out = dup_string(j.dump(2));
        return *json_out ? QLDPC_OK : QLDPC_ERR_INTERNAL;
    });
}

uint32_t qldpc_code_n(const qldpc_code *code) { return code ? code->code.n() : 0; }
uint32_t qldpc_code_k(const qldpc_code *code) { return code ? code->code.k() : 0; }
uint32_t qldpc_code_checks(const qldpc_code *code) {
    return code ? code->code.h_z().n_rows() : 0;
}
uint64_t qldpc_code_edges(const qldpc_code *code) { return code ? code->graph.edges : 0; }
const char *qldpc_code_label(const qldpc_code *code) {
    return code ? code->code.label().c_str() : "";
}
void qldpc_code_free(qldpc_code *code) { delete code; }

qldpc_status qldpc_sample_error(uint32_t n, double p, uint64_t seed, uint64_t trial,
                                uint8_t *e_out) {
    if (auto st = require(e_out != nullptr, "null argument"))
        return st;
    return guarded([&] {
        auto e = sample_error(ChannelConfig{p, seed}, n, trial);
        std::memcpy(e_out, e.data(), n);
        return QLDPC_OK;
    });
}

qldpc_status qldpc_sample_error_weight(uint32_t n, uint32_t weight, uint64_t seed,
                                       uint64_t trial, uint8_t *e_out) {
    if (auto st = require(e_out != nullptr, "null argument"))
        return st;
    return guarded([&] {
        auto e = sample_error_of_weight(seed, trial, n, weight);
        std::memcpy(e_out, e.data(), n);
        return QLDPC_OK;
    });
}

qldpc_status qldpc_syndrome(const qldpc_code *code, const uint8_t *e, uint8_t *s_out) {
    if (auto st = require(code && e && s_out, "null argument"))
        return st;
    return guarded([&] {
        BitVector ev(e, e + code->code.n());
        auto s = mat_vec_mod2(code->code.h_z(), ev);
        std::memcpy(s_out, s.data(), s.size());
        return QLDPC_OK;
    });
}

qldpc_status qldpc_classify(const qldpc_code *code, const uint8_t *e_true, const uint8_t *e_hat,
                            int converged, qldpc_outcome_class *out) {
    if (auto st = require(code && e_true && e_hat && out, "null argument"))
        return st;
    return guarded([&] {
        BitVector a(e_true, e_true + code->code.n());
        BitVector b(e_hat, e_hat + code->code.n());
        switch (classify_outcome(code->code, a, b, converged != 0)) {
            case FailureClass::ConvergedSuccess: *out = QLDPC_OUTCOME_SUCCESS; break;
            case FailureClass::ConvergedLogicalFailure:
                *out = QLDPC_OUTCOME_LOGICAL_FAILURE;
                break;
            case FailureClass::NotConverged: *out = QLDPC_OUTCOME_NOT_CONVERGED; break;
        }
        return QLDPC_OK;
    });
}

qldpc_status qldpc_decode(const qldpc_code *code, const uint8_t *syndrome,
                          const qldpc_decode_params *params, uint8_t *e_hat_out,
                          qldpc_decode_result *result) {
    if (auto st = require(code && syndrome && params && result, "null argument"))
        return st;
    return guarded([&] {
        BitVector s(syndrome, syndrome + code->code.h_z().n_rows());
        auto out = decode(code->graph, s, to_policy(params->decoder), to_options(*params));
        result->converged = out.converged ? 1 : 0;
        result->iterations = out.iterations;
        result->trials = out.trials;
        result->c2v_updates = out.totals.c2v_updates;
        result->v2c_updates = out.totals.v2c_updates;
        result->pre_computations = out.totals.pre_computations;
        result->residual_comparisons = out.totals.residual_comparisons;
        if (e_hat_out != nullptr)
            std::memcpy(e_hat_out, out.e_hat.data(), out.e_hat.size());
        return QLDPC_OK;
    });
}

qldpc_status qldpc_fer_sweep(const qldpc_code *code, const qldpc_sim_params *params,
                             char **csv_out) {
    if (auto st = require(code && params && csv_out, "null argument"))
        return st;
    return guarded([&] {
        auto report = run_fer_sweep(to_experiment(code, *params));
        *csv_out = dup_string(report.to_csv());
        return *csv_out ? QLDPC_OK : QLDPC_ERR_INTERNAL;
    });
}

qldpc_status qldpc_iter_sweep(const qldpc_code *code, const qldpc_sim_params *params,
                              char **csv_out) {
    if (auto st = require(code && params && csv_out, "null argument"))
        return st;
    return guarded([&] {
        auto report = run_iter_sweep(to_experiment(code, *params));
        *csv_out = dup_string(report.to_csv());
        return *csv_out ? QLDPC_OK : QLDPC_ERR_INTERNAL;
    });
}

qldpc_status qldpc_weight_profile(const qldpc_code *code, const qldpc_sim_params *params,
                                  const uint32_t *weights, size_t weight_count,
                                  uint32_t samples_per_weight, char **csv_out) {
    if (auto st = require(code && params && weights && csv_out, "null argument"))
        return st;
    return guarded([&] {
        auto cfg = to_experiment(code, *params);
        std::span<const std::uint32_t> w(weights, weight_count);
        auto profile = run_weight_profile(cfg, w, samples_per_weight);
        *csv_out = dup_string(profile.to_csv());
        return *csv_out ? QLDPC_OK : QLDPC_ERR_INTERNAL;
    });
}

qldpc_status qldpc_verify_counters(const qldpc_code *code, qldpc_decoder decoder,
                                   char **report_out) {
    if (auto st = require(code && report_out, "null argument"))
        return st;
    return guarded([&] {
        auto report = verify_counters(code->code, to_policy(decoder));
        *report_out = dup_string(report.to_text());
        if (*report_out == nullptr)
            return QLDPC_ERR_INTERNAL;
        if (!report.ok) {
            g_last_error = "counter identity violated; see report";
            return QLDPC_ERR_VALIDATION;
        }
        return QLDPC_OK;
    });
}

}  // extern "C"
