/* C interface to the qldpc decoder library.
 *
 * All objects are opaque handles created and destroyed through this API.
 * Functions returning qldpc_status give QLDPC_OK on success; on any other
 * status the thread-local message from qldpc_last_error() describes the
 * failure. Strings returned through char** are heap-allocated and must be
 * released with qldpc_string_free().
 */
#ifndef QLDPC_H
#define QLDPC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define QLDPC_API __declspec(dllexport)
#else
#define QLDPC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct qldpc_matrix qldpc_matrix; /* sparse GF(2) matrix */
typedef struct qldpc_code qldpc_code;     /* validated CSS code */

typedef enum qldpc_status {
    QLDPC_OK = 0,
    QLDPC_ERR_INVALID_ARGUMENT = 1,
    QLDPC_ERR_PARSE = 2,
    QLDPC_ERR_VALIDATION = 3,
    QLDPC_ERR_IO = 4,
    QLDPC_ERR_INTERNAL = 5,
} qldpc_status;

typedef enum qldpc_decoder {
    QLDPC_DECODER_SBP = 0,      /* flooding */
    QLDPC_DECODER_SLBP = 1,     /* layered, one check per layer */
    QLDPC_DECODER_SRBP = 2,     /* residual BP, global edge pool */
    QLDPC_DECODER_NW_SRBP = 3,  /* node-wise residual BP */
    QLDPC_DECODER_LMD_SRBP = 4, /* latest-message-driven residual BP */
    QLDPC_DECODER_PRE_POOL = 5, /* flag-list edge pool, single run */
    QLDPC_DECODER_PRE_SRBP = 6, /* predict-and-reduce trial loop */
} qldpc_decoder;

typedef enum qldpc_outcome_class {
    QLDPC_OUTCOME_SUCCESS = 0,         /* stabilizer-equivalent estimate */
    QLDPC_OUTCOME_LOGICAL_FAILURE = 1, /* converged to a different coset */
    QLDPC_OUTCOME_NOT_CONVERGED = 2,
} qldpc_outcome_class;

/* Message for the most recent failing call on this thread. */
QLDPC_API const char *qldpc_last_error(void);

QLDPC_API void qldpc_string_free(char *s);

/* ---- matrices ---------------------------------------------------------- */

QLDPC_API qldpc_status qldpc_matrix_load_alist(const char *path, qldpc_matrix **out);
QLDPC_API qldpc_status qldpc_matrix_save_alist(const qldpc_matrix *m, const char *path);
QLDPC_API qldpc_status qldpc_matrix_from_dense(uint32_t rows, uint32_t cols,
                                               const uint8_t *row_major, qldpc_matrix **out);
QLDPC_API uint32_t qldpc_matrix_rows(const qldpc_matrix *m);
QLDPC_API uint32_t qldpc_matrix_cols(const qldpc_matrix *m);
QLDPC_API uint32_t qldpc_matrix_rank(const qldpc_matrix *m);
QLDPC_API void qldpc_matrix_free(qldpc_matrix *m);

/* ---- code construction -------------------------------------------------- */

QLDPC_API qldpc_status qldpc_code_bicycle(uint32_t n, uint32_t row_weight, uint32_t rows_kept,
                                          uint64_t seed, qldpc_code **out);
QLDPC_API qldpc_status qldpc_code_generalized_bicycle(const uint32_t *a_exponents, size_t a_len,
                                                      const uint32_t *b_exponents, size_t b_len,
                                                      uint32_t block_size, qldpc_code **out);
QLDPC_API qldpc_status qldpc_code_hypergraph_product(const qldpc_matrix *h1,
                                                     const qldpc_matrix *h2, qldpc_code **out);
/* Load H_X and H_Z from alist files; validates orthogonality. */
QLDPC_API qldpc_status qldpc_code_load(const char *path_x, const char *path_z,
                                       qldpc_code **out);
/* "steane", "bicycle-256-32", "gb-126-28", "hp-400-16" */
QLDPC_API qldpc_status qldpc_code_preset(const char *name, qldpc_code **out);
QLDPC_API qldpc_status qldpc_code_save(const qldpc_code *code, const char *path_x,
                                       const char *path_z);
/* JSON object with n, k, label, and row/column weight histograms. */
QLDPC_API qldpc_status qldpc_code_meta_json(const qldpc_code *code, char **json_out);

QLDPC_API uint32_t qldpc_code_n(const qldpc_code *code);
QLDPC_API uint32_t qldpc_code_k(const qldpc_code *code);
QLDPC_API uint32_t qldpc_code_checks(const qldpc_code *code); /* rows of H_Z */
QLDPC_API uint64_t qldpc_code_edges(const qldpc_code *code);  /* H_Z Tanner edges */
QLDPC_API const char *qldpc_code_label(const qldpc_code *code);
QLDPC_API void qldpc_code_free(qldpc_code *code);

/* ---- single-frame operations -------------------------------------------- */

/* i.i.d. bit-flip sample; (seed, trial) reproduces the harness streams. */
QLDPC_API qldpc_status qldpc_sample_error(uint32_t n, double p, uint64_t seed, uint64_t trial,
                                          uint8_t *e_out);
/* Uniform sample among supports of exactly the given weight. */
QLDPC_API qldpc_status qldpc_sample_error_weight(uint32_t n, uint32_t weight, uint64_t seed,
                                                 uint64_t trial, uint8_t *e_out);
/* s = H_Z * e; s_out must hold qldpc_code_checks(code) bytes. */
QLDPC_API qldpc_status qldpc_syndrome(const qldpc_code *code, const uint8_t *e, uint8_t *s_out);
QLDPC_API qldpc_status qldpc_classify(const qldpc_code *code, const uint8_t *e_true,
                                      const uint8_t *e_hat, int converged,
                                      qldpc_outcome_class *out);

typedef struct qldpc_decode_params {
    qldpc_decoder decoder;
    double p;          /* channel probability behind the prior LLR */
    uint32_t i_max;    /* iteration budget (ignored by PRE_SRBP) */
    uint32_t lambda_max; /* PRE_SRBP trials; 0 = default 15 */
    uint32_t i_t;        /* PRE_SRBP iterations per trial; 0 = default 6 */
    int plain_trial;     /* PRE_SRBP: prepend a no-reduction trial */
    int random_tie_break;
    uint64_t tie_seed;
} qldpc_decode_params;

typedef struct qldpc_decode_result {
    int converged;
    uint32_t iterations;
    uint32_t trials; /* PRE_SRBP only */
    uint64_t c2v_updates;
    uint64_t v2c_updates;
    uint64_t pre_computations;
    uint64_t residual_comparisons;
} qldpc_decode_result;

/* syndrome holds qldpc_code_checks(code) bytes; e_hat_out (optional) holds
 * qldpc_code_n(code) bytes. */
QLDPC_API qldpc_status qldpc_decode(const qldpc_code *code, const uint8_t *syndrome,
                                    const qldpc_decode_params *params, uint8_t *e_hat_out,
                                    qldpc_decode_result *result);

/* ---- Monte-Carlo harness ------------------------------------------------- */

typedef struct qldpc_sim_params {
    qldpc_decode_params decode;
    const double *p_list; /* fer sweep points; first entry fixed p elsewhere */
    size_t p_count;
    const uint32_t *i_max_list; /* iter sweep points */
    size_t i_max_count;
    uint64_t frames;
    uint64_t min_failures;
    uint64_t seed;
    uint32_t workers; /* 0 = hardware concurrency */
} qldpc_sim_params;

/* CSV with the pinned header
 * decoder,code,seed,p_x,i_max,lambda_max,i_t,frames,fail_total,fail_nonconv,
 * fail_logical,fer,fer_lo,fer_hi,mean_iters,c2v,v2c,precomp,comparisons */
QLDPC_API qldpc_status qldpc_fer_sweep(const qldpc_code *code, const qldpc_sim_params *params,
                                       char **csv_out);
QLDPC_API qldpc_status qldpc_iter_sweep(const qldpc_code *code, const qldpc_sim_params *params,
                                        char **csv_out);
/* CSV: decoder,code,seed,weight,samples,solved,ratio */
QLDPC_API qldpc_status qldpc_weight_profile(const qldpc_code *code,
                                            const qldpc_sim_params *params,
                                            const uint32_t *weights, size_t weight_count,
                                            uint32_t samples_per_weight, char **csv_out);
/* Text report of the per-iteration counter identities on a regular code.
 * Returns QLDPC_ERR_VALIDATION when an identity is violated. */
QLDPC_API qldpc_status qldpc_verify_counters(const qldpc_code *code, qldpc_decoder decoder,
                                             char **report_out);

#ifdef __cplusplus
}
#endif

#endif /* QLDPC_H */
