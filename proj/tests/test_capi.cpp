#include <cstring>
#include <string>

#include "doctest.h"
#include "qldpc/qldpc.h"

namespace {

struct CodeHandle {
    qldpc_code *code = nullptr;
    ~CodeHandle() { qldpc_code_free(code); }
};

struct CsvHandle {
    char *csv = nullptr;
    ~CsvHandle() { qldpc_string_free(csv); }
};

}  // namespace

TEST_CASE("C API: presets, metadata and accessors") {
    CodeHandle h;
    REQUIRE(qldpc_code_preset("steane", &h.code) == QLDPC_OK);
    CHECK(qldpc_code_n(h.code) == 7);
    CHECK(qldpc_code_k(h.code) == 1);
    CHECK(qldpc_code_checks(h.code) == 3);
    CHECK(qldpc_code_edges(h.code) == 12);
    CHECK(std::string(qldpc_code_label(h.code)) == "steane");

    CsvHandle meta;
    REQUIRE(qldpc_code_meta_json(h.code, &meta.csv) == QLDPC_OK);
    const std::string json(meta.csv);
    CHECK(json.find("\"n\": 7") != std::string::npos);
    CHECK(json.find("\"k\": 1") != std::string::npos);

    qldpc_code *bad = nullptr;
    CHECK(qldpc_code_preset("nope", &bad) == QLDPC_ERR_INVALID_ARGUMENT);
    CHECK(std::string(qldpc_last_error()).find("nope") != std::string::npos);
}

TEST_CASE("C API: decode round trip on the Steane code") {
    CodeHandle h;
    REQUIRE(qldpc_code_preset("steane", &h.code) == QLDPC_OK);

    uint8_t e[7] = {0};
    e[4] = 1;
    uint8_t s[3] = {0};
    REQUIRE(qldpc_syndrome(h.code, e, s) == QLDPC_OK);
    CHECK(s[0] == 1);

    qldpc_decode_params params{};
    params.decoder = QLDPC_DECODER_SLBP;
    params.p = 0.04;
    params.i_max = 10;
    uint8_t e_hat[7] = {0};
    qldpc_decode_result result{};
    REQUIRE(qldpc_decode(h.code, s, &params, e_hat, &result) == QLDPC_OK);
    CHECK(result.converged == 1);
    CHECK(std::memcmp(e, e_hat, 7) == 0);

    qldpc_outcome_class cls;
    REQUIRE(qldpc_classify(h.code, e, e_hat, result.converged, &cls) == QLDPC_OK);
    CHECK(cls == QLDPC_OUTCOME_SUCCESS);
}

TEST_CASE("C API: error sampling is deterministic") {
    uint8_t a[32], b[32];
    REQUIRE(qldpc_sample_error(32, 0.2, 9, 4, a) == QLDPC_OK);
    REQUIRE(qldpc_sample_error(32, 0.2, 9, 4, b) == QLDPC_OK);
    CHECK(std::memcmp(a, b, 32) == 0);
    CHECK(qldpc_sample_error(32, 0.7, 9, 4, a) == QLDPC_ERR_INVALID_ARGUMENT);

    uint8_t w[32];
    REQUIRE(qldpc_sample_error_weight(32, 5, 1, 2, w) == QLDPC_OK);
    int count = 0;
    for (auto bit : w)
        count += bit;
    CHECK(count == 5);
}

TEST_CASE("C API: sweeps produce the pinned CSV header") {
    CodeHandle h;
    REQUIRE(qldpc_code_preset("gb-126-28", &h.code) == QLDPC_OK);

    qldpc_sim_params sim{};
    sim.decode.decoder = QLDPC_DECODER_SBP;
    sim.decode.p = 0.02;
    sim.decode.i_max = 8;
    const double p_list[] = {0.02};
    sim.p_list = p_list;
    sim.p_count = 1;
    sim.frames = 64;
    sim.min_failures = 100;
    sim.seed = 5;
    sim.workers = 2;

    CsvHandle fer;
    REQUIRE(qldpc_fer_sweep(h.code, &sim, &fer.csv) == QLDPC_OK);
    CHECK(std::string(fer.csv).rfind("decoder,code,seed,p_x,i_max,lambda_max,i_t,", 0) == 0);

    const uint32_t i_list[] = {1, 2};
    sim.i_max_list = i_list;
    sim.i_max_count = 2;
    CsvHandle iter;
    REQUIRE(qldpc_iter_sweep(h.code, &sim, &iter.csv) == QLDPC_OK);
    CHECK(std::string(iter.csv).find("\nsbp,gb-126-28,5,0.02,1,") != std::string::npos);

    const uint32_t weights[] = {0, 1};
    CsvHandle wp;
    REQUIRE(qldpc_weight_profile(h.code, &sim, weights, 2, 10, &wp.csv) == QLDPC_OK);
    CHECK(std::string(wp.csv).rfind("decoder,code,seed,weight,samples,solved,ratio\n", 0) == 0);

    CsvHandle counters;
    REQUIRE(qldpc_verify_counters(h.code, QLDPC_DECODER_SRBP, &counters.csv) == QLDPC_OK);
    CHECK(std::string(counters.csv).find("all counter identities hold") != std::string::npos);
}

TEST_CASE("C API: alist matrix round trip and validation errors") {
    const uint8_t dense[6] = {1, 1, 0, 0, 1, 1};  // rows {110, 011}
    qldpc_matrix *m = nullptr;
    REQUIRE(qldpc_matrix_from_dense(2, 3, dense, &m) == QLDPC_OK);
    CHECK(qldpc_matrix_rows(m) == 2);
    CHECK(qldpc_matrix_cols(m) == 3);
    CHECK(qldpc_matrix_rank(m) == 2);
    REQUIRE(qldpc_matrix_save_alist(m, "/tmp/qldpc_capi.alist") == QLDPC_OK);

    qldpc_matrix *back = nullptr;
    REQUIRE(qldpc_matrix_load_alist("/tmp/qldpc_capi.alist", &back) == QLDPC_OK);
    CHECK(qldpc_matrix_rank(back) == 2);

    qldpc_code *hp = nullptr;
    REQUIRE(qldpc_code_hypergraph_product(m, back, &hp) == QLDPC_OK);
    CHECK(qldpc_code_n(hp) == 3 * 3 + 2 * 2);
    qldpc_code_free(hp);
    qldpc_matrix_free(m);
    qldpc_matrix_free(back);
    std::remove("/tmp/qldpc_capi.alist");

    qldpc_matrix *missing = nullptr;
    CHECK(qldpc_matrix_load_alist("/tmp/qldpc_not_there.alist", &missing) == QLDPC_ERR_IO);

    // non-orthogonal pair -> validation error with the offending rows named
    qldpc_code *bad = nullptr;
    const uint8_t hx[3] = {1, 1, 0};
    const uint8_t hz[3] = {0, 1, 1};
    qldpc_matrix *mx = nullptr, *mz = nullptr;
    REQUIRE(qldpc_matrix_from_dense(1, 3, hx, &mx) == QLDPC_OK);
    REQUIRE(qldpc_matrix_from_dense(1, 3, hz, &mz) == QLDPC_OK);
    REQUIRE(qldpc_matrix_save_alist(mx, "/tmp/qldpc_capi_x.alist") == QLDPC_OK);
    REQUIRE(qldpc_matrix_save_alist(mz, "/tmp/qldpc_capi_z.alist") == QLDPC_OK);
    CHECK(qldpc_code_load("/tmp/qldpc_capi_x.alist", "/tmp/qldpc_capi_z.alist", &bad) ==
          QLDPC_ERR_VALIDATION);
    CHECK(std::string(qldpc_last_error()).find("not orthogonal") != std::string::npos);
    qldpc_matrix_free(mx);
    qldpc_matrix_free(mz);
    std::remove("/tmp/qldpc_capi_x.alist");
    std::remove("/tmp/qldpc_capi_z.alist");
}
