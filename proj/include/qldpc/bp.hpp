#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "qldpc/gf2.hpp"

namespace qldpc {

/// Message clipping. Tanh products are kept away from +/-1 before atanh and
/// every LLR is clamped, so messages stay finite through any update order.
constexpr double kMaxLlr = 38.0;
constexpr double kTanhCap = 1.0 - 1e-12;

inline double clamp_llr(double x) {
    if (x > kMaxLlr) return kMaxLlr;
    if (x < -kMaxLlr) return -kMaxLlr;
    return x;
}

/// Prior LLR ln((1-p)/p) for p in [0, 0.5), clamped to the clip bound.
double prior_llr(double p);

/// Flat directed-edge view of a parity-check matrix. Edge e runs between
/// check chk_of[e] and variable var_of[e]; edges are numbered row-major
/// (check-major), which is also the tie-break order used by the schedulers.
/// var_edges lists the same edge ids grouped by variable.
struct TannerGraph {
    std::uint32_t checks = 0;
    std::uint32_t vars = 0;
    std::uint32_t edges = 0;
    std::vector<std::uint32_t> chk_ptr;    // checks+1
    std::vector<std::uint32_t> var_of;     // edges
    std::vector<std::uint32_t> chk_of;     // edges
    std::vector<std::uint32_t> var_ptr;    // vars+1
    std::vector<std::uint32_t> var_edges;  // edges, grouped by variable

    static TannerGraph build(const SparseBinaryMatrix &h);

    std::uint32_t check_degree(std::uint32_t c) const { return chk_ptr[c + 1] - chk_ptr[c]; }
    std::uint32_t var_degree(std::uint32_t v) const { return var_ptr[v + 1] - var_ptr[v]; }

    /// Edge id for (check, var); throws if absent.
    std::uint32_t edge_id(std::uint32_t check, std::uint32_t var) const;
};

/// Per-decode message storage. v2c/c2v are indexed by directed edge id;
/// tanh_half caches tanh(v2c/2) and is refreshed whenever v2c changes.
struct MessageState {
    double l0 = 0.0;
    std::vector<double> v2c;
    std::vector<double> c2v;
    std::vector<double> tanh_half;
    std::vector<double> llr_marginal;
    BitVector e_hat;
    std::uint32_t iteration = 0;

    void init(const TannerGraph &g, double prior);

    void set_v2c(std::uint32_t e, double value) {
        v2c[e] = value;
        tanh_half[e] = std::tanh(value * 0.5);
    }
};

/// Check-to-variable message, exact sum-product rule:
///   (-1)^s * 2 atanh( prod_{e' in row, e' != e} tanh(v2c[e']/2) ).
double c2v_exact(const TannerGraph &g, const MessageState &st, std::uint8_t syndrome_bit,
                 std::uint32_t edge);

/// Min-sum approximation of the same message (used for residual
/// pre-computation): sign product times the minimum inbound magnitude.
double c2v_min_sum(const TannerGraph &g, const MessageState &st, std::uint8_t syndrome_bit,
                   std::uint32_t edge);

/// Variable-to-check message: l0 plus all inbound c2v except the target's.
double v2c_value(const TannerGraph &g, const MessageState &st, std::uint32_t edge);

/// Recompute all marginals (l0 + every inbound c2v) and the hard decision.
/// Ties at exactly zero decide e_hat = 1.
void marginal_and_decide(const TannerGraph &g, MessageState &st);

/// true iff the hard decision reproduces the syndrome.
bool check_convergence(const TannerGraph &g, const MessageState &st, const BitVector &s);

}  // namespace qldpc
