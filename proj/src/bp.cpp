#include "qldpc/bp.hpp"

#include <stdexcept>

namespace qldpc {

double prior_llr(double p) {
    if (!(p >= 0.0) || p >= 0.5)
        throw std::invalid_argument("prior_llr: p must lie in [0, 0.5)");
    if (p == 0.0)
        return kMaxLlr;
    return clamp_llr(std::log((1.0 - p) / p));
}

TannerGraph TannerGraph::build(const SparseBinaryMatrix &h) {
    TannerGraph g;
    g.checks = h.n_rows();
    g.vars = h.n_cols();
    g.edges = static_cast<std::uint32_t>(h.n_entries());
    g.chk_ptr.assign(g.checks + 1, 0);
    g.var_of.reserve(g.edges);
    g.chk_of.reserve(g.edges);
    for (std::uint32_t i = 0; i < g.checks; ++i) {
        for (auto j : h.row_support(i)) {
            g.var_of.push_back(j);
            g.chk_of.push_back(i);
        }
        g.chk_ptr[i + 1] = static_cast<std::uint32_t>(g.var_of.size());
    }
    g.var_ptr.assign(g.vars + 1, 0);
    for (auto j : g.var_of)
        ++g.var_ptr[j + 1];
    for (std::uint32_t j = 0; j < g.vars; ++j)
        g.var_ptr[j + 1] += g.var_ptr[j];
    g.var_edges.assign(g.edges, 0);
    std::vector<std::uint32_t> cursor(g.var_ptr.begin(), g.var_ptr.end() - 1);
    for (std::uint32_t e = 0; e < g.edges; ++e)
        g.var_edges[cursor[g.var_of[e]]++] = e;
    // within each variable group the edges come out sorted by check index
    return g;
}

std::uint32_t TannerGraph::edge_id(std::uint32_t check, std::uint32_t var) const {
    for (std::uint32_t e = chk_ptr[check]; e < chk_ptr[check + 1]; ++e)
        if (var_of[e] == var)
            return e;
    throw std::out_of_range("TannerGraph::edge_id: no such edge");
}

void MessageState::init(const TannerGraph &g, double prior) {
    l0 = prior;
    v2c.assign(g.edges, prior);
    tanh_half.assign(g.edges, std::tanh(prior * 0.5));
    c2v.assign(g.edges, 0.0);
    llr_marginal.assign(g.vars, prior);
    e_hat.assign(g.vars, 0);
    iteration = 0;
}

double c2v_exact(const TannerGraph &g, const MessageState &st, std::uint8_t syndrome_bit,
                 std::uint32_t edge) {
    const std::uint32_t c = g.chk_of[edge];
    double prod = 1.0;
    for (std::uint32_t e = g.chk_ptr[c]; e < g.chk_ptr[c + 1]; ++e)
        if (e != edge)
            prod *= st.tanh_half[e];
    if (prod > kTanhCap) prod = kTanhCap;
    if (prod < -kTanhCap) prod = -kTanhCap;
    const double m = 2.0 * std::atanh(prod);
    return clamp_llr(syndrome_bit ? -m : m);
}

double c2v_min_sum(const TannerGraph &g, const MessageState &st, std::uint8_t syndrome_bit,
                   std::uint32_t edge) {
    const std::uint32_t c = g.chk_of[edge];
    double min_mag = kMaxLlr;  // empty product saturates at the clip bound
    bool negative = syndrome_bit != 0;
    for (std::uint32_t e = g.chk_ptr[c]; e < g.chk_ptr[c + 1]; ++e) {
        if (e == edge)
            continue;
        const double x = st.v2c[e];
        negative ^= (x < 0.0);
        const double mag = std::fabs(x);
        if (mag < min_mag)
            min_mag = mag;
    }
    return negative ? -min_mag : min_mag;
}

double v2c_value(const TannerGraph &g, const MessageState &st, std::uint32_t edge) {
    const std::uint32_t v = g.var_of[edge];
    double sum = st.l0;
    for (std::uint32_t k = g.var_ptr[v]; k < g.var_ptr[v + 1]; ++k) {
        const std::uint32_t e = g.var_edges[k];
        if (e != edge)
            sum += st.c2v[e];
    }
    return clamp_llr(sum);
}

void marginal_and_decide(const TannerGraph &g, MessageState &st) {
    for (std::uint32_t v = 0; v < g.vars; ++v) {
        double sum = st.l0;
        for (std::uint32_t k = g.var_ptr[v]; k < g.var_ptr[v + 1]; ++k)
            sum += st.c2v[g.var_edges[k]];
        sum = clamp_llr(sum);
        st.llr_marginal[v] = sum;
        st.e_hat[v] = (sum <= 0.0) ? 1 : 0;
    }
}

bool check_convergence(const TannerGraph &g, const MessageState &st, const BitVector &s) {
    for (std::uint32_t c = 0; c < g.checks; ++c) {
        std::uint8_t parity = 0;
        for (std::uint32_t e = g.chk_ptr[c]; e < g.chk_ptr[c + 1]; ++e)
            parity ^= st.e_hat[g.var_of[e]];
        if (parity != s[c])
            return false;
    }
    return true;
}

}  // namespace qldpc
