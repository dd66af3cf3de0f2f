#include "qldpc/channel.hpp"

#include <stdexcept>

#include "qldpc/rng.hpp"

namespace qldpc {

const char *to_string(FailureClass c) {
    switch (c) {
        case FailureClass::ConvergedSuccess: return "converged-success";
        case FailureClass::ConvergedLogicalFailure: return "converged-logical-failure";
        case FailureClass::NotConverged: return "not-converged";
    }
    return "?";
}

BitVector sample_error(const ChannelConfig &cfg, std::size_t n, std::uint64_t trial) {
    if (!(cfg.p_x >= 0.0) || cfg.p_x >= 0.5)
        throw std::invalid_argument("sample_error: p_x must lie in [0, 0.5)");
    CounterRng rng(cfg.seed, 0x6572726f72ull, trial);
    BitVector e(n, 0);
    if (cfg.p_x == 0.0)
        return e;
    for (std::size_t j = 0; j < n; ++j)
        e[j] = rng.bernoulli(cfg.p_x) ? 1 : 0;
    return e;
}

BitVector sample_error_of_weight(std::uint64_t seed, std::uint64_t trial, std::size_t n,
                                 std::uint32_t weight) {
    if (weight > n)
        throw std::invalid_argument("sample_error_of_weight: weight exceeds length");
    CounterRng rng(seed, 0x77656967687464ull, trial);
    std::vector<std::uint32_t> pool(n);
    for (std::size_t j = 0; j < n; ++j)
        pool[j] = static_cast<std::uint32_t>(j);
    BitVector e(n, 0);
    for (std::uint32_t i = 0; i < weight; ++i) {
        std::uint32_t j = i + rng.uniform_below(static_cast<std::uint32_t>(n - i));
        std::swap(pool[i], pool[j]);
        e[pool[i]] = 1;
    }
    return e;
}

FailureClass classify_outcome(const CssCode &code, const BitVector &e_true,
                              const BitVector &e_hat, bool converged) {
    if (e_true.size() != code.n() || e_hat.size() != code.n())
        throw std::invalid_argument("classify_outcome: length mismatch");
    if (!converged)
        return FailureClass::NotConverged;
    // A decoder that claims convergence must have matched the syndrome.
    if (mat_vec_mod2(code.h_z(), e_true) != mat_vec_mod2(code.h_z(), e_hat))
        throw std::logic_error("classify_outcome: converged=true but syndromes differ");
    const BitVector residual = xor_bits(e_true, e_hat);
    return code.x_stabilizers().contains(residual) ? FailureClass::ConvergedSuccess
                                                   : FailureClass::ConvergedLogicalFailure;
}

}  // namespace qldpc
