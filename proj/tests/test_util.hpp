#pragma once

#include <stdexcept>
#include <vector>

#include "qldpc/code.hpp"
#include "qldpc/gf2.hpp"
#include "qldpc/rng.hpp"

namespace qldpc::testutil {

/// Random sparse matrix with i.i.d. entries.
inline SparseBinaryMatrix random_sparse(CounterRng &rng, std::uint32_t rows, std::uint32_t cols,
                                        double density) {
    std::vector<std::vector<std::uint32_t>> r(rows);
    for (std::uint32_t i = 0; i < rows; ++i)
        for (std::uint32_t j = 0; j < cols; ++j)
            if (rng.uniform01() < density)
                r[i].push_back(j);
    return SparseBinaryMatrix::from_rows(rows, cols, std::move(r));
}

inline BitVector random_bits(CounterRng &rng, std::size_t n, double density = 0.5) {
    BitVector v(n, 0);
    for (auto &b : v)
        b = rng.uniform01() < density ? 1 : 0;
    return v;
}

/// (d_v, d_c)-regular matrix by the configuration model; reshuffles until no
/// parallel edges remain. n * d_v must be divisible by d_c.
inline SparseBinaryMatrix random_regular(CounterRng &rng, std::uint32_t n, std::uint32_t d_v,
                                         std::uint32_t d_c) {
    if (n * d_v % d_c != 0)
        throw std::invalid_argument("random_regular: n*d_v not divisible by d_c");
    const std::uint32_t m = n * d_v / d_c;
    const std::uint32_t stubs = n * d_v;
    std::vector<std::uint32_t> stub_var(stubs);
    for (std::uint32_t s = 0; s < stubs; ++s)
        stub_var[s] = s % n;
    for (int attempt = 0; attempt < 5000; ++attempt) {
        for (std::uint32_t i = stubs - 1; i > 0; --i) {
            std::uint32_t j = rng.uniform_below(i + 1);
            std::swap(stub_var[i], stub_var[j]);
        }
        std::vector<std::vector<std::uint32_t>> rows(m);
        bool dup = false;
        for (std::uint32_t s = 0; s < stubs && !dup; ++s) {
            auto &row = rows[s / d_c];
            for (auto x : row)
                if (x == stub_var[s])
                    dup = true;
            row.push_back(stub_var[s]);
        }
        if (dup)
            continue;
        return SparseBinaryMatrix::from_rows(m, n, std::move(rows));
    }
    throw std::runtime_error("random_regular: no simple configuration found");
}

/// Small random CSS code drawn from the three constructions (all valid by
/// construction; the CssCode invariant still runs).
inline CssCode random_small_css(CounterRng &rng) {
    switch (rng.uniform_below(3)) {
        case 0: {
            const std::uint32_t half = 4 + rng.uniform_below(10);           // 4..13
            const std::uint32_t w = 2 * (1 + rng.uniform_below(2));         // 2 or 4
            const std::uint32_t kept = 2 + rng.uniform_below(half - 1);     // 2..half
            return make_bicycle(2 * half, std::min(w, half), kept, rng.next_u64());
        }
        case 1: {
            const std::uint32_t block = 3 + rng.uniform_below(10);  // 3..12
            auto poly = [&](std::uint32_t weight) {
                std::vector<std::uint32_t> p;
                while (p.size() < weight) {
                    std::uint32_t e = rng.uniform_below(block);
                    bool seen = false;
                    for (auto x : p)
                        if (x == e)
                            seen = true;
                    if (!seen)
                        p.push_back(e);
                }
                return p;
            };
            const std::uint32_t w = 1 + rng.uniform_below(std::min(block, 4u));
            return make_generalized_bicycle(poly(w), poly(w), block);
        }
        default: {
            auto h1 = random_sparse(rng, 2 + rng.uniform_below(3), 3 + rng.uniform_below(3), 0.5);
            auto h2 = random_sparse(rng, 2 + rng.uniform_below(3), 3 + rng.uniform_below(3), 0.5);
            return make_hypergraph_product(h1, h2);
        }
    }
}

}  // namespace qldpc::testutil
