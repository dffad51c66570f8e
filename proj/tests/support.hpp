#pragma once

// Random objects shared by the unit tests and the acceptance runner.

#include <cstdint>
#include <random>
#include <vector>

#include "lscat/abelian_group.hpp"
#include "lscat/homomorphism.hpp"
#include "lscat/matrix.hpp"

namespace lscat::rnd {

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline IntMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long bound) {
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = uniform(rng, -bound, bound);
    return m;
}

// product of random elementary column operations
inline IntMatrix random_unimodular(Rng& rng, std::size_t n, int ops = 12, long bound = 3) {
    IntMatrix u = IntMatrix::identity(n);
    if (n == 0)
        return u;
    if (n == 1)
        return uniform(rng, 0, 1) ? u : IntMatrix{{-1}};
    for (int t = 0; t < ops; ++t) {
        const auto i = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 1));
        auto j = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 2));
        if (j >= i)
            ++j;
        switch (uniform(rng, 0, 3)) {
        case 0:
            u.swap_cols(i, j);
            break;
        case 1:
            u.negate_col(i);
            break;
        default:
            u.add_col_multiple(i, j, uniform(rng, -bound, bound));
        }
    }
    return u;
}

// Invariant-factor chain n_1 | n_2 | ... with product at most max_order.
inline IntVector random_torsion(Rng& rng, long max_order, std::size_t max_factors = 3) {
    IntVector t;
    long product = 1;
    const auto count = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(max_factors)));
    long prev = 1;
    for (std::size_t i = 0; i < count; ++i) {
        // next factor is a multiple of the previous one
        std::vector<long> options;
        for (long c = prev * (i == 0 ? 2 : 1); product * c <= max_order; c += prev)
            if (c >= 2)
                options.push_back(c);
        if (options.empty())
            break;
        const long c = options[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(options.size()) - 1))];
        t.push_back(Integer(c));
        product *= c;
        prev = c;
    }
    return t;
}

// A surjection Z^n -> g: the coordinate pattern on the first
// generator_count columns, extra columns random, times a unimodular matrix.
inline Homomorphism random_epimorphism(Rng& rng, const FgAbelianGroup& g, std::size_t n) {
    const std::size_t c = g.generator_count();
    IntMatrix base(c, n);
    for (std::size_t i = 0; i < c; ++i)
        base(i, i) = 1;
    for (std::size_t j = c; j < n; ++j)
        for (std::size_t i = 0; i < c; ++i)
            base(i, j) = uniform(rng, -4, 4);
    return Homomorphism(FgAbelianGroup::free(n), g, base * random_unimodular(rng, n));
}

inline FgAbelianGroup random_group(Rng& rng, std::size_t max_rank, long max_torsion) {
    return FgAbelianGroup(static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(max_rank))),
                          random_torsion(rng, max_torsion));
}

} // namespace lscat::rnd
