#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "tree.hpp"

namespace operad {

using Rng = std::mt19937_64;

inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline std::vector<int> random_permutation(int n, Rng& rng) {
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 1);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

/// A uniformly chosen (m-1, n-i)-shuffle.
inline Shuffle random_shuffle(int m, int n, int i, Rng& rng) {
    const int len = m + n - 1 - i;
    std::vector<int> values(static_cast<std::size_t>(len));
    std::iota(values.begin(), values.end(), i + 1);
    std::shuffle(values.begin(), values.end(), rng);
    auto mid = values.begin() + (m - 1);
    std::sort(values.begin(), mid);
    std::sort(mid, values.end());
    return Shuffle{i, std::move(values)};
}

/// Random monomial with exactly op_degree vertices, grown by grafting corollas at random leaves.
inline TreeMonomial random_monomial(const GeneratorSet& gens, int op_degree, Rng& rng) {
    TreeMonomial t;
    for (int d = 0; d < op_degree; ++d) {
        const auto g = static_cast<GeneratorId>(uniform_int(rng, 0, static_cast<int>(gens.size()) - 1));
        const int k = gens.arity(g);
        const int i = uniform_int(rng, 1, t.arity());
        t = compose(t, random_shuffle(k, t.arity(), i, rng), TreeMonomial::corolla(g, k));
    }
    return t;
}

}  // namespace operad
