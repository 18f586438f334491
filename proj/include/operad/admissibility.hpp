#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "order.hpp"
#include "random.hpp"

namespace operad {

struct AdmissibilityViolation {
    std::string kind;  // "arity" or "composition"
    TreeMonomial alpha, alpha2, beta, beta2;
    Shuffle shuffle;
    TreeMonomial lhs, rhs;
};

struct AdmissibilityReport {
    std::size_t checks = 0;
    std::optional<AdmissibilityViolation> violation;

    [[nodiscard]] bool admissible() const { return !violation.has_value(); }
};

/// Randomized test of the admissibility axioms on monomials over gens with at
/// most max_op_degree vertices: smaller arity is smaller, and
/// alpha <= alpha', beta <= beta' implies alpha o_{i,s} beta <= alpha' o_{i,s} beta'
/// with strict inequality when either input inequality is strict.
inline AdmissibilityReport check_admissibility(const MonomialOrder& order, const GeneratorSet& gens,
                                               std::size_t trials, std::uint64_t seed, int max_op_degree = 3) {
    AdmissibilityReport rep;
    Rng rng(seed);
    std::map<int, std::vector<TreeMonomial>> pool;
    for (int k = 0; k < 600; ++k) {
        auto t = random_monomial(gens, uniform_int(rng, 1, max_op_degree), rng);
        pool[t.arity()].push_back(std::move(t));
    }
    pool[1].push_back(TreeMonomial::degenerate());
    std::vector<int> arities;
    for (auto& [n, v] : pool) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        arities.push_back(n);
    }
    auto pick_arity = [&] { return arities[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(arities.size()) - 1))]; };
    auto pick = [&](int n) -> const TreeMonomial& {
        const auto& v = pool[n];
        return v[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(v.size()) - 1))];
    };
    for (std::size_t trial = 0; trial < trials && !rep.violation; ++trial) {
        ++rep.checks;
        if (trial % 8 == 0) {
            const int n = pick_arity();
            const int m = pick_arity();
            if (n == m) {
                continue;
            }
            const auto& a = pick(n);
            const auto& b = pick(m);
            if ((n < m) != (compare(order, a, b) < 0)) {
                rep.violation = AdmissibilityViolation{"arity", a, a, b, b, Shuffle{}, a, b};
            }
            continue;
        }
        const int n = pick_arity();
        const int m = pick_arity();
        TreeMonomial a = pick(n);
        TreeMonomial a2 = pick(n);
        TreeMonomial b = pick(m);
        TreeMonomial b2 = pick(m);
        if (compare(order, a, a2) > 0) {
            std::swap(a, a2);
        }
        if (compare(order, b, b2) > 0) {
            std::swap(b, b2);
        }
        const int i = uniform_int(rng, 1, n);
        const Shuffle s = random_shuffle(m, n, i, rng);
        auto lhs = compose(a, s, b);
        auto rhs = compose(a2, s, b2);
        const auto c = compare(order, lhs, rhs);
        const bool strict = a != a2 || b != b2;
        if (strict ? c >= 0 : c != 0) {
            rep.violation = AdmissibilityViolation{"composition", a, a2, b, b2, s, std::move(lhs), std::move(rhs)};
        }
    }
    return rep;
}

}  // namespace operad
