#pragma once

#include <algorithm>
#include <deque>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "element.hpp"
#include "linalg.hpp"

namespace operad {

using Permutation = std::vector<int>;  // one-line notation on {1..k}

inline std::size_t factorial(int k) {
    std::size_t f = 1;
    for (int i = 2; i <= k; ++i) {
        f *= static_cast<std::size_t>(i);
    }
    return f;
}

inline Permutation identity_permutation(int k) {
    Permutation p(static_cast<std::size_t>(k));
    std::iota(p.begin(), p.end(), 1);
    return p;
}

inline bool is_permutation_of(const Permutation& p, int k) {
    if (static_cast<int>(p.size()) != k) {
        return false;
    }
    std::vector<char> seen(static_cast<std::size_t>(k) + 1, 0);
    for (int x : p) {
        if (x < 1 || x > k || seen[static_cast<std::size_t>(x)] != 0) {
            return false;
        }
        seen[static_cast<std::size_t>(x)] = 1;
    }
    return true;
}

/// Position of p among the permutations of its size in lexicographic order.
inline std::size_t permutation_rank(const Permutation& p) {
    const int k = static_cast<int>(p.size());
    std::size_t r = 0;
    for (int i = 0; i < k; ++i) {
        int smaller = 0;
        for (int j = i + 1; j < k; ++j) {
            if (p[static_cast<std::size_t>(j)] < p[static_cast<std::size_t>(i)]) {
                ++smaller;
            }
        }
        r += static_cast<std::size_t>(smaller) * factorial(k - 1 - i);
    }
    return r;
}

inline Permutation permutation_unrank(int k, std::size_t r) {
    std::vector<int> pool = identity_permutation(k);
    Permutation p;
    for (int i = k; i >= 1; --i) {
        const std::size_t f = factorial(i - 1);
        const std::size_t idx = r / f;
        r %= f;
        p.push_back(pool[idx]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
    }
    return p;
}

/// All permutations of {1..k} in lexicographic order, identity first.
inline std::vector<Permutation> all_permutations(int k) {
    std::vector<Permutation> out;
    Permutation p = identity_permutation(k);
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

/// (p o q)(i) = p(q(i)).
inline Permutation compose_permutations(const Permutation& p, const Permutation& q) {
    Permutation r(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
        r[i] = p[static_cast<std::size_t>(q[i] - 1)];
    }
    return r;
}

inline int permutation_sign(const Permutation& p) {
    int s = 1;
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = i + 1; j < p.size(); ++j) {
            if (p[i] > p[j]) {
                s = -s;
            }
        }
    }
    return s;
}

/// Permutation given by disjoint or overlapping cycles, applied right to left.
inline Permutation permutation_from_cycles(const std::vector<std::vector<int>>& cycles, int k) {
    Permutation p = identity_permutation(k);
    for (auto c = cycles.rbegin(); c != cycles.rend(); ++c) {
        Permutation cyc = identity_permutation(k);
        for (std::size_t i = 0; i < c->size(); ++i) {
            const int from = (*c)[i];
            const int to = (*c)[(i + 1) % c->size()];
            if (from < 1 || from > k || to < 1 || to > k) {
                throw std::invalid_argument("cycle entry out of range 1.." + std::to_string(k));
            }
            cyc[static_cast<std::size_t>(from - 1)] = to;
        }
        if (!is_permutation_of(cyc, k)) {
            throw std::invalid_argument("cycle repeats an entry");
        }
        p = compose_permutations(p, cyc);
    }
    return p;
}

struct SymmetryAction {
    GeneratorId target = 0;
    int sign = 1;

    friend bool operator==(const SymmetryAction&, const SymmetryAction&) = default;
};

/// A monomial representation of the symmetric groups on the generators:
/// action(g, p) = (g', s) means g(x_{p(1)}, ..., x_{p(k)}) = s * g'(x_1, ..., x_k).
class GeneratorSymmetry {
public:
    GeneratorSymmetry() = default;

    explicit GeneratorSymmetry(const GeneratorSet& gens) : gens_(gens) {
        table_.resize(gens.size());
        for (std::size_t g = 0; g < gens.size(); ++g) {
            table_[g].resize(factorial(gens.arity(static_cast<GeneratorId>(g))));
        }
    }

    [[nodiscard]] const GeneratorSet& generators() const noexcept { return gens_; }

    [[nodiscard]] const SymmetryAction& action(GeneratorId g, const Permutation& p) const {
        const auto& e = table_.at(static_cast<std::size_t>(g)).at(permutation_rank(p));
        if (!e) {
            throw std::logic_error("symmetry table has no entry for generator '" + gens_.name(g) + "'");
        }
        return *e;
    }

    [[nodiscard]] bool has(GeneratorId g, const Permutation& p) const {
        return table_.at(static_cast<std::size_t>(g)).at(permutation_rank(p)).has_value();
    }

    [[nodiscard]] bool is_complete() const {
        return std::all_of(table_.begin(), table_.end(), [](const auto& row) {
            return std::all_of(row.begin(), row.end(), [](const auto& e) { return e.has_value(); });
        });
    }

    void set_symmetric(GeneratorId g) {
        for (const auto& p : all_permutations(gens_.arity(g))) {
            set(g, p, {g, 1});
        }
    }

    void set_antisymmetric(GeneratorId g) {
        for (const auto& p : all_permutations(gens_.arity(g))) {
            set(g, p, {g, permutation_sign(p)});
        }
    }

    /// Free action on an orbit: orbit[rank(q)] is the generator
    /// x -> star(x_{q(1)}, ..., x_{q(k)}), so it sends (orbit[q], p) to orbit[p o q].
    void set_free_orbit(const std::vector<GeneratorId>& orbit) {
        const int k = gens_.arity(orbit.front());
        const auto perms = all_permutations(k);
        for (const auto& q : perms) {
            for (const auto& p : perms) {
                set(orbit[permutation_rank(q)], p, {orbit[permutation_rank(compose_permutations(p, q))], 1});
            }
        }
    }

    /// Completes the table from the given entries using
    /// action(g, q o p) = action(action(g,p).target, q) with multiplied signs.
    /// Throws if the entries are inconsistent or do not determine every entry
    /// of the generators they touch.
    void close_from(const std::vector<std::pair<std::pair<GeneratorId, Permutation>, SymmetryAction>>& entries) {
        std::vector<std::vector<std::pair<Permutation, SymmetryAction>>> moves(gens_.size());
        std::vector<GeneratorId> touched;
        for (const auto& [key, act] : entries) {
            moves[static_cast<std::size_t>(key.first)].emplace_back(key.second, act);
            touched.push_back(key.first);
            touched.push_back(act.target);
        }
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        std::deque<std::pair<GeneratorId, Permutation>> queue;
        for (GeneratorId g : touched) {
            const auto id = identity_permutation(gens_.arity(g));
            set(g, id, {g, 1});
            queue.emplace_back(g, id);
        }
        while (!queue.empty()) {
            auto [g, p] = queue.front();
            queue.pop_front();
            const SymmetryAction known = action(g, p);
            for (const auto& [q, step] : moves[static_cast<std::size_t>(known.target)]) {
                const auto r = compose_permutations(q, p);
                const SymmetryAction derived{step.target, known.sign * step.sign};
                if (!has(g, r)) {
                    set(g, r, derived);
                    queue.emplace_back(g, r);
                } else if (!(action(g, r) == derived)) {
                    throw std::invalid_argument("inconsistent symmetric-group action on generator '" +
                                                gens_.name(g) + "'");
                }
            }
        }
        for (GeneratorId g : touched) {
            for (const auto& e : table_[static_cast<std::size_t>(g)]) {
                if (!e) {
                    throw std::invalid_argument("action on generator '" + gens_.name(g) +
                                                "' does not determine all permutations");
                }
            }
        }
    }

    void set(GeneratorId g, const Permutation& p, SymmetryAction a) {
        if (gens_.arity(a.target) != gens_.arity(g)) {
            throw std::invalid_argument("symmetry maps '" + gens_.name(g) + "' to a generator of different arity");
        }
        auto& slot = table_.at(static_cast<std::size_t>(g)).at(permutation_rank(p));
        if (slot && !(*slot == a)) {
            throw std::invalid_argument("inconsistent symmetric-group action on generator '" + gens_.name(g) + "'");
        }
        slot = a;
    }

private:
    GeneratorSet gens_;
    std::vector<std::vector<std::optional<SymmetryAction>>> table_;
};

namespace detail {

/// Sorts the children of every vertex, rewriting generators by the symmetry
/// table; returns the accumulated sign. Returns minimal leaf label in min_label.
inline int symmetric_normalize(RawNode& r, const GeneratorSymmetry& sym, int& min_label) {
    if (r.is_leaf()) {
        min_label = r.label;
        return 1;
    }
    int sign = 1;
    std::vector<std::pair<int, std::size_t>> mins;
    for (std::size_t i = 0; i < r.children.size(); ++i) {
        int m = 0;
        sign *= symmetric_normalize(r.children[i], sym, m);
        mins.emplace_back(m, i);
    }
    std::vector<std::pair<int, std::size_t>> sorted = mins;
    std::sort(sorted.begin(), sorted.end());
    Permutation p(r.children.size());
    std::vector<RawNode> kids;
    kids.reserve(r.children.size());
    for (std::size_t j = 0; j < sorted.size(); ++j) {
        p[sorted[j].second] = static_cast<int>(j) + 1;
        kids.push_back(std::move(r.children[sorted[j].second]));
    }
    const auto& a = sym.action(r.gen, p);
    r.gen = a.target;
    r.children = std::move(kids);
    min_label = sorted.front().first;
    return sign * a.sign;
}

}  // namespace detail

/// The canonical monomial equal to raw in the symmetric operad, and the sign relating them.
inline std::pair<TreeMonomial, int> canonicalize_symmetric(RawNode raw, const GeneratorSymmetry& sym) {
    int m = 0;
    const int sign = detail::symmetric_normalize(raw, sym, m);
    return {canonicalize_unchecked(raw), sign};
}

/// Left action of tau on an element: leaf j becomes tau(j).
/// act(t1, act(t2, f)) = act(t1 o t2, f).
inline OperadElement act(const Permutation& tau, const OperadElement& f, const GeneratorSymmetry& sym) {
    if (!f.is_zero() && !is_permutation_of(tau, f.arity())) {
        throw std::invalid_argument("act: permutation size " + std::to_string(tau.size()) +
                                    " does not match arity " + std::to_string(f.arity()));
    }
    std::vector<Term> out;
    out.reserve(f.size());
    for (const auto& t : f.terms()) {
        RawNode r = to_raw(t.monomial);
        relabel_leaves(r, [&](int l) { return tau[static_cast<std::size_t>(l - 1)]; });
        auto [m, s] = canonicalize_symmetric(std::move(r), sym);
        out.push_back(Term{std::move(m), t.coeff * s});
    }
    return OperadElement::from_terms(std::move(out));
}

/// A spanning subset of the symmetric-group orbit span of the relations:
/// images act(tau, r) for tau in lexicographic order, keeping those
/// independent of everything kept before.
inline std::vector<OperadElement> symmetrize_relations(const std::vector<OperadElement>& rels,
                                                       const GeneratorSymmetry& sym) {
    std::vector<OperadElement> kept;
    SparseEchelon echelon;
    for (const auto& r : rels) {
        if (r.is_zero()) {
            continue;
        }
        for (const auto& tau : all_permutations(r.arity())) {
            auto img = act(tau, r, sym);
            if (echelon.add(img)) {
                kept.push_back(std::move(img));
            }
        }
    }
    return kept;
}

}  // namespace operad
