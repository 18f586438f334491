#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "tree.hpp"

namespace operad {

enum class OrderKind { kPathLex, kForestLex };

/// How generator words are compared in the path-lexicographic family.
enum class WordMode {
    kDegLex,     // longer word is greater, ties broken lexicographically
    kLex,        // plain lexicographic, a proper prefix is smaller
    kRevDegLex,  // shorter word is greater, ties broken lexicographically
};

/// How the planar leaf permutations are compared once all words agree.
enum class PermMode {
    kRevLex,  // at the first difference, the smaller entry gives the greater monomial
    kLex,     // at the first difference, the smaller entry gives the smaller monomial
};

/// A configured total order on tree monomials. Generators are compared by id,
/// which is their precedence rank.
struct MonomialOrder {
    OrderKind kind = OrderKind::kPathLex;
    WordMode word_mode = WordMode::kDegLex;
    PermMode perm_mode = PermMode::kRevLex;
    bool root_first = false;  // forest-lex only: compare root labels before leaf sets

    [[nodiscard]] bool is_default() const { return *this == MonomialOrder{}; }
    friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;
};

inline std::string to_string(OrderKind k) { return k == OrderKind::kPathLex ? "path-lex" : "forest-lex"; }

inline std::string to_string(WordMode m) {
    switch (m) {
        case WordMode::kDegLex:
            return "deglex";
        case WordMode::kLex:
            return "lex";
        case WordMode::kRevDegLex:
            return "revdeglex";
    }
    return "deglex";
}

inline std::string to_string(PermMode m) { return m == PermMode::kRevLex ? "revlex" : "lex"; }

inline std::string describe(const MonomialOrder& o) {
    if (o.kind == OrderKind::kPathLex) {
        return "path-lex (words " + to_string(o.word_mode) + ", permutations " + to_string(o.perm_mode) + ")";
    }
    return std::string("forest-lex") + (o.root_first ? " (root labels first)" : "");
}

/// Root-to-leaf generator words indexed by leaf label, and the planar leaf order.
struct PathFingerprint {
    std::vector<std::vector<GeneratorId>> words;
    std::vector<int> perm;

    friend bool operator==(const PathFingerprint&, const PathFingerprint&) = default;
};

inline PathFingerprint fingerprint(const TreeMonomial& t) {
    PathFingerprint fp;
    fp.words.resize(static_cast<std::size_t>(t.arity()));
    std::vector<GeneratorId> path;
    std::vector<int> stop;  // preorder end index for each vertex on the current path
    for (int i = 0; i < t.size(); ++i) {
        while (!stop.empty() && i >= stop.back()) {
            stop.pop_back();
            path.pop_back();
        }
        const auto& n = t.node(i);
        if (n.is_leaf()) {
            fp.words[static_cast<std::size_t>(n.label - 1)] = path;
            fp.perm.push_back(n.label);
        } else {
            path.push_back(n.gen);
            stop.push_back(n.end);
        }
    }
    return fp;
}

namespace detail {

constexpr std::int32_t kSetEnd = std::numeric_limits<std::int32_t>::min();

inline void path_lex_key(const TreeMonomial& t, const MonomialOrder& o, std::vector<std::int32_t>& key) {
    const auto fp = fingerprint(t);
    for (const auto& w : fp.words) {
        const auto len = static_cast<std::int32_t>(w.size());
        switch (o.word_mode) {
            case WordMode::kDegLex:
                key.push_back(len);
                key.insert(key.end(), w.begin(), w.end());
                break;
            case WordMode::kRevDegLex:
                key.push_back(-len);
                key.insert(key.end(), w.begin(), w.end());
                break;
            case WordMode::kLex:
                key.insert(key.end(), w.begin(), w.end());
                key.push_back(-1);
                break;
        }
    }
    for (int p : fp.perm) {
        key.push_back(o.perm_mode == PermMode::kRevLex ? -p : p);
    }
}

inline void leaf_set_key(const TreeMonomial& t, int i, std::vector<std::int32_t>& key) {
    std::vector<std::int32_t> labels;
    for (int j = i; j < t.node(i).end; ++j) {
        if (t.node(j).is_leaf()) {
            labels.push_back(t.node(j).label);
        }
    }
    std::sort(labels.begin(), labels.end());
    for (auto l : labels) {
        key.push_back(-l);
    }
    key.push_back(kSetEnd);
}

inline void forest_lex_key(const TreeMonomial& t, int i, bool root_first, std::vector<std::int32_t>& key) {
    const auto& n = t.node(i);
    if (root_first) {
        key.push_back(n.gen);
        leaf_set_key(t, i, key);
    } else {
        leaf_set_key(t, i, key);
        key.push_back(n.gen);
    }
    if (!n.is_leaf()) {
        t.for_each_child(i, [&](int c) { forest_lex_key(t, c, root_first, key); });
    }
}

}  // namespace detail

/// A sequence whose lexicographic order is the monomial order.
///
/// Path-lex: words are emitted length-prefixed (negated for revdeglex) or
/// terminated by -1 (lex), then the permutation (negated for revlex).
/// Forest-lex: a leaf set {i1<...<im} is emitted as -i1,...,-im,END so that the
/// set with the smaller element at the first difference is greater and a proper
/// prefix is smaller; then the root label, then the children.
inline std::vector<std::int32_t> order_key(const MonomialOrder& o, const TreeMonomial& t) {
    std::vector<std::int32_t> key;
    key.reserve(static_cast<std::size_t>(t.size()) * 4);
    key.push_back(t.arity());
    if (o.kind == OrderKind::kPathLex) {
        detail::path_lex_key(t, o, key);
    } else {
        detail::forest_lex_key(t, 0, o.root_first, key);
    }
    return key;
}

inline std::strong_ordering compare(const MonomialOrder& o, const TreeMonomial& a, const TreeMonomial& b) {
    if (a == b) {
        return std::strong_ordering::equal;
    }
    const auto ka = order_key(o, a);
    const auto kb = order_key(o, b);
    return std::lexicographical_compare_three_way(ka.begin(), ka.end(), kb.begin(), kb.end());
}

/// Order on finite sets of labels used by forest-lex: at the first position
/// where the sorted sequences differ, the set with the smaller element is the
/// greater one; a proper prefix is the smaller set. [k] is the largest k-subset.
inline std::strong_ordering compare_leaf_sets(std::vector<int> a, std::vector<int> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const std::size_t len = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < len; ++i) {
        if (a[i] != b[i]) {
            return b[i] <=> a[i];
        }
    }
    return a.size() <=> b.size();
}

/// Comparator object for ordered containers.
struct OrderLess {
    MonomialOrder order;
    bool operator()(const TreeMonomial& a, const TreeMonomial& b) const { return compare(order, a, b) < 0; }
};

}  // namespace operad
