#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "generators.hpp"

namespace operad {

/// Mutable decorated tree used to build monomials before canonicalization.
/// A node with gen == kLeafGen is a leaf carrying `label`.
struct RawNode {
    static constexpr GeneratorId kLeafGen = -1;

    GeneratorId gen = kLeafGen;
    int label = 1;
    std::vector<RawNode> children;
    int tag = -1;  // caller-owned marker, reported back by canonicalize_tracking

    static RawNode leaf(int label) {
        RawNode r;
        r.label = label;
        return r;
    }
    static RawNode vertex(GeneratorId g, std::vector<RawNode> kids) {
        RawNode r;
        r.gen = g;
        r.label = 0;
        r.children = std::move(kids);
        return r;
    }
    [[nodiscard]] bool is_leaf() const noexcept { return gen == kLeafGen; }
};

/// A tree monomial of the free shuffle operad, stored in canonical planar form
/// as a preorder array. Children of every vertex are sorted by their minimal
/// leaf label, so structural equality of the arrays is equality of monomials.
class TreeMonomial {
public:
    static constexpr GeneratorId kLeaf = RawNode::kLeafGen;

    struct Node {
        GeneratorId gen;     // kLeaf for leaves
        std::int32_t label;  // leaf label, or minimal leaf label below a vertex
        std::int32_t end;    // one past the last preorder index of this subtree

        [[nodiscard]] bool is_leaf() const noexcept { return gen == kLeaf; }
        friend bool operator==(const Node& a, const Node& b) noexcept {
            return a.gen == b.gen && a.label == b.label;
        }
        friend std::strong_ordering operator<=>(const Node& a, const Node& b) noexcept {
            if (auto c = a.gen <=> b.gen; c != 0) {
                return c;
            }
            return a.label <=> b.label;
        }
    };

    /// The degenerate tree: a single leaf, the operad unit.
    TreeMonomial() : nodes_{Node{kLeaf, 1, 1}}, arity_(1) {}

    static TreeMonomial degenerate() { return TreeMonomial{}; }

    static TreeMonomial corolla(GeneratorId g, int arity) {
        std::vector<Node> nodes;
        nodes.reserve(static_cast<std::size_t>(arity) + 1);
        nodes.push_back(Node{g, 1, arity + 1});
        for (int i = 1; i <= arity; ++i) {
            nodes.push_back(Node{kLeaf, i, i + 1});
        }
        return TreeMonomial(std::move(nodes));
    }

    [[nodiscard]] std::span<const Node> nodes() const noexcept { return nodes_; }
    [[nodiscard]] const Node& node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
    [[nodiscard]] int size() const noexcept { return static_cast<int>(nodes_.size()); }
    [[nodiscard]] int arity() const noexcept { return arity_; }
    [[nodiscard]] int op_degree() const noexcept { return size() - arity_; }
    [[nodiscard]] bool is_degenerate() const noexcept { return nodes_.size() == 1; }

    /// Calls f(child_index) for each child of vertex i, left to right.
    template <class F>
    void for_each_child(int i, F&& f) const {
        const int stop = node(i).end;
        for (int c = i + 1; c < stop; c = node(c).end) {
            f(c);
        }
    }

    [[nodiscard]] std::vector<int> children(int i) const {
        std::vector<int> out;
        for_each_child(i, [&](int c) { out.push_back(c); });
        return out;
    }

    /// parent[i] for every node; -1 at the root.
    [[nodiscard]] std::vector<int> parents() const {
        std::vector<int> parent(nodes_.size(), -1);
        for (int i = 0; i < size(); ++i) {
            if (!node(i).is_leaf()) {
                for_each_child(i, [&](int c) { parent[static_cast<std::size_t>(c)] = i; });
            }
        }
        return parent;
    }

    /// Preorder indices of the vertices (non-leaf nodes).
    [[nodiscard]] std::vector<int> vertices() const {
        std::vector<int> out;
        for (int i = 0; i < size(); ++i) {
            if (!node(i).is_leaf()) {
                out.push_back(i);
            }
        }
        return out;
    }

    /// Leaf labels in planar left-to-right order.
    [[nodiscard]] std::vector<int> planar_leaf_order() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(arity_));
        for (const auto& n : nodes_) {
            if (n.is_leaf()) {
                out.push_back(n.label);
            }
        }
        return out;
    }

    [[nodiscard]] std::size_t hash() const noexcept {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (const auto& n : nodes_) {
            h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(n.gen)) * 0x9E3779B97F4A7C15ULL +
                 static_cast<std::size_t>(n.label);
            h *= 0x100000001b3ULL;
        }
        return h;
    }

    friend bool operator==(const TreeMonomial& a, const TreeMonomial& b) noexcept { return a.nodes_ == b.nodes_; }
    /// Structural order (arity first); unrelated to any admissible monomial order.
    friend std::strong_ordering operator<=>(const TreeMonomial& a, const TreeMonomial& b) noexcept {
        if (auto c = a.arity_ <=> b.arity_; c != 0) {
            return c;
        }
        return std::lexicographical_compare_three_way(a.nodes_.begin(), a.nodes_.end(), b.nodes_.begin(),
                                                      b.nodes_.end());
    }

    /// Builds from a preorder array already in canonical form.
    static TreeMonomial from_canonical_nodes(std::vector<Node> nodes) { return TreeMonomial(std::move(nodes)); }

private:
    explicit TreeMonomial(std::vector<Node> nodes) : nodes_(std::move(nodes)) {
        arity_ = static_cast<int>(std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.is_leaf(); }));
    }

    std::vector<Node> nodes_;
    int arity_ = 1;
};

struct TreeHash {
    std::size_t operator()(const TreeMonomial& t) const noexcept { return t.hash(); }
};

using TreeSet = std::unordered_set<TreeMonomial, TreeHash>;

namespace detail {

inline int raw_min_label(const RawNode& r) {
    if (r.is_leaf()) {
        return r.label;
    }
    int m = std::numeric_limits<int>::max();
    for (const auto& c : r.children) {
        m = std::min(m, raw_min_label(c));
    }
    return m;
}

inline void emit_canonical(const RawNode& r, std::vector<TreeMonomial::Node>& out, std::vector<int>* tags) {
    const auto pos = static_cast<int>(out.size());
    if (tags != nullptr && r.tag >= 0) {
        if (static_cast<std::size_t>(r.tag) >= tags->size()) {
            tags->resize(static_cast<std::size_t>(r.tag) + 1, -1);
        }
        (*tags)[static_cast<std::size_t>(r.tag)] = pos;
    }
    if (r.is_leaf()) {
        out.push_back({TreeMonomial::kLeaf, r.label, pos + 1});
        return;
    }
    out.push_back({r.gen, 0, 0});
    std::vector<std::pair<int, std::size_t>> order;
    order.reserve(r.children.size());
    for (std::size_t k = 0; k < r.children.size(); ++k) {
        order.emplace_back(raw_min_label(r.children[k]), k);
    }
    std::sort(order.begin(), order.end());
    for (const auto& [m, k] : order) {
        emit_canonical(r.children[k], out, tags);
    }
    auto& self = out[static_cast<std::size_t>(pos)];
    self.label = out[static_cast<std::size_t>(pos) + 1].label;
    self.end = static_cast<std::int32_t>(out.size());
}

inline void validate_raw(const RawNode& r, const GeneratorSet& gens, std::vector<int>& labels) {
    if (r.is_leaf()) {
        labels.push_back(r.label);
        return;
    }
    if (r.gen < 0 || static_cast<std::size_t>(r.gen) >= gens.size()) {
        throw std::invalid_argument("unknown generator id " + std::to_string(r.gen));
    }
    const int want = gens.arity(r.gen);
    if (static_cast<int>(r.children.size()) != want) {
        throw std::invalid_argument("arity mismatch at vertex '" + gens.name(r.gen) + "': expected " +
                                    std::to_string(want) + " inputs, got " + std::to_string(r.children.size()));
    }
    for (const auto& c : r.children) {
        validate_raw(c, gens, labels);
    }
}

}  // namespace detail

/// Canonical planar form without validation; the caller guarantees a well-formed tree.
inline TreeMonomial canonicalize_unchecked(const RawNode& raw) {
    std::vector<TreeMonomial::Node> out;
    detail::emit_canonical(raw, out, nullptr);
    return TreeMonomial::from_canonical_nodes(std::move(out));
}

/// Like canonicalize_unchecked, and reports the preorder position of each tagged raw node.
inline TreeMonomial canonicalize_tracking(const RawNode& raw, std::vector<int>& tag_positions) {
    std::vector<TreeMonomial::Node> out;
    detail::emit_canonical(raw, out, &tag_positions);
    return TreeMonomial::from_canonical_nodes(std::move(out));
}

/// Sorts children of every vertex by minimal reachable leaf.
/// Throws std::invalid_argument on an arity mismatch or non-bijective leaf labels.
inline TreeMonomial canonicalize(const RawNode& raw, const GeneratorSet& gens) {
    std::vector<int> labels;
    detail::validate_raw(raw, gens, labels);
    std::vector<int> sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] != static_cast<int>(i) + 1) {
            throw std::invalid_argument("leaf labels must be a bijection onto {1.." + std::to_string(sorted.size()) +
                                        "}");
        }
    }
    return canonicalize_unchecked(raw);
}

/// Copies the subtree rooted at preorder index i.
inline RawNode to_raw(const TreeMonomial& t, int i = 0) {
    const auto& n = t.node(i);
    if (n.is_leaf()) {
        return RawNode::leaf(n.label);
    }
    RawNode r = RawNode::vertex(n.gen, {});
    t.for_each_child(i, [&](int c) { r.children.push_back(to_raw(t, c)); });
    return r;
}

/// Applies f to every leaf label of a raw tree.
template <class F>
void relabel_leaves(RawNode& r, F&& f) {
    if (r.is_leaf()) {
        r.label = f(r.label);
        return;
    }
    for (auto& c : r.children) {
        relabel_leaves(c, f);
    }
}

/// Extracts the subtree at preorder index i, relabelling its leaves to 1..k by rank.
inline TreeMonomial subtree(const TreeMonomial& t, int i) {
    RawNode r = to_raw(t, i);
    std::vector<int> labels;
    for (int j = i; j < t.node(i).end; ++j) {
        if (t.node(j).is_leaf()) {
            labels.push_back(t.node(j).label);
        }
    }
    std::sort(labels.begin(), labels.end());
    relabel_leaves(r, [&](int l) {
        return static_cast<int>(std::lower_bound(labels.begin(), labels.end(), l) - labels.begin()) + 1;
    });
    return canonicalize_unchecked(r);
}

/// The (m-1, n-i)-shuffle of an elementary composition into slot i.
/// sigma[t] is the image of i+1+t; it permutes {i+1, ..., m+n-1}.
struct Shuffle {
    int slot = 1;
    std::vector<int> sigma;

    friend bool operator==(const Shuffle&, const Shuffle&) = default;
};

/// True iff s is a valid (m-1, n-slot)-shuffle for composing arity m into arity n.
inline bool is_shuffle(const Shuffle& s, int m, int n) {
    const int i = s.slot;
    if (i < 1 || i > n || m < 1) {
        return false;
    }
    const int len = m + n - 1 - i;
    if (static_cast<int>(s.sigma.size()) != len) {
        return false;
    }
    std::vector<bool> seen(static_cast<std::size_t>(len), false);
    for (int v : s.sigma) {
        if (v < i + 1 || v > m + n - 1 || seen[static_cast<std::size_t>(v - i - 1)]) {
            return false;
        }
        seen[static_cast<std::size_t>(v - i - 1)] = true;
    }
    for (int t = 1; t < m - 1; ++t) {
        if (s.sigma[static_cast<std::size_t>(t - 1)] > s.sigma[static_cast<std::size_t>(t)]) {
            return false;
        }
    }
    for (int t = m; t < len; ++t) {
        if (s.sigma[static_cast<std::size_t>(t - 1)] > s.sigma[static_cast<std::size_t>(t)]) {
            return false;
        }
    }
    return true;
}

/// Identity shuffle for slot i.
inline Shuffle identity_shuffle(int i, int m, int n) {
    Shuffle s{i, {}};
    for (int v = i + 1; v <= m + n - 1; ++v) {
        s.sigma.push_back(v);
    }
    return s;
}

/// All (m-1, n-i)-shuffles, ordered lexicographically by the set of values
/// taken by the first block. The identity comes first.
inline std::vector<Shuffle> enumerate_shuffles(int m, int n, int i) {
    std::vector<Shuffle> out;
    if (i < 1 || i > n || m < 1) {
        return out;
    }
    const int len = m + n - 1 - i;
    const int k = m - 1;
    std::vector<int> pick(static_cast<std::size_t>(k));
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
        Shuffle s{i, {}};
        s.sigma.reserve(static_cast<std::size_t>(len));
        std::vector<bool> in_first(static_cast<std::size_t>(len), false);
        for (int p : pick) {
            in_first[static_cast<std::size_t>(p)] = true;
            s.sigma.push_back(i + 1 + p);
        }
        for (int p = 0; p < len; ++p) {
            if (!in_first[static_cast<std::size_t>(p)]) {
                s.sigma.push_back(i + 1 + p);
            }
        }
        out.push_back(std::move(s));
        int t = k - 1;
        while (t >= 0 && pick[static_cast<std::size_t>(t)] == len - k + t) {
            --t;
        }
        if (t < 0) {
            break;
        }
        ++pick[static_cast<std::size_t>(t)];
        for (int u = t + 1; u < k; ++u) {
            pick[static_cast<std::size_t>(u)] = pick[static_cast<std::size_t>(u - 1)] + 1;
        }
    }
    return out;
}

/// The elementary shuffle composition alpha o_{i,sigma} beta.
inline TreeMonomial compose(const TreeMonomial& alpha, const Shuffle& s, const TreeMonomial& beta) {
    const int n = alpha.arity();
    const int m = beta.arity();
    const int i = s.slot;
    if (i < 1 || i > n) {
        throw std::invalid_argument("composition slot " + std::to_string(i) + " out of range 1.." +
                                    std::to_string(n));
    }
    if (!is_shuffle(s, m, n)) {
        throw std::invalid_argument("sigma is not a (" + std::to_string(m - 1) + "," + std::to_string(n - i) +
                                    ")-shuffle");
    }
    auto image = [&](int v) { return s.sigma[static_cast<std::size_t>(v - i - 1)]; };
    RawNode inner = to_raw(beta);
    relabel_leaves(inner, [&](int l) { return l == 1 ? i : image(i + l - 1); });
    RawNode outer = to_raw(alpha);
    std::function<void(RawNode&)> graft = [&](RawNode& r) {
        if (r.is_leaf()) {
            if (r.label == i) {
                r = inner;
            } else if (r.label > i) {
                r.label = image(r.label + m - 1);
            }
            return;
        }
        for (auto& c : r.children) {
            graft(c);
        }
    };
    graft(outer);
    return canonicalize_unchecked(outer);
}

/// All canonical tree monomials of the given arity with operation degree <= max_op_degree,
/// built by grafting corollas onto leaves. Sorted by operation degree, then structurally.
inline std::vector<TreeMonomial> enumerate_tree_monomials(const GeneratorSet& gens, int arity, int max_op_degree) {
    std::vector<TreeMonomial> result;
    if (arity < 1 || max_op_degree < 0) {
        return result;
    }
    std::vector<TreeMonomial> level{TreeMonomial::degenerate()};
    for (int d = 0;; ++d) {
        for (const auto& t : level) {
            if (t.arity() == arity) {
                result.push_back(t);
            }
        }
        if (d == max_op_degree || level.empty()) {
            break;
        }
        TreeSet next;
        for (const auto& t : level) {
            for (GeneratorId g = 0; g < static_cast<GeneratorId>(gens.size()); ++g) {
                const int k = gens.arity(g);
                if (t.arity() + k - 1 > arity) {
                    continue;
                }
                const auto c = TreeMonomial::corolla(g, k);
                for (int i = 1; i <= t.arity(); ++i) {
                    for (const auto& s : enumerate_shuffles(k, t.arity(), i)) {
                        next.insert(compose(t, s, c));
                    }
                }
            }
        }
        level.assign(next.begin(), next.end());
        std::sort(level.begin(), level.end());
    }
    std::stable_sort(result.begin(), result.end(), [](const TreeMonomial& a, const TreeMonomial& b) {
        return a.op_degree() < b.op_degree();
    });
    return result;
}

/// Operation notation, e.g. mu(mu(1,2),3).
inline std::string to_string(const TreeMonomial& t, const GeneratorSet& gens, int i = 0) {
    const auto& n = t.node(i);
    if (n.is_leaf()) {
        return std::to_string(n.label);
    }
    std::string s = gens.name(n.gen);
    s += '(';
    bool first = true;
    t.for_each_child(i, [&](int c) {
        if (!first) {
            s += ',';
        }
        first = false;
        s += to_string(t, gens, c);
    });
    s += ')';
    return s;
}

}  // namespace operad
