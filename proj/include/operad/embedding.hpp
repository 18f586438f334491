#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tree.hpp"

namespace operad {

/// Where a divisor sits inside a host monomial.
///
/// Children correspond positionally at every matched vertex, because the
/// smallest-descendant relabelling preserves the relative order of siblings.
/// The occurrence is therefore determined by the host vertex receiving the
/// divisor's root.
struct Occurrence {
    int root = 0;
    /// Host node for each divisor vertex, in divisor preorder.
    std::vector<int> vertex_map;
    /// Host node hanging below divisor leaf k, at index k-1.
    std::vector<int> frontier;

    [[nodiscard]] bool covers(int host_node) const {
        return std::find(vertex_map.begin(), vertex_map.end(), host_node) != vertex_map.end();
    }

    friend bool operator==(const Occurrence&, const Occurrence&) = default;
    friend auto operator<=>(const Occurrence& a, const Occurrence& b) { return a.vertex_map <=> b.vertex_map; }
};

/// An occurrence witnessing that `divisor` divides `host`.
struct Embedding {
    TreeMonomial host;
    TreeMonomial divisor;
    Occurrence occurrence;

    [[nodiscard]] const std::vector<int>& vertex_map() const noexcept { return occurrence.vertex_map; }
    friend bool operator==(const Embedding&, const Embedding&) = default;
};

namespace detail {

inline bool match_rec(const TreeMonomial& host, int hi, const TreeMonomial& div, int di, Occurrence& occ) {
    const auto& dn = div.node(di);
    if (dn.is_leaf()) {
        occ.frontier[static_cast<std::size_t>(dn.label - 1)] = hi;
        return true;
    }
    const auto& hn = host.node(hi);
    if (hn.is_leaf() || hn.gen != dn.gen) {
        return false;
    }
    occ.vertex_map.push_back(hi);
    int hc = hi + 1;
    int dc = di + 1;
    while (dc < dn.end) {
        if (hc >= hn.end || !match_rec(host, hc, div, dc, occ)) {
            return false;
        }
        hc = host.node(hc).end;
        dc = div.node(dc).end;
    }
    return hc == hn.end;
}

}  // namespace detail

/// Tries to place the divisor's root at host node `root`.
inline std::optional<Occurrence> match_at(const TreeMonomial& host, const TreeMonomial& divisor, int root) {
    if (divisor.is_degenerate()) {
        if (host.is_degenerate() && root == 0) {
            return Occurrence{0, {}, {0}};
        }
        return std::nullopt;
    }
    if (host.node(root).gen != divisor.node(0).gen) {
        return std::nullopt;
    }
    Occurrence occ;
    occ.root = root;
    occ.frontier.assign(static_cast<std::size_t>(divisor.arity()), -1);
    occ.vertex_map.reserve(static_cast<std::size_t>(divisor.op_degree()));
    if (!detail::match_rec(host, root, divisor, 0, occ)) {
        return std::nullopt;
    }
    for (std::size_t k = 1; k < occ.frontier.size(); ++k) {
        if (host.node(occ.frontier[k - 1]).label >= host.node(occ.frontier[k]).label) {
            return std::nullopt;
        }
    }
    return occ;
}

/// All occurrences, ordered by the preorder index of the root.
inline std::vector<Occurrence> find_occurrences(const TreeMonomial& host, const TreeMonomial& divisor) {
    std::vector<Occurrence> out;
    if (divisor.op_degree() > host.op_degree() || divisor.arity() > host.arity()) {
        if (!(divisor.is_degenerate() && host.is_degenerate())) {
            return out;
        }
    }
    for (int i = 0; i < host.size(); ++i) {
        if (auto occ = match_at(host, divisor, i)) {
            out.push_back(std::move(*occ));
        }
    }
    return out;
}

/// The occurrence with the smallest root index, if any.
inline std::optional<Occurrence> first_occurrence(const TreeMonomial& host, const TreeMonomial& divisor) {
    if (divisor.op_degree() > host.op_degree() || divisor.arity() > host.arity()) {
        return std::nullopt;
    }
    const GeneratorId g = divisor.node(0).gen;
    for (int i = 0; i < host.size(); ++i) {
        if (host.node(i).gen == g) {
            if (auto occ = match_at(host, divisor, i)) {
                return occ;
            }
        }
    }
    return std::nullopt;
}

inline bool divides(const TreeMonomial& divisor, const TreeMonomial& host) {
    return first_occurrence(host, divisor).has_value();
}

inline std::vector<Embedding> find_embeddings(const TreeMonomial& host, const TreeMonomial& divisor) {
    std::vector<Embedding> out;
    for (auto& occ : find_occurrences(host, divisor)) {
        out.push_back(Embedding{host, divisor, std::move(occ)});
    }
    return out;
}

namespace detail {

inline RawNode substitute_rec(const TreeMonomial& host, int i, const Occurrence& occ, const TreeMonomial& gamma) {
    if (i == occ.root) {
        RawNode r = to_raw(gamma);
        std::function<void(RawNode&)> fill = [&](RawNode& x) {
            if (x.is_leaf()) {
                x = to_raw(host, occ.frontier[static_cast<std::size_t>(x.label - 1)]);
                return;
            }
            for (auto& c : x.children) {
                fill(c);
            }
        };
        fill(r);
        return r;
    }
    const auto& n = host.node(i);
    if (n.is_leaf()) {
        return RawNode::leaf(n.label);
    }
    RawNode r = RawNode::vertex(n.gen, {});
    host.for_each_child(i, [&](int c) { r.children.push_back(substitute_rec(host, c, occ, gamma)); });
    return r;
}

}  // namespace detail

/// m_{host,divisor}(gamma): replaces the divisor occurrence by gamma, keeping
/// the hanging subtrees attached to the leaves with the same labels.
inline TreeMonomial embed_multiple(const TreeMonomial& host, const Occurrence& occ, const TreeMonomial& gamma) {
    if (gamma.arity() != static_cast<int>(occ.frontier.size())) {
        throw std::invalid_argument("embed_multiple: arity " + std::to_string(gamma.arity()) +
                                    " does not match divisor arity " + std::to_string(occ.frontier.size()));
    }
    return canonicalize_unchecked(detail::substitute_rec(host, 0, occ, gamma));
}

inline TreeMonomial embed_multiple(const Embedding& e, const TreeMonomial& gamma) {
    return embed_multiple(e.host, e.occurrence, gamma);
}

/// One elementary composition with a corolla: X -> X o_s c (below) or c o_s X (above).
struct CompositionStep {
    bool above = false;
    GeneratorId gen = 0;
    int gen_arity = 2;
    Shuffle shuffle;
};

enum class SequenceOrder { kBelowFirst, kAboveFirst };

/// Decomposes the context of an occurrence into elementary compositions with corollas.
/// Applying the steps to the divisor reproduces the host.
inline std::vector<CompositionStep> composition_sequence(const TreeMonomial& host, const Occurrence& occ,
                                                         SequenceOrder order = SequenceOrder::kBelowFirst) {
    std::vector<CompositionStep> steps;
    std::vector<int> frontier = occ.frontier;
    int root = occ.root;
    const auto parent = host.parents();
    auto by_label = [&](int a, int b) { return host.node(a).label < host.node(b).label; };
    auto rank_of = [&](const std::vector<int>& fr, int node) {
        return static_cast<int>(std::find(fr.begin(), fr.end(), node) - fr.begin()) + 1;
    };

    auto below = [&](bool leftmost) -> bool {
        int pos = -1;
        for (int p = 0; p < static_cast<int>(frontier.size()); ++p) {
            if (!host.node(frontier[static_cast<std::size_t>(p)]).is_leaf()) {
                pos = p;
                if (leftmost) {
                    break;
                }
            }
        }
        if (pos < 0) {
            return false;
        }
        const int h = frontier[static_cast<std::size_t>(pos)];
        const auto kids = host.children(h);
        const int n = static_cast<int>(frontier.size());
        const int m = static_cast<int>(kids.size());
        const int i = pos + 1;
        std::vector<int> next = frontier;
        next.erase(next.begin() + pos);
        next.insert(next.end(), kids.begin(), kids.end());
        std::sort(next.begin(), next.end(), by_label);
        Shuffle s{i, std::vector<int>(static_cast<std::size_t>(m + n - 1 - i))};
        for (int t = 2; t <= m; ++t) {
            s.sigma[static_cast<std::size_t>(t - 2)] = rank_of(next, kids[static_cast<std::size_t>(t - 1)]);
        }
        for (int j = i + 1; j <= n; ++j) {
            s.sigma[static_cast<std::size_t>(j + m - 1 - i - 1)] = rank_of(next, frontier[static_cast<std::size_t>(j - 1)]);
        }
        steps.push_back(CompositionStep{false, host.node(h).gen, m, std::move(s)});
        frontier = std::move(next);
        return true;
    };

    auto above = [&]() -> bool {
        if (root == 0) {
            return false;
        }
        const int p = parent[static_cast<std::size_t>(root)];
        const auto kids = host.children(p);
        const int n = static_cast<int>(kids.size());
        const int m = static_cast<int>(frontier.size());
        const int q = static_cast<int>(std::find(kids.begin(), kids.end(), root) - kids.begin()) + 1;
        std::vector<int> next = frontier;
        for (int c : kids) {
            if (c != root) {
                next.push_back(c);
            }
        }
        std::sort(next.begin(), next.end(), by_label);
        Shuffle s{q, std::vector<int>(static_cast<std::size_t>(m + n - 1 - q))};
        for (int t = 2; t <= m; ++t) {
            s.sigma[static_cast<std::size_t>(t - 2)] = rank_of(next, frontier[static_cast<std::size_t>(t - 1)]);
        }
        for (int j = q + 1; j <= n; ++j) {
            s.sigma[static_cast<std::size_t>(j + m - 1 - q - 1)] = rank_of(next, kids[static_cast<std::size_t>(j - 1)]);
        }
        steps.push_back(CompositionStep{true, host.node(p).gen, n, std::move(s)});
        frontier = std::move(next);
        root = p;
        return true;
    };

    if (order == SequenceOrder::kBelowFirst) {
        while (below(true)) {
        }
        while (above()) {
        }
        // subtrees hanging off the vertices added above
        while (below(true)) {
        }
    } else {
        while (above()) {
        }
        while (below(false)) {
        }
    }
    return steps;
}

inline TreeMonomial apply_sequence(const std::vector<CompositionStep>& steps, TreeMonomial x) {
    for (const auto& st : steps) {
        const auto c = TreeMonomial::corolla(st.gen, st.gen_arity);
        x = st.above ? compose(c, st.shuffle, x) : compose(x, st.shuffle, c);
    }
    return x;
}

}  // namespace operad
