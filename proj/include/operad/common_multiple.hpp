#pragma once

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "element.hpp"
#include "embedding.hpp"

namespace operad {

/// A monomial gamma divisible by both a and b with overlapping occurrences
/// that jointly cover every vertex of gamma.
struct CommonMultiple {
    TreeMonomial gamma;
    Occurrence emb_f;  // occurrence of the first monomial in gamma
    Occurrence emb_g;  // occurrence of the second monomial in gamma

    friend bool operator==(const CommonMultiple&, const CommonMultiple&) = default;
};

namespace detail {

/// Builds the glued trees for one identification of a vertex of `top`'s
/// pattern with the root of `bottom`, then enumerates leaf labellings.
class Gluer {
public:
    Gluer(const TreeMonomial& a, const TreeMonomial& b) : a_(a), b_(b) {}

    /// b's root placed at vertex u of a (b_on_a) or a's root at vertex u of b.
    void run(int u, bool b_on_a, std::vector<CommonMultiple>& out) {
        arena_.clear();
        front_a_.assign(static_cast<std::size_t>(a_.arity()), -1);
        front_b_.assign(static_cast<std::size_t>(b_.arity()), -1);
        const int root = b_on_a ? top_a(0, u) : top_b(0, u);
        if (root < 0) {
            return;
        }
        root_ = root;
        label_leaves(out);
    }

private:
    struct GNode {
        GeneratorId gen = RawNode::kLeafGen;
        int a_vertex = -1;
        int b_vertex = -1;
        std::vector<int> kids;
        int label = 0;
    };

    int make(GeneratorId g, int av, int bv) {
        arena_.push_back(GNode{g, av, bv, {}, 0});
        return static_cast<int>(arena_.size()) - 1;
    }

    int copy_a(int ai) {
        const auto& n = a_.node(ai);
        if (n.is_leaf()) {
            const int x = make(RawNode::kLeafGen, -1, -1);
            front_a_[static_cast<std::size_t>(n.label - 1)] = x;
            return x;
        }
        const int x = make(n.gen, ai, -1);
        a_.for_each_child(ai, [&](int c) {
            const int k = copy_a(c);
            arena_[static_cast<std::size_t>(x)].kids.push_back(k);
        });
        return x;
    }

    int copy_b(int bi) {
        const auto& n = b_.node(bi);
        if (n.is_leaf()) {
            const int x = make(RawNode::kLeafGen, -1, -1);
            front_b_[static_cast<std::size_t>(n.label - 1)] = x;
            return x;
        }
        const int x = make(n.gen, -1, bi);
        b_.for_each_child(bi, [&](int c) {
            const int k = copy_b(c);
            arena_[static_cast<std::size_t>(x)].kids.push_back(k);
        });
        return x;
    }

    int glue(int ai, int bi) {
        if (a_.node(ai).gen != b_.node(bi).gen) {
            return -1;
        }
        const int x = make(a_.node(ai).gen, ai, bi);
        const auto ak = a_.children(ai);
        const auto bk = b_.children(bi);
        for (std::size_t k = 0; k < ak.size(); ++k) {
            const auto& an = a_.node(ak[k]);
            const auto& bn = b_.node(bk[k]);
            int child = -1;
            if (!an.is_leaf() && !bn.is_leaf()) {
                child = glue(ak[k], bk[k]);
                if (child < 0) {
                    return -1;
                }
            } else if (!an.is_leaf()) {
                child = copy_a(ak[k]);
                front_b_[static_cast<std::size_t>(bn.label - 1)] = child;
            } else if (!bn.is_leaf()) {
                child = copy_b(bk[k]);
                front_a_[static_cast<std::size_t>(an.label - 1)] = child;
            } else {
                child = make(RawNode::kLeafGen, -1, -1);
                front_a_[static_cast<std::size_t>(an.label - 1)] = child;
                front_b_[static_cast<std::size_t>(bn.label - 1)] = child;
            }
            arena_[static_cast<std::size_t>(x)].kids.push_back(child);
        }
        return x;
    }

    int top_a(int ai, int u) {
        if (ai == u) {
            return glue(u, 0);
        }
        const auto& n = a_.node(ai);
        if (n.is_leaf()) {
            const int x = make(RawNode::kLeafGen, -1, -1);
            front_a_[static_cast<std::size_t>(n.label - 1)] = x;
            return x;
        }
        const int x = make(n.gen, ai, -1);
        for (int c : a_.children(ai)) {
            const int k = top_a(c, u);
            if (k < 0) {
                return -1;
            }
            arena_[static_cast<std::size_t>(x)].kids.push_back(k);
        }
        return x;
    }

    int top_b(int bi, int u) {
        if (bi == u) {
            return glue(0, u);
        }
        const auto& n = b_.node(bi);
        if (n.is_leaf()) {
            const int x = make(RawNode::kLeafGen, -1, -1);
            front_b_[static_cast<std::size_t>(n.label - 1)] = x;
            return x;
        }
        const int x = make(n.gen, -1, bi);
        for (int c : b_.children(bi)) {
            const int k = top_b(c, u);
            if (k < 0) {
                return -1;
            }
            arena_[static_cast<std::size_t>(x)].kids.push_back(k);
        }
        return x;
    }

    void collect_leaves(int x, int region, std::vector<int>& owner) {
        const auto& n = arena_[static_cast<std::size_t>(x)];
        if (n.gen == RawNode::kLeafGen) {
            owner[static_cast<std::size_t>(x)] = region;
            return;
        }
        for (int c : n.kids) {
            collect_leaves(c, region, owner);
        }
    }

    RawNode to_raw_node(int x) const {
        const auto& n = arena_[static_cast<std::size_t>(x)];
        if (n.gen == RawNode::kLeafGen) {
            return RawNode::leaf(n.label);
        }
        RawNode r = RawNode::vertex(n.gen, {});
        r.tag = x;
        for (int c : n.kids) {
            r.children.push_back(to_raw_node(c));
        }
        return r;
    }

    /// Leaf labels 1..N are handed out in increasing order. Each region below
    /// a leaf of a (resp. b) must receive its first label in the order of
    /// those leaves, so that both occurrences respect the relabelling.
    void label_leaves(std::vector<CommonMultiple>& out) {
        std::vector<int> owner_a(arena_.size(), -1);
        std::vector<int> owner_b(arena_.size(), -1);
        for (std::size_t l = 0; l < front_a_.size(); ++l) {
            collect_leaves(front_a_[l], static_cast<int>(l), owner_a);
        }
        for (std::size_t l = 0; l < front_b_.size(); ++l) {
            collect_leaves(front_b_[l], static_cast<int>(l), owner_b);
        }
        std::vector<int> leaves;
        for (std::size_t x = 0; x < arena_.size(); ++x) {
            if (arena_[x].gen == RawNode::kLeafGen) {
                leaves.push_back(static_cast<int>(x));
            }
        }
        std::vector<char> seen_a(front_a_.size(), 0);
        std::vector<char> seen_b(front_b_.size(), 0);
        int next_a = 0;
        int next_b = 0;
        const int total = static_cast<int>(leaves.size());

        std::function<void(int)> place = [&](int t) {
            if (t > total) {
                emit(out);
                return;
            }
            for (int x : leaves) {
                auto& n = arena_[static_cast<std::size_t>(x)];
                if (n.label != 0) {
                    continue;
                }
                const int ra = owner_a[static_cast<std::size_t>(x)];
                const int rb = owner_b[static_cast<std::size_t>(x)];
                const bool new_a = ra >= 0 && seen_a[static_cast<std::size_t>(ra)] == 0;
                const bool new_b = rb >= 0 && seen_b[static_cast<std::size_t>(rb)] == 0;
                if ((new_a && ra != next_a) || (new_b && rb != next_b)) {
                    continue;
                }
                n.label = t;
                if (new_a) {
                    seen_a[static_cast<std::size_t>(ra)] = 1;
                    ++next_a;
                }
                if (new_b) {
                    seen_b[static_cast<std::size_t>(rb)] = 1;
                    ++next_b;
                }
                place(t + 1);
                if (new_a) {
                    seen_a[static_cast<std::size_t>(ra)] = 0;
                    --next_a;
                }
                if (new_b) {
                    seen_b[static_cast<std::size_t>(rb)] = 0;
                    --next_b;
                }
                n.label = 0;
            }
        };
        place(1);
    }

    void emit(std::vector<CommonMultiple>& out) const {
        std::vector<int> pos;
        const TreeMonomial gamma = canonicalize_tracking(to_raw_node(root_), pos);
        int a_root = -1;
        int b_root = -1;
        for (std::size_t x = 0; x < arena_.size(); ++x) {
            if (arena_[x].a_vertex == 0) {
                a_root = pos[x];
            }
            if (arena_[x].b_vertex == 0) {
                b_root = pos[x];
            }
        }
        auto oa = match_at(gamma, a_, a_root);
        auto ob = match_at(gamma, b_, b_root);
        if (!oa || !ob) {
            throw std::logic_error("small_common_multiples: glued tree lost an occurrence");
        }
        out.push_back(CommonMultiple{gamma, std::move(*oa), std::move(*ob)});
    }

    const TreeMonomial& a_;
    const TreeMonomial& b_;
    std::vector<GNode> arena_;
    std::vector<int> front_a_;
    std::vector<int> front_b_;
    int root_ = 0;
};

}  // namespace detail

/// All small common multiples of a and b: monomials gamma with occurrences of
/// a and b that share at least one vertex and together cover gamma.
/// Sorted by (operation degree, gamma, occurrence of a, occurrence of b).
/// For a == b the trivial overlap of a with itself is omitted, and of the two
/// mirror-image overlaps only one is kept.
inline std::vector<CommonMultiple> small_common_multiples(const TreeMonomial& a, const TreeMonomial& b) {
    std::vector<CommonMultiple> out;
    if (a.is_degenerate() || b.is_degenerate()) {
        return out;
    }
    detail::Gluer gluer(a, b);
    for (int u : a.vertices()) {
        gluer.run(u, true, out);
    }
    for (int v : b.vertices()) {
        if (v != 0) {
            gluer.run(v, false, out);
        }
    }
    const bool self = a == b;
    if (self) {
        std::erase_if(out, [](const CommonMultiple& cm) { return cm.emb_f == cm.emb_g; });
    }
    auto key = [](const CommonMultiple& cm) {
        return std::tie(cm.gamma, cm.emb_f.vertex_map, cm.emb_g.vertex_map);
    };
    std::sort(out.begin(), out.end(), [&](const CommonMultiple& x, const CommonMultiple& y) {
        if (x.gamma.op_degree() != y.gamma.op_degree()) {
            return x.gamma.op_degree() < y.gamma.op_degree();
        }
        return key(x) < key(y);
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (self) {
        std::vector<CommonMultiple> kept;
        for (auto& cm : out) {
            if (cm.emb_f.vertex_map < cm.emb_g.vertex_map) {
                kept.push_back(std::move(cm));
            }
        }
        out = std::move(kept);
    }
    return out;
}

/// All small common multiples, including the trivial self-overlap and both
/// mirror images for a == b. Used where the symmetric reduction does not apply.
inline std::vector<CommonMultiple> all_small_common_multiples(const TreeMonomial& a, const TreeMonomial& b) {
    std::vector<CommonMultiple> out;
    if (a.is_degenerate() || b.is_degenerate()) {
        return out;
    }
    detail::Gluer gluer(a, b);
    for (int u : a.vertices()) {
        gluer.run(u, true, out);
    }
    for (int v : b.vertices()) {
        if (v != 0) {
            gluer.run(v, false, out);
        }
    }
    std::sort(out.begin(), out.end(), [](const CommonMultiple& x, const CommonMultiple& y) {
        return std::make_tuple(x.gamma.op_degree(), std::cref(x.gamma), std::cref(x.emb_f.vertex_map),
                               std::cref(x.emb_g.vertex_map)) <
               std::make_tuple(y.gamma.op_degree(), std::cref(y.gamma), std::cref(y.emb_f.vertex_map),
                               std::cref(y.emb_g.vertex_map));
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// s_gamma(f,g) = m_{gamma,lt f}(f) - (c_f/c_g) m_{gamma,lt g}(g).
inline OperadElement s_polynomial(const OperadElement& f, const OperadElement& g, const CommonMultiple& cm,
                                  const MonomialOrder& order) {
    const auto [ltf, cf] = leading_term(f, order);
    const auto [ltg, cg] = leading_term(g, order);
    const auto of = match_at(cm.gamma, ltf, cm.emb_f.root);
    const auto og = match_at(cm.gamma, ltg, cm.emb_g.root);
    if (!of || *of != cm.emb_f || !og || *og != cm.emb_g) {
        throw std::invalid_argument("s_polynomial: common multiple does not match the leading terms");
    }
    auto s = map_monomials(f, [&](const TreeMonomial& m) { return embed_multiple(cm.gamma, cm.emb_f, m); });
    s.add_scaled(map_monomials(g, [&](const TreeMonomial& m) { return embed_multiple(cm.gamma, cm.emb_g, m); }),
                 -cf / cg);
    return s;
}

}  // namespace operad
