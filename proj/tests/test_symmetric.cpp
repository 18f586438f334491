#include <gtest/gtest.h>

#include <numeric>

#include "oracles.hpp"

using namespace operad;

namespace {

Presentation load(const std::string& name) {
    return parse_presentation(oracle::read_text(std::string(OPERAD_CORPUS_DIR) + "/" + name + ".op"));
}

OperadElement random_element(const GeneratorSet& gens, int op_degree, Rng& rng) {
    std::vector<Term> t;
    for (int k = 0; k < 4; ++k) {
        t.push_back({random_monomial(gens, op_degree, rng), uniform_int(rng, -3, 3)});
    }
    return OperadElement::from_terms(std::move(t));
}

SparseEchelon span_of(const std::vector<OperadElement>& rels) {
    SparseEchelon e;
    for (const auto& r : rels) {
        e.add(r);
    }
    return e;
}

// ---- free symmetric operad on planar labelled trees ----

std::string planar_key(const RawNode& r) {
    if (r.is_leaf()) {
        return std::to_string(r.label);
    }
    std::string s = "g" + std::to_string(r.gen) + "(";
    for (const auto& c : r.children) {
        s += planar_key(c) + ",";
    }
    return s + ")";
}

std::vector<RawNode> planar_trees(const GeneratorSet& gens, const std::vector<int>& labels) {
    std::vector<RawNode> out;
    if (labels.size() == 1) {
        out.push_back(RawNode::leaf(labels[0]));
        return out;
    }
    // every ordered split of the labels into k nonempty blocks
    for (GeneratorId g = 0; g < static_cast<GeneratorId>(gens.size()); ++g) {
        const int k = gens.arity(g);
        const int n = static_cast<int>(labels.size());
        if (k > n) {
            continue;
        }
        std::vector<int> owner(static_cast<std::size_t>(n), 0);
        auto assign = [&](auto& self, int i) -> void {
            if (i == n) {
                std::vector<std::vector<int>> blocks(static_cast<std::size_t>(k));
                for (int j = 0; j < n; ++j) {
                    blocks[static_cast<std::size_t>(owner[static_cast<std::size_t>(j)])].push_back(
                        labels[static_cast<std::size_t>(j)]);
                }
                for (const auto& b : blocks) {
                    if (b.empty()) {
                        return;
                    }
                }
                std::vector<RawNode> kids;
                auto prod = [&](auto& me, std::size_t j) -> void {
                    if (j == blocks.size()) {
                        out.push_back(RawNode::vertex(g, kids));
                        return;
                    }
                    for (auto& c : planar_trees(gens, blocks[j])) {
                        kids.push_back(c);
                        me(me, j + 1);
                        kids.pop_back();
                    }
                };
                prod(prod, 0);
                return;
            }
            for (int b = 0; b < k; ++b) {
                owner[static_cast<std::size_t>(i)] = b;
                self(self, i + 1);
            }
        };
        assign(assign, 0);
    }
    return out;
}

using PlanarElement = std::vector<std::pair<RawNode, Rational>>;

// Quotient of planar labelled trees of arity n by the generator symmetries and
// by every relabelled composition of a relation with one corolla (arity = relation arity + k - 1)
// or the relation itself (arity = relation arity).
std::pair<std::size_t, std::size_t> symmetric_dimension(const Presentation& pr, int n) {
    const auto& gens = pr.gens;
    const auto& sym = *pr.symmetry;
    std::vector<int> labels(static_cast<std::size_t>(n));
    std::iota(labels.begin(), labels.end(), 1);
    std::map<std::string, int> col;
    auto cid = [&](const RawNode& r) { return col.emplace(planar_key(r), static_cast<int>(col.size())).first->second; };
    const auto trees = planar_trees(gens, labels);
    for (const auto& t : trees) {
        cid(t);
    }
    oracle::ModSpan span;
    // generator symmetries at every vertex
    for (const auto& t : trees) {
        RawNode copy = t;
        auto visit = [&](auto& self, RawNode& v) -> void {
            if (v.is_leaf()) {
                return;
            }
            const int k = static_cast<int>(v.children.size());
            for (const auto& p : all_permutations(k)) {
                const auto [target, s] = sym.action(v.gen, p);
                // g(c_{p1},...,c_{pk}) = s * g'(c_1,...,c_k), with (c_{p1},...) the current children
                const auto saved = v;
                std::vector<RawNode> c(static_cast<std::size_t>(k));
                for (int j = 0; j < k; ++j) {
                    c[static_cast<std::size_t>(p[static_cast<std::size_t>(j)] - 1)] = saved.children[static_cast<std::size_t>(j)];
                }
                v.gen = target;
                v.children = c;
                const int other = cid(copy);
                v = saved;
                oracle::Row row;
                const int self_id = cid(copy);
                row[self_id] = 1;
                row[other] = (row[other] + oracle::kPrime - oracle::to_mod(Rational(s))) % oracle::kPrime;
                if (row[other] == 0) {
                    row.erase(other);
                }
                span.add(row);
            }
            for (auto& ch : v.children) {
                self(self, ch);
            }
        };
        visit(visit, copy);
    }
    const std::size_t free_dim = col.size() - span.rank();
    // relations, composed with corollas in planar fashion, under all relabellings
    std::vector<PlanarElement> seeds;
    for (const auto& r : pr.relations) {
        PlanarElement pe;
        for (const auto& t : r.terms()) {
            pe.push_back({to_raw(t.monomial), t.coeff});
        }
        const int a = r.arity();
        if (a == n) {
            seeds.push_back(pe);
        }
        for (GeneratorId g = 0; g < static_cast<GeneratorId>(gens.size()); ++g) {
            const int k = gens.arity(g);
            if (a + k - 1 != n) {
                continue;
            }
            std::vector<RawNode> fresh;
            for (int j = 0; j < k - 1; ++j) {
                fresh.push_back(RawNode::leaf(a + 1 + j));
            }
            for (int i = 1; i <= a; ++i) {
                PlanarElement below;
                for (auto [tree, c] : pe) {
                    auto graft = [&](auto& self, RawNode& x) -> void {
                        if (x.is_leaf()) {
                            if (x.label == i) {
                                std::vector<RawNode> kids{RawNode::leaf(i)};
                                kids.insert(kids.end(), fresh.begin(), fresh.end());
                                x = RawNode::vertex(g, kids);
                            }
                            return;
                        }
                        for (auto& ch : x.children) {
                            self(self, ch);
                        }
                    };
                    graft(graft, tree);
                    below.push_back({tree, c});
                }
                seeds.push_back(below);
            }
            for (int j = 0; j < k; ++j) {
                PlanarElement above;
                for (const auto& [tree, c] : pe) {
                    std::vector<RawNode> kids = fresh;
                    kids.insert(kids.begin() + j, tree);
                    above.push_back({RawNode::vertex(g, kids), c});
                }
                seeds.push_back(above);
            }
        }
    }
    for (const auto& p : all_permutations(n)) {
        for (const auto& pe : seeds) {
            oracle::Row row;
            for (auto [tree, c] : pe) {
                relabel_leaves(tree, [&](int l) { return p[static_cast<std::size_t>(l - 1)]; });
                auto& x = row[cid(tree)];
                x = (x + oracle::to_mod(c)) % oracle::kPrime;
            }
            std::erase_if(row, [](const auto& kv) { return kv.second == 0; });
            span.add(row);
        }
    }
    return {free_dim, col.size() - span.rank()};
}

}  // namespace

TEST(Permutations, RankUnrankAndComposition) {
    for (int k = 1; k <= 5; ++k) {
        const auto all = all_permutations(k);
        EXPECT_EQ(all.size(), factorial(k));
        for (std::size_t r = 0; r < all.size(); ++r) {
            EXPECT_EQ(permutation_rank(all[r]), r);
            EXPECT_EQ(permutation_unrank(k, r), all[r]);
        }
    }
    Rng rng(1);
    for (int t = 0; t < 1000; ++t) {
        const int k = uniform_int(rng, 1, 6);
        const auto p = random_permutation(k, rng);
        const auto q = random_permutation(k, rng);
        const auto r = random_permutation(k, rng);
        EXPECT_EQ(compose_permutations(p, compose_permutations(q, r)), compose_permutations(compose_permutations(p, q), r));
        EXPECT_EQ(permutation_sign(compose_permutations(p, q)), permutation_sign(p) * permutation_sign(q));
        const auto pq = compose_permutations(p, q);
        for (int i = 0; i < k; ++i) {
            EXPECT_EQ(pq[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(q[static_cast<std::size_t>(i)] - 1)]);
        }
    }
    EXPECT_EQ(permutation_from_cycles({{1, 2, 3}}, 4), (Permutation{2, 3, 1, 4}));
    EXPECT_EQ(permutation_sign(permutation_from_cycles({{1, 2}}, 3)), -1);
}

TEST(Act, WorkedExamples) {
    const auto as = load("as");
    const auto& gens = as.gens;
    const auto alpha = OperadElement::monomial(TreeMonomial::corolla(*gens.find("star"), 2));
    const auto beta = OperadElement::monomial(TreeMonomial::corolla(*gens.find("star_21"), 2));
    EXPECT_EQ(act({2, 1}, alpha, *as.symmetry), beta);
    EXPECT_EQ(act({2, 1}, beta, *as.symmetry), alpha);
    EXPECT_EQ(act({1, 2}, alpha, *as.symmetry), alpha);

    const auto anticom = load("anticom");
    const auto nu = OperadElement::monomial(TreeMonomial::corolla(0, 2));
    EXPECT_EQ(act({2, 1}, nu, *anticom.symmetry), -nu);

    const auto com = load("com");
    const auto mu = OperadElement::monomial(TreeMonomial::corolla(0, 2));
    EXPECT_EQ(act({2, 1}, mu, *com.symmetry), mu);
}

TEST(Act, IdentityAndCompatibility) {
    std::size_t checked = 0;
    for (const char* name : {"com", "anticom", "lie", "as", "perm", "two-com", "k-lie"}) {
        const auto pr = load(name);
        const auto& sym = *pr.symmetry;
        Rng rng(2);
        for (int t = 0; t < 200; ++t) {
            const auto f = random_element(pr.gens, uniform_int(rng, 1, 3), rng);
            if (f.is_zero()) {
                continue;
            }
            const int n = f.arity();
            const auto t1 = random_permutation(n, rng);
            const auto t2 = random_permutation(n, rng);
            ASSERT_EQ(act(identity_permutation(n), f, sym), f) << name;
            ASSERT_EQ(act(t1, act(t2, f, sym), sym), act(compose_permutations(t1, t2), f, sym)) << name;
            ++checked;
        }
    }
    EXPECT_GE(checked, 1000U);
}

TEST(Act, RejectsWrongSize) {
    const auto com = load("com");
    const auto mu = OperadElement::monomial(TreeMonomial::corolla(0, 2));
    EXPECT_THROW(act({1, 2, 3}, mu, *com.symmetry), std::invalid_argument);
}

TEST(Symmetrize, ComLieAndAs) {
    const auto com = load("com");
    const auto k = com.shuffle_relations();
    EXPECT_EQ(k.size(), 2U);
    const auto e = span_of(k);
    for (const char* g : {"mu(mu(1,2),3) - mu(1,mu(2,3))", "mu(mu(1,3),2) - mu(1,mu(2,3))"}) {
        EXPECT_TRUE(e.in_span(parse_element(g, com.gens)));
    }

    const auto lie = load("lie");
    EXPECT_EQ(lie.shuffle_relations().size(), 1U);

    const auto as = load("as");
    const auto ka = as.shuffle_relations();
    EXPECT_EQ(ka.size(), 6U);
    const auto ea = span_of(ka);
    const char* six[] = {
        "star(star(1,2),3) - star(1,star(2,3))",          "star(star_21(1,2),3) - star_21(star(1,3),2)",
        "star(star(1,3),2) - star(1,star_21(2,3))",       "star(star_21(1,3),2) - star_21(star(1,2),3)",
        "star_21(1,star(2,3)) - star_21(star_21(1,3),2)", "star_21(1,star_21(2,3)) - star_21(star_21(1,2),3)",
    };
    for (const char* r : six) {
        EXPECT_TRUE(ea.in_span(parse_element(r, as.gens))) << r;
    }
}

TEST(Symmetrize, SpanIsStable) {
    for (const char* name : {"com", "anticom", "lie", "as", "prelie-ab", "perm", "two-com", "lie2", "k-lie"}) {
        const auto pr = load(name);
        const auto k = pr.shuffle_relations();
        const auto e = span_of(k);
        EXPECT_EQ(e.rank(), k.size()) << name;
        for (const auto& s : k) {
            const int n = s.arity();
            for (int i = 1; i < n; ++i) {
                auto tau = identity_permutation(n);
                std::swap(tau[static_cast<std::size_t>(i - 1)], tau[static_cast<std::size_t>(i)]);
                EXPECT_TRUE(e.in_span(act(tau, s, *pr.symmetry))) << name;
            }
        }
    }
}

TEST(Symmetrize, ForgetfulConsistencyWithPlanarOracle) {
    for (const char* name : {"com", "anticom", "lie", "as", "prelie-ab", "prelie-ba", "perm", "two-com", "lie2"}) {
        const auto pr = load(name);
        const auto gb = buchberger(pr.shuffle_relations(), pr.order);
        for (int n = 3; n <= 4; ++n) {
            const auto [free_dim, quotient] = symmetric_dimension(pr, n);
            EXPECT_EQ(free_dim, enumerate_tree_monomials(pr.gens, n, n - 1).size()) << name << " arity " << n;
            EXPECT_EQ(quotient, dimensions(gb, pr.gens, n).at(n)) << name << " arity " << n;
        }
    }
}
