#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace operad;

namespace {

Presentation load(const std::string& name) {
    return parse_presentation(oracle::read_text(std::string(OPERAD_CORPUS_DIR) + "/" + name + ".op"));
}

std::vector<OperadElement> monic_all(std::vector<OperadElement> v, const MonomialOrder& o) {
    for (auto& f : v) {
        f = make_monic(f, o);
    }
    std::sort(v.begin(), v.end(), [&](const OperadElement& a, const OperadElement& b) {
        return compare(o, leading_term(a, o).first, leading_term(b, o).first) < 0;
    });
    return v;
}

bool pairwise_lead_non_divisible(const std::vector<OperadElement>& g, const MonomialOrder& o) {
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t j = 0; j < g.size(); ++j) {
            if (i != j && divides(leading_term(g[j], o).first, leading_term(g[i], o).first)) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace

TEST(Buchberger, ComBasisIsUnchanged) {
    const auto com = load("com");
    const auto k = com.shuffle_relations();
    const auto gb = buchberger(k, com.order);
    EXPECT_TRUE(gb.complete_up_to_cap);
    EXPECT_FALSE(gb.truncated);
    EXPECT_EQ(gb.degree_cap, 6);
    const auto expect = monic_all(
        {parse_element("mu(mu(1,2),3) - mu(1,mu(2,3))", com.gens), parse_element("mu(mu(1,3),2) - mu(1,mu(2,3))", com.gens)},
        com.order);
    EXPECT_EQ(monic_all(gb.relations(), com.order), expect);
    EXPECT_TRUE(is_groebner(k, com.order, 6).is_groebner);
}

TEST(Buchberger, AntiComAdjoinsOneCubicElement) {
    const auto pr = load("anticom");
    CompletionOptions co;
    co.degree_cap = 4;
    const auto gb = buchberger(pr.shuffle_relations(), pr.order, co);
    ASSERT_EQ(gb.elements.size(), 3U);
    const auto g3 = parse_element("nu(1,nu(2,nu(3,4)))", pr.gens);
    EXPECT_EQ(gb.elements[2].element, g3);
    EXPECT_EQ(gb.elements[2].provenance.kind, Provenance::Kind::kSPolynomial);
    EXPECT_TRUE(pairwise_lead_non_divisible(gb.relations(), pr.order));
    // already reduced
    EXPECT_EQ(autoreduce(gb).relations(), gb.relations());
}

TEST(Buchberger, LeibIsAQuadraticBasis) {
    const auto pr = load("leib");
    const auto k = pr.shuffle_relations();
    const auto gb = buchberger(k, pr.order);
    EXPECT_TRUE(gb.complete_up_to_cap);
    EXPECT_EQ(gb.elements.size(), 6U);
    EXPECT_EQ(gb.max_op_degree(), 2);
    SparseEchelon in, out;
    for (const auto& r : k) {
        in.add(r);
    }
    for (const auto& r : gb.relations()) {
        out.add(r);
        EXPECT_TRUE(in.in_span(r));
    }
    EXPECT_EQ(in.rank(), out.rank());
}

TEST(Autoreduce, RemovesRedundantMultiples) {
    const auto gens = oracle::binary_gens(1);
    const MonomialOrder o;
    const auto g = parse_element("a(a(1,2),3) - a(1,a(2,3))", gens);
    const auto c = TreeMonomial::corolla(0, 2);
    auto m = oracle::compose_left(g, identity_shuffle(1, 2, 3), c);
    m *= Rational(2);
    const auto r = autoreduce(std::vector<OperadElement>{g, m}, o);
    ASSERT_EQ(r.size(), 1U);
    EXPECT_EQ(r[0], g);
}

TEST(IsGroebner, KnownVerdicts) {
    const auto lie = load("lie");
    const auto cert = is_groebner(lie.shuffle_relations(), lie.order, 4);
    EXPECT_TRUE(cert.is_groebner);
    EXPECT_EQ(cert.checked.size(), 1U);

    const auto ab = load("prelie-ab");
    EXPECT_TRUE(is_groebner(ab.shuffle_relations(), ab.order, 4).is_groebner);
    const auto ba = load("prelie-ba");
    const auto bad = is_groebner(ba.shuffle_relations(), ba.order, 4);
    ASSERT_FALSE(bad.is_groebner);
    ASSERT_TRUE(bad.witness.has_value());
    EXPECT_FALSE(bad.witness->residue.is_zero());
    EXPECT_EQ(normal_form(bad.witness->s_polynomial, ba.shuffle_relations(), ba.order), bad.witness->residue);
}

TEST(IsGroebner, EqualLeadingTermsAreCompared) {
    const auto gens = oracle::binary_gens(1);
    const MonomialOrder o;
    const std::vector<OperadElement> g{parse_element("a(a(1,2),3) - a(1,a(2,3))", gens),
                                       parse_element("a(a(1,2),3) - a(a(1,3),2)", gens)};
    const auto cert = is_groebner(g, o, 4);
    ASSERT_FALSE(cert.is_groebner);
    EXPECT_EQ(cert.witness->cm.gamma.op_degree(), 2);
}

TEST(Completion, DiamondLemmaEquivalence) {
    const MonomialOrder o;
    const int cap = 4;
    Rng rng(2024);
    int presentations = 0;
    int positives = 0;
    int negatives = 0;
    while (presentations < 24) {
        const auto p = oracle::random_presentation(rng);
        if (p.rels.empty()) {
            continue;
        }
        ++presentations;
        CompletionOptions co;
        co.degree_cap = cap;
        const auto gb = buchberger(p.rels, o, co);
        for (const auto& set : {p.rels, gb.relations()}) {
            const bool claimed = is_groebner(set, o, cap).is_groebner;
            const ReductionSystem sys(set, o);
            bool all_zero = true;
            for (const auto& f : oracle::random_ideal_elements(p.gens, set, cap, 200, rng)) {
                all_zero = all_zero && normal_form(f, sys).is_zero();
            }
            EXPECT_EQ(claimed, all_zero) << "presentation " << presentations;
            (claimed ? positives : negatives) += 1;
        }
    }
    EXPECT_GT(positives, 20);
    EXPECT_GT(negatives, 5);
}

TEST(Completion, IdealIsPreserved) {
    const MonomialOrder o;
    Rng rng(77);
    int done = 0;
    while (done < 12) {
        const auto p = oracle::random_presentation(rng);
        if (p.rels.empty()) {
            continue;
        }
        ++done;
        CompletionOptions co;
        co.degree_cap = 3;
        const auto gb = buchberger(p.rels, o, co);
        const auto sys = gb.system();
        for (const auto& r : p.rels) {
            EXPECT_TRUE(normal_form(r, sys).is_zero());
        }
        oracle::IdealOracle ideal(p.gens, p.rels, 4);
        for (const auto& e : gb.elements) {
            if (e.element.arity() <= 4) {
                EXPECT_TRUE(ideal.contains(e.element));
            }
            EXPECT_EQ(leading_term(e.element, o).second, 1);
        }
        EXPECT_TRUE(pairwise_lead_non_divisible(gb.relations(), o));
    }
}

TEST(Completion, WorkerCountDoesNotChangeTheResult) {
    std::vector<std::pair<std::vector<OperadElement>, MonomialOrder>> inputs;
    for (const char* name : {"anticom", "as", "perm", "leib", "two-com"}) {
        const auto pr = load(name);
        inputs.emplace_back(pr.shuffle_relations(), pr.order);
    }
    Rng rng(99);
    for (int k = 0; k < 6; ++k) {
        const auto p = oracle::random_presentation(rng);
        if (!p.rels.empty()) {
            inputs.emplace_back(p.rels, MonomialOrder{});
        }
    }
    for (const auto& [rels, order] : inputs) {
        CompletionOptions one;
        one.workers = 1;
        one.degree_cap = 5;
        CompletionOptions many = one;
        many.workers = 4;
        const auto a = buchberger(rels, order, one);
        const auto b = buchberger(rels, order, many);
        ASSERT_EQ(a.elements.size(), b.elements.size());
        for (std::size_t i = 0; i < a.elements.size(); ++i) {
            EXPECT_EQ(a.elements[i].id, b.elements[i].id);
            EXPECT_EQ(a.elements[i].element, b.elements[i].element);
            EXPECT_EQ(a.elements[i].provenance.kind, b.elements[i].provenance.kind);
        }
        EXPECT_EQ(a.pairs_processed, b.pairs_processed);
    }
}

TEST(Completion, RejectsBadInput) {
    const auto gens = oracle::binary_gens(1);
    EXPECT_THROW(buchberger({OperadElement{}}, MonomialOrder{}), std::invalid_argument);
}
