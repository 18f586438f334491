#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace operad;

namespace {

Presentation load(const std::string& name) {
    return parse_presentation(oracle::read_text(std::string(OPERAD_CORPUS_DIR) + "/" + name + ".op"));
}

GroebnerBasis complete(const Presentation& pr, int cap = 0) {
    CompletionOptions co;
    co.degree_cap = cap;
    return buchberger(pr.shuffle_relations(), pr.order, co);
}

std::vector<std::size_t> dims_of(const GroebnerBasis& gb, const GeneratorSet& gens, int up_to) {
    return dimensions(gb, gens, up_to).dims;
}

}  // namespace

TEST(Dimensions, CertifiedArity) {
    const auto gens = oracle::binary_gens(1);
    EXPECT_EQ(certified_arity(6, gens), 7);
    EXPECT_EQ(certified_arity(4, gens), 5);
    EXPECT_EQ(certified_arity(3, GeneratorSet({{"w", 3, 0}})), 7);
    EXPECT_EQ(certified_arity(5, GeneratorSet({{"u", 1, 0}, {"a", 2, 1}})), 0);
}

TEST(Dimensions, ComAndAntiCom) {
    const auto com = load("com");
    EXPECT_EQ(dims_of(complete(com), com.gens, 6), (std::vector<std::size_t>{1, 1, 1, 1, 1, 1}));
    const auto anticom = load("anticom");
    EXPECT_EQ(dims_of(complete(anticom), anticom.gens, 6), (std::vector<std::size_t>{1, 1, 1, 0, 0, 0}));
}

TEST(Dimensions, LieMatchesMultilinearLieOracle) {
    const auto lie = load("lie");
    const auto d = dims_of(complete(lie), lie.gens, 6);
    EXPECT_EQ(d, (std::vector<std::size_t>{1, 1, 2, 6, 24, 120}));
    for (int n = 1; n <= 6; ++n) {
        EXPECT_EQ(d[static_cast<std::size_t>(n - 1)], oracle::multilinear_lie_dimension(n)) << n;
    }
}

TEST(Dimensions, AsNormalMonomialsAndOracle) {
    const auto as = load("as");
    const auto gb = complete(as);
    const auto table = dimensions(gb, as.gens, 5, true);
    EXPECT_EQ(table.dims, (std::vector<std::size_t>{1, 2, 6, 24, 120}));
    std::set<TreeMonomial> got(table.monomials[2].begin(), table.monomials[2].end());
    std::set<TreeMonomial> expect;
    // a1(a2a3), a1(a3a2), a2(a1a3), (a2a3)a1, a3(a1a2), (a3a2)a1
    for (const char* m : {"star(1,star(2,3))", "star(1,star_21(2,3))", "star_21(star(1,3),2)", "star_21(1,star(2,3))",
                          "star_21(star(1,2),3)", "star_21(1,star_21(2,3))"}) {
        expect.insert(parse_monomial(m, as.gens));
    }
    EXPECT_EQ(got, expect);
    oracle::IdealOracle ideal(as.gens, as.shuffle_relations(), 5);
    for (int n = 1; n <= 5; ++n) {
        EXPECT_EQ(table.at(n), ideal.quotient_dimension(n)) << n;
    }
}

TEST(Dimensions, CorpusAgreesWithIdealOracle) {
    for (const char* name : {"com", "anticom", "lie", "prelie-ab", "prelie-ba", "perm", "leib", "two-com", "lie2",
                             "lie-griess"}) {
        const auto pr = load(name);
        const auto gb = complete(pr);
        const int up_to = 4;
        oracle::IdealOracle ideal(pr.gens, pr.shuffle_relations(), up_to);
        const auto d = dims_of(gb, pr.gens, up_to);
        for (int n = 1; n <= up_to; ++n) {
            EXPECT_EQ(d[static_cast<std::size_t>(n - 1)], ideal.quotient_dimension(n)) << name << " arity " << n;
        }
    }
}

TEST(Dimensions, KnownSequences) {
    const auto prelie = load("prelie-ab");
    EXPECT_EQ(dims_of(complete(prelie), prelie.gens, 5), (std::vector<std::size_t>{1, 2, 9, 64, 625}));
    const auto perm = load("perm");
    EXPECT_EQ(dims_of(complete(perm), perm.gens, 5), (std::vector<std::size_t>{1, 2, 3, 4, 5}));
    const auto leib = load("leib");
    EXPECT_EQ(dims_of(complete(leib), leib.gens, 5), (std::vector<std::size_t>{1, 2, 6, 24, 120}));
}

TEST(Dimensions, NormalMonomialsAreExactlyTheUndivisibleTrees) {
    for (const char* name : {"com", "anticom", "lie", "as", "prelie-ab", "prelie-ba", "perm", "leib", "two-com", "lie2",
                             "k-lie", "lie-griess"}) {
        const auto pr = load(name);
        const auto gb = complete(pr, pr.degree_cap);
        std::vector<TreeMonomial> leads;
        for (const auto& e : gb.elements) {
            leads.push_back(leading_term(e.element, pr.order).first);
        }
        const int up_to = std::min(5, certified_arity(gb.degree_cap, pr.gens));
        for (int n = 1; n <= up_to; ++n) {
            std::set<TreeMonomial> expect;
            for (const auto& t : oracle::all_trees(pr.gens, n, n - 1)) {
                bool normal = true;
                for (const auto& l : leads) {
                    normal = normal && !oracle::divides(l, t);
                }
                if (normal) {
                    expect.insert(t);
                }
            }
            const auto got = normal_monomials(gb, pr.gens, n);
            EXPECT_EQ(std::set<TreeMonomial>(got.begin(), got.end()), expect) << name << " " << n;
        }
    }
}

TEST(Dimensions, RefusesBeyondTheCertifiedArity) {
    const auto com = load("com");
    const auto gb = complete(com, 2);
    EXPECT_EQ(certified_arity(gb.degree_cap, com.gens), 3);
    EXPECT_THROW(dimensions(gb, com.gens, 4), std::domain_error);
    const auto t = dimensions(gb, com.gens, 4, false, true);
    EXPECT_EQ(t.reliable_up_to, 3);
}

TEST(Pbw, KnownVerdicts) {
    const auto ab = load("prelie-ab");
    const auto yes = pbw_certificate(autoreduce(ab.shuffle_relations(), ab.order), ab.order, 4);
    EXPECT_TRUE(yes.certified) << yes.reason;

    const auto ba = load("prelie-ba");
    const auto no = pbw_certificate(autoreduce(ba.shuffle_relations(), ba.order), ba.order, 4);
    EXPECT_FALSE(no.certified);
    ASSERT_TRUE(no.groebner.has_value());
    ASSERT_TRUE(no.groebner->witness.has_value());
    EXPECT_FALSE(no.groebner->witness->residue.is_zero());

    const auto leib = load("leib");
    EXPECT_TRUE(pbw_certificate(autoreduce(leib.shuffle_relations(), leib.order), leib.order, 4).certified);

    const auto anticom = load("anticom");
    const auto gb = complete(anticom, 4);
    const auto cubic = pbw_certificate(gb);
    EXPECT_FALSE(cubic.certified);
    ASSERT_TRUE(cubic.offending.has_value());
    EXPECT_EQ(*cubic.offending, 2U);
}

TEST(Triangular, ComAndAntiCom) {
    const auto com = load("com");
    const auto r1 = check_triangular(complete(com).system(), com.gens, 2, 5);
    EXPECT_TRUE(r1.passed);
    EXPECT_GT(r1.monomials_checked, 0U);
    EXPECT_GT(r1.compositions_checked, 0U);

    const auto anticom = load("anticom");
    const auto sys = complete(anticom).system();
    const auto r3 = check_triangular(sys, anticom.gens, 3, 5);
    EXPECT_TRUE(r3.passed);
    const auto r2 = check_triangular(sys, anticom.gens, 2, 5);
    EXPECT_FALSE(r2.passed);
    ASSERT_TRUE(r2.first_failing_arity.has_value());
    EXPECT_EQ(*r2.first_failing_arity, 4);
    EXPECT_EQ(r2.violations.front().condition, 3);
}

TEST(Triangular, PbwImpliesTwoTriangular) {
    int certified = 0;
    for (const char* name : {"com", "lie", "as", "prelie-ab", "perm", "leib", "two-com", "lie2", "lie-griess"}) {
        const auto pr = load(name);
        const auto gb = complete(pr);
        if (!pbw_certificate(gb).certified) {
            continue;
        }
        ++certified;
        const auto rep = check_triangular(gb.system(), pr.gens, 2, 5);
        EXPECT_TRUE(rep.passed) << name;
    }
    EXPECT_GE(certified, 5);
}

TEST(Triangular, RestrictedMonomialsMatchSubtreeDefinition) {
    const GeneratorSet gens({{"a", 2, 0}, {"b", 2, 1}, {"t", 3, 2}});
    Rng rng(31);
    for (int k = 0; k < 300; ++k) {
        const auto t = random_monomial(gens, uniform_int(rng, 1, 5), rng);
        for (int size = 1; size <= 3; ++size) {
            std::set<std::vector<int>> lib;
            for (int r : t.vertices()) {
                for (auto s : rooted_vertex_sets(t, r, size)) {
                    if (static_cast<int>(s.size()) != size) {
                        continue;
                    }
                    std::sort(s.begin(), s.end());
                    EXPECT_EQ(restricted_monomial(t, s), oracle::restrict_to(t, s));
                    lib.insert(s);
                }
            }
            const auto all = oracle::connected_vertex_sets(t, size);
            EXPECT_EQ(lib, std::set<std::vector<int>>(all.begin(), all.end()));
        }
    }
}
