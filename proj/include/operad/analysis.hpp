#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "completion.hpp"

namespace operad {

/// Largest arity whose monomials all have operation degree at most the cap:
/// 1 + cap * (min generator arity - 1). Unary generators give no bound (returns 0).
inline int certified_arity(int degree_cap, const GeneratorSet& gens) {
    const int k = gens.min_arity();
    if (k <= 1) {
        return 0;
    }
    return 1 + degree_cap * (k - 1);
}

/// Normal monomials of every arity 1..n, grown by grafting corollas onto
/// normal monomials (every divisor of a normal monomial is normal).
inline std::vector<std::vector<TreeMonomial>> normal_monomials_up_to(const ReductionSystem& sys,
                                                                      const GeneratorSet& gens, int n) {
    if (gens.min_arity() <= 1) {
        throw std::domain_error("normal monomials are not finite in each arity with unary generators");
    }
    std::vector<std::vector<TreeMonomial>> by_arity(static_cast<std::size_t>(n) + 1);
    std::vector<TreeMonomial> level{TreeMonomial::degenerate()};
    if (sys.is_normal(level.front())) {
        by_arity[1].push_back(level.front());
    } else {
        level.clear();
    }
    while (!level.empty()) {
        TreeSet seen;
        std::vector<TreeMonomial> next;
        for (const auto& t : level) {
            for (GeneratorId g = 0; g < static_cast<GeneratorId>(gens.size()); ++g) {
                const int k = gens.arity(g);
                if (t.arity() + k - 1 > n) {
                    continue;
                }
                const auto c = TreeMonomial::corolla(g, k);
                for (int i = 1; i <= t.arity(); ++i) {
                    for (const auto& s : enumerate_shuffles(k, t.arity(), i)) {
                        auto u = compose(t, s, c);
                        if (seen.contains(u) || !sys.is_normal(u)) {
                            continue;
                        }
                        seen.insert(u);
                        next.push_back(std::move(u));
                    }
                }
            }
        }
        std::sort(next.begin(), next.end());
        for (const auto& u : next) {
            by_arity[static_cast<std::size_t>(u.arity())].push_back(u);
        }
        level = std::move(next);
    }
    for (auto& v : by_arity) {
        std::sort(v.begin(), v.end(), [](const TreeMonomial& a, const TreeMonomial& b) {
            return a.op_degree() != b.op_degree() ? a.op_degree() < b.op_degree() : a < b;
        });
    }
    return by_arity;
}

inline std::vector<TreeMonomial> normal_monomials(const ReductionSystem& sys, const GeneratorSet& gens, int n) {
    return normal_monomials_up_to(sys, gens, n)[static_cast<std::size_t>(n)];
}

/// Checks n against the arity range certified by the basis cap.
inline std::vector<TreeMonomial> normal_monomials(const GroebnerBasis& G, const GeneratorSet& gens, int n) {
    const int bound = certified_arity(G.degree_cap, gens);
    if (n > bound) {
        throw std::domain_error("arity " + std::to_string(n) + " exceeds the arity " + std::to_string(bound) +
                                " certified by degree cap " + std::to_string(G.degree_cap));
    }
    return normal_monomials(G.system(), gens, n);
}

struct DimensionTable {
    std::vector<std::size_t> dims;  // dims[n-1] = dimension in arity n
    int reliable_up_to = 0;          // arities above this may be overcounted
    std::vector<std::vector<TreeMonomial>> monomials;  // filled when requested

    [[nodiscard]] std::size_t at(int n) const { return dims.at(static_cast<std::size_t>(n - 1)); }
};

/// Dimensions of the quotient in arities 1..up_to. Refuses (std::domain_error)
/// beyond the certified arity unless allow_unreliable is set.
inline DimensionTable dimensions(const GroebnerBasis& G, const GeneratorSet& gens, int up_to,
                                 bool keep_monomials = false, bool allow_unreliable = false) {
    DimensionTable table;
    table.reliable_up_to = certified_arity(G.degree_cap, gens);
    if (up_to > table.reliable_up_to && !allow_unreliable) {
        throw std::domain_error("arity " + std::to_string(up_to) + " exceeds the arity " +
                                std::to_string(table.reliable_up_to) + " certified by degree cap " +
                                std::to_string(G.degree_cap));
    }
    auto all = normal_monomials_up_to(G.system(), gens, up_to);
    for (int n = 1; n <= up_to; ++n) {
        table.dims.push_back(all[static_cast<std::size_t>(n)].size());
        if (keep_monomials) {
            table.monomials.push_back(std::move(all[static_cast<std::size_t>(n)]));
        }
    }
    return table;
}

struct PbwCertificate {
    bool certified = false;
    std::string reason;
    std::optional<std::size_t> offending;  // index of a non-quadratic element
    std::optional<GroebnerCertificate> groebner;
};

/// Quadratic Gröbner basis test: every element has operation degree exactly 2
/// in every term, and the diamond-lemma check passes at the cap.
inline PbwCertificate pbw_certificate(const std::vector<OperadElement>& G, const MonomialOrder& order, int cap,
                                      std::size_t workers = 0) {
    PbwCertificate cert;
    for (std::size_t k = 0; k < G.size(); ++k) {
        for (const auto& t : G[k].terms()) {
            if (t.monomial.op_degree() != 2) {
                cert.offending = k;
                cert.reason = "element " + std::to_string(k + 1) + " has a term of operation degree " +
                              std::to_string(t.monomial.op_degree());
                return cert;
            }
        }
    }
    cert.groebner = is_groebner(G, order, cap, workers);
    cert.certified = cert.groebner->is_groebner;
    cert.reason = cert.certified ? "quadratic Groebner basis" : "an S-polynomial has a nonzero residue";
    return cert;
}

inline PbwCertificate pbw_certificate(const GroebnerBasis& G, std::size_t workers = 0) {
    return pbw_certificate(G.relations(), G.order, G.degree_cap, workers);
}

/// Connected vertex sets of size at most k with top vertex r, in the divisor sense.
inline std::vector<std::vector<int>> rooted_vertex_sets(const TreeMonomial& t, int r, int k) {
    std::vector<std::vector<int>> out{{r}};
    if (k <= 1) {
        return out;
    }
    for (int c : t.children(r)) {
        if (t.node(c).is_leaf()) {
            continue;
        }
        const auto below = rooted_vertex_sets(t, c, k - 1);
        std::vector<std::vector<int>> grown;
        for (const auto& s : out) {
            for (const auto& b : below) {
                if (s.size() + b.size() <= static_cast<std::size_t>(k)) {
                    auto u = s;
                    u.insert(u.end(), b.begin(), b.end());
                    grown.push_back(std::move(u));
                }
            }
        }
        out.insert(out.end(), grown.begin(), grown.end());
    }
    return out;
}

/// The monomial formed by a connected vertex set of t: nodes outside the set
/// become leaves, relabelled by the rank of their smallest leaf.
inline TreeMonomial restricted_monomial(const TreeMonomial& t, std::vector<int> vertices) {
    std::sort(vertices.begin(), vertices.end());
    std::vector<int> mins;
    std::function<RawNode(int)> build = [&](int i) {
        if (!std::binary_search(vertices.begin(), vertices.end(), i)) {
            mins.push_back(t.node(i).label);
            return RawNode::leaf(t.node(i).label);
        }
        RawNode r = RawNode::vertex(t.node(i).gen, {});
        t.for_each_child(i, [&](int c) { r.children.push_back(build(c)); });
        return r;
    };
    RawNode raw = build(vertices.front());
    std::sort(mins.begin(), mins.end());
    relabel_leaves(raw, [&](int l) {
        return static_cast<int>(std::lower_bound(mins.begin(), mins.end(), l) - mins.begin()) + 1;
    });
    return canonicalize_unchecked(raw);
}

struct TriangularViolation {
    int condition = 0;
    int arity = 0;
    TreeMonomial monomial;
    std::string detail;
};

struct TriangularReport {
    bool passed = true;
    int k = 0;
    int up_to = 0;
    std::size_t monomials_checked = 0;
    std::size_t compositions_checked = 0;
    std::size_t violation_count = 0;
    std::vector<TriangularViolation> violations;  // the first few, in arity order
    std::optional<int> first_failing_arity;
};

/// Verifies the k-triangular basis conditions for the normal monomials of the
/// system on all monomials of arity at most up_to:
/// (1) normal_form fixes every normal monomial;
/// (2) a composition of two normal monomials is normal or has a normal form
///     made of strictly smaller normal monomials;
/// (3) a monomial is normal iff all its divisors with at most k vertices are normal.
inline TriangularReport check_triangular(const ReductionSystem& sys, const GeneratorSet& gens, int k, int up_to,
                                         std::size_t max_reported = 20) {
    TriangularReport rep;
    rep.k = k;
    rep.up_to = up_to;
    const auto& order = sys.order();
    auto report = [&](int cond, int arity, const TreeMonomial& m, std::string detail) {
        rep.passed = false;
        ++rep.violation_count;
        if (!rep.first_failing_arity || arity < *rep.first_failing_arity) {
            rep.first_failing_arity = arity;
        }
        if (rep.violations.size() < max_reported) {
            rep.violations.push_back(TriangularViolation{cond, arity, m, std::move(detail)});
        }
    };
    const auto normal = normal_monomials_up_to(sys, gens, up_to);
    const int min_arity = gens.min_arity();
    for (int n = 1; n <= up_to; ++n) {
        for (const auto& m : normal[static_cast<std::size_t>(n)]) {
            if (!(normal_form(OperadElement::monomial(m), sys) == OperadElement::monomial(m))) {
                report(1, n, m, "normal form moves a normal monomial");
            }
        }
        const int max_deg = (n - 1) / (min_arity - 1);
        for (const auto& m : enumerate_tree_monomials(gens, n, max_deg)) {
            if (m.is_degenerate()) {
                continue;
            }
            ++rep.monomials_checked;
            bool local = true;
            for (int r : m.vertices()) {
                for (const auto& s : rooted_vertex_sets(m, r, k)) {
                    if (!sys.is_normal(restricted_monomial(m, s))) {
                        local = false;
                        break;
                    }
                }
                if (!local) {
                    break;
                }
            }
            if (local != sys.is_normal(m)) {
                report(3, n, m,
                       local ? "all divisors with at most " + std::to_string(k) + " vertices are normal, but the "
                                   "monomial is not"
                             : "normal monomial with a non-normal small divisor");
            }
        }
    }
    for (int a = 2; a <= up_to; ++a) {
        for (int b = 2; a + b - 1 <= up_to; ++b) {
            for (const auto& alpha : normal[static_cast<std::size_t>(a)]) {
                for (const auto& beta : normal[static_cast<std::size_t>(b)]) {
                    for (int i = 1; i <= a; ++i) {
                        for (const auto& s : enumerate_shuffles(b, a, i)) {
                            ++rep.compositions_checked;
                            const auto c = compose(alpha, s, beta);
                            if (sys.is_normal(c)) {
                                continue;
                            }
                            const auto nf = normal_form(OperadElement::monomial(c), sys);
                            for (const auto& t : nf.terms()) {
                                if (compare(order, t.monomial, c) >= 0 || !sys.is_normal(t.monomial)) {
                                    report(2, a + b - 1, c, "normal form of a composition is not strictly smaller");
                                    break;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    std::sort(rep.violations.begin(), rep.violations.end(),
              [](const TriangularViolation& x, const TriangularViolation& y) { return x.arity < y.arity; });
    return rep;
}

}  // namespace operad
