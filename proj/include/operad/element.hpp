#pragma once

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "order.hpp"
#include "tree.hpp"

namespace operad {

using Rational = mpq_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

struct Term {
    TreeMonomial monomial;
    Rational coeff;

    friend bool operator==(const Term& a, const Term& b) { return a.monomial == b.monomial && a.coeff == b.coeff; }
};

/// A homogeneous finite linear combination of tree monomials with rational
/// coefficients. Terms are kept sorted structurally with no zero coefficients,
/// so equality of elements is equality of term lists.
class OperadElement {
public:
    OperadElement() = default;

    static OperadElement from_terms(std::vector<Term> terms) {
        OperadElement e;
        std::sort(terms.begin(), terms.end(),
                  [](const Term& a, const Term& b) { return a.monomial < b.monomial; });
        for (auto& t : terms) {
            if (e.arity_ == 0) {
                e.arity_ = t.monomial.arity();
            } else if (t.monomial.arity() != e.arity_) {
                throw std::invalid_argument("non-homogeneous element: terms of arity " + std::to_string(e.arity_) +
                                            " and " + std::to_string(t.monomial.arity()));
            }
            if (!e.terms_.empty() && e.terms_.back().monomial == t.monomial) {
                e.terms_.back().coeff += t.coeff;
            } else {
                e.terms_.push_back(std::move(t));
            }
        }
        std::erase_if(e.terms_, [](const Term& t) { return sgn(t.coeff) == 0; });
        return e;
    }

    static OperadElement monomial(TreeMonomial m, Rational c = 1) {
        std::vector<Term> t;
        t.push_back(Term{std::move(m), std::move(c)});
        return from_terms(std::move(t));
    }

    [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
    /// Arity of the terms; 0 for an element that was never given a term.
    [[nodiscard]] int arity() const noexcept { return arity_; }
    [[nodiscard]] const std::vector<Term>& terms() const noexcept { return terms_; }
    [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }

    [[nodiscard]] Rational coefficient(const TreeMonomial& m) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                                   [](const Term& t, const TreeMonomial& x) { return t.monomial < x; });
        if (it != terms_.end() && it->monomial == m) {
            return it->coeff;
        }
        return 0;
    }

    [[nodiscard]] int max_op_degree() const {
        int d = 0;
        for (const auto& t : terms_) {
            d = std::max(d, t.monomial.op_degree());
        }
        return d;
    }

    OperadElement& operator*=(const Rational& c) {
        if (sgn(c) == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& t : terms_) {
            t.coeff *= c;
        }
        return *this;
    }

    /// this += c * other
    OperadElement& add_scaled(const OperadElement& other, const Rational& c) {
        if (other.is_zero() || sgn(c) == 0) {
            return *this;
        }
        if (arity_ != 0 && other.arity_ != 0 && arity_ != other.arity_) {
            throw std::invalid_argument("cannot add elements of different arity");
        }
        std::vector<Term> merged;
        merged.reserve(terms_.size() + other.terms_.size());
        auto a = terms_.begin();
        auto b = other.terms_.begin();
        while (a != terms_.end() || b != other.terms_.end()) {
            if (b == other.terms_.end() || (a != terms_.end() && a->monomial < b->monomial)) {
                merged.push_back(std::move(*a++));
            } else if (a == terms_.end() || b->monomial < a->monomial) {
                merged.push_back(Term{b->monomial, b->coeff * c});
                ++b;
            } else {
                Rational s = a->coeff + b->coeff * c;
                if (sgn(s) != 0) {
                    merged.push_back(Term{std::move(a->monomial), std::move(s)});
                }
                ++a;
                ++b;
            }
        }
        terms_ = std::move(merged);
        if (arity_ == 0) {
            arity_ = other.arity_;
        }
        return *this;
    }

    OperadElement& operator+=(const OperadElement& o) { return add_scaled(o, 1); }
    OperadElement& operator-=(const OperadElement& o) { return add_scaled(o, -1); }

    friend OperadElement operator+(OperadElement a, const OperadElement& b) { return a += b; }
    friend OperadElement operator-(OperadElement a, const OperadElement& b) { return a -= b; }
    friend OperadElement operator*(const Rational& c, OperadElement a) { return a *= c; }
    friend OperadElement operator-(OperadElement a) { return a *= Rational(-1); }

    friend bool operator==(const OperadElement& a, const OperadElement& b) { return a.terms_ == b.terms_; }

private:
    std::vector<Term> terms_;
    int arity_ = 0;
};

/// Applies a monomial map term by term: sum c * f(m).
inline OperadElement map_monomials(const OperadElement& e,
                                   const std::function<TreeMonomial(const TreeMonomial&)>& f) {
    std::vector<Term> out;
    out.reserve(e.size());
    for (const auto& t : e.terms()) {
        out.push_back(Term{f(t.monomial), t.coeff});
    }
    return OperadElement::from_terms(std::move(out));
}

/// Terms sorted from largest to smallest under the order.
inline std::vector<Term> terms_descending(const OperadElement& e, const MonomialOrder& order) {
    std::vector<std::pair<std::vector<std::int32_t>, const Term*>> keyed;
    keyed.reserve(e.size());
    for (const auto& t : e.terms()) {
        keyed.emplace_back(order_key(order, t.monomial), &t);
    }
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<Term> out;
    out.reserve(keyed.size());
    for (const auto& [k, t] : keyed) {
        out.push_back(*t);
    }
    return out;
}

/// lt(f) and its coefficient c_f. Throws on the zero element.
inline std::pair<TreeMonomial, Rational> leading_term(const OperadElement& f, const MonomialOrder& order) {
    if (f.is_zero()) {
        throw std::invalid_argument("leading term of the zero element");
    }
    const Term* best = &f.terms().front();
    auto best_key = order_key(order, best->monomial);
    for (const auto& t : f.terms()) {
        auto k = order_key(order, t.monomial);
        if (k > best_key) {
            best_key = std::move(k);
            best = &t;
        }
    }
    return {best->monomial, best->coeff};
}

/// Scales f so that its leading coefficient is 1.
inline OperadElement make_monic(OperadElement f, const MonomialOrder& order) {
    if (f.is_zero()) {
        return f;
    }
    const auto c = leading_term(f, order).second;
    f *= Rational(1) / c;
    return f;
}

/// Signed combination in operation notation, leading term first, e.g.
/// "mu(mu(1,2),3) - mu(1,mu(2,3))" or "2*nu(1,nu(2,3))".
inline std::string to_string(const OperadElement& f, const GeneratorSet& gens, const MonomialOrder& order) {
    if (f.is_zero()) {
        return "0";
    }
    std::string s;
    bool first = true;
    for (const auto& t : terms_descending(f, order)) {
        Rational c = t.coeff;
        if (first) {
            if (sgn(c) < 0) {
                s += "-";
                c = -c;
            }
        } else {
            s += sgn(c) < 0 ? " - " : " + ";
            if (sgn(c) < 0) {
                c = -c;
            }
        }
        if (c != 1) {
            s += c.get_str() + "*";
        }
        s += to_string(t.monomial, gens);
        first = false;
    }
    return s;
}

}  // namespace operad
