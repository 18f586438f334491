#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "element.hpp"
#include "embedding.hpp"
#include "random.hpp"

namespace operad {

/// r_g(f) = f - (c_f/c_g) m(g), where occ places lt(g) inside lt(f).
/// Throws std::invalid_argument if occ is not an occurrence of lt(g) in lt(f),
/// and std::logic_error if the result does not have a smaller leading term,
/// which can only happen for an order that is not admissible.
inline OperadElement reduce_once(const OperadElement& f, const OperadElement& g, const Occurrence& occ,
                                 const MonomialOrder& order) {
    const auto [ltf, cf] = leading_term(f, order);
    const auto [ltg, cg] = leading_term(g, order);
    const auto check = match_at(ltf, ltg, occ.root);
    if (!check || *check != occ) {
        throw std::invalid_argument("reduce_once: leading term of g does not divide leading term of f here");
    }
    OperadElement r = f;
    r.add_scaled(map_monomials(g, [&](const TreeMonomial& m) { return embed_multiple(ltf, occ, m); }), -cf / cg);
    if (!r.is_zero() && compare(order, leading_term(r, order).first, ltf) >= 0) {
        throw std::logic_error("reduce_once: leading term did not decrease; the order is not admissible");
    }
    return r;
}

inline OperadElement reduce_once(const OperadElement& f, const OperadElement& g, const Embedding& e,
                                 const MonomialOrder& order) {
    return reduce_once(f, g, e.occurrence, order);
}

/// A list of relations prepared for repeated division: leading terms and
/// tails are computed once.
class ReductionSystem {
public:
    struct Entry {
        OperadElement element;
        TreeMonomial lead;
        Rational lead_coeff;
        std::vector<Term> tail;
        std::uint64_t gen_mask = 0;
    };

    ReductionSystem() = default;

    ReductionSystem(const std::vector<OperadElement>& relations, MonomialOrder order) : order_(order) {
        for (const auto& r : relations) {
            add(r);
        }
    }

    void add(const OperadElement& r) {
        if (r.is_zero()) {
            throw std::invalid_argument("zero relation");
        }
        Entry e;
        e.element = r;
        auto [lt, c] = leading_term(r, order_);
        for (const auto& t : r.terms()) {
            if (t.monomial != lt) {
                e.tail.push_back(t);
            }
        }
        e.gen_mask = gen_mask(lt);
        e.lead = std::move(lt);
        e.lead_coeff = std::move(c);
        entries_.push_back(std::move(e));
    }

    [[nodiscard]] const MonomialOrder& order() const noexcept { return order_; }
    [[nodiscard]] const std::vector<Entry>& entries() const noexcept { return entries_; }
    [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }

    /// The divisor with the smallest index, at its occurrence with the smallest root.
    [[nodiscard]] std::optional<std::pair<std::size_t, Occurrence>> find_reducer(const TreeMonomial& m) const {
        const auto mask = gen_mask(m);
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            const auto& e = entries_[i];
            if ((e.gen_mask & ~mask) != 0) {
                continue;
            }
            if (auto occ = first_occurrence(m, e.lead)) {
                return std::make_pair(i, std::move(*occ));
            }
        }
        return std::nullopt;
    }

    /// Every (divisor index, occurrence) pair for m.
    [[nodiscard]] std::vector<std::pair<std::size_t, Occurrence>> all_reducers(const TreeMonomial& m) const {
        std::vector<std::pair<std::size_t, Occurrence>> out;
        const auto mask = gen_mask(m);
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            if ((entries_[i].gen_mask & ~mask) != 0) {
                continue;
            }
            for (auto& occ : find_occurrences(m, entries_[i].lead)) {
                out.emplace_back(i, std::move(occ));
            }
        }
        return out;
    }

    [[nodiscard]] bool is_normal(const TreeMonomial& m) const { return !find_reducer(m).has_value(); }

private:
    static std::uint64_t gen_mask(const TreeMonomial& m) {
        std::uint64_t mask = 0;
        for (const auto& n : m.nodes()) {
            if (!n.is_leaf()) {
                mask |= std::uint64_t{1} << (static_cast<unsigned>(n.gen) % 64U);
            }
        }
        return mask;
    }

    MonomialOrder order_;
    std::vector<Entry> entries_;
};

namespace detail {

using WorkMap = std::map<std::vector<std::int32_t>, Term, std::greater<>>;

inline void work_add(WorkMap& work, const MonomialOrder& order, TreeMonomial m, const Rational& c) {
    auto key = order_key(order, m);
    auto [it, inserted] = work.try_emplace(std::move(key), Term{std::move(m), Rational(0)});
    it->second.coeff += c;
    if (sgn(it->second.coeff) == 0) {
        work.erase(it);
    }
}

inline void apply_reducer(WorkMap& work, WorkMap::iterator it, const ReductionSystem::Entry& e, const Occurrence& occ,
                          const MonomialOrder& order) {
    const TreeMonomial host = it->second.monomial;
    const Rational factor = it->second.coeff / e.lead_coeff;
    work.erase(it);
    for (const auto& t : e.tail) {
        work_add(work, order, embed_multiple(host, occ, t.monomial), -factor * t.coeff);
    }
}

}  // namespace detail

/// The residue of f modulo the system: repeatedly reduce the largest
/// reducible monomial, by the divisor of smallest index at its first occurrence.
inline OperadElement normal_form(const OperadElement& f, const ReductionSystem& sys) {
    const auto& order = sys.order();
    detail::WorkMap work;
    for (const auto& t : f.terms()) {
        detail::work_add(work, order, t.monomial, t.coeff);
    }
    std::vector<Term> done;
    while (!work.empty()) {
        auto it = work.begin();
        auto red = sys.find_reducer(it->second.monomial);
        if (!red) {
            done.push_back(std::move(it->second));
            work.erase(it);
            continue;
        }
        detail::apply_reducer(work, it, sys.entries()[red->first], red->second, order);
    }
    return OperadElement::from_terms(std::move(done));
}

inline OperadElement normal_form(const OperadElement& f, const std::vector<OperadElement>& G,
                                 const MonomialOrder& order) {
    return normal_form(f, ReductionSystem(G, order));
}

/// Normal form computed with a random admissible strategy: at each step a
/// uniformly chosen reducible monomial is reduced by a uniformly chosen
/// divisor occurrence. Agrees with normal_form when the system is a Gröbner basis.
inline OperadElement normal_form_random(const OperadElement& f, const ReductionSystem& sys, Rng& rng) {
    const auto& order = sys.order();
    detail::WorkMap work;
    for (const auto& t : f.terms()) {
        detail::work_add(work, order, t.monomial, t.coeff);
    }
    for (;;) {
        std::vector<std::pair<detail::WorkMap::iterator, std::vector<std::pair<std::size_t, Occurrence>>>> reducible;
        for (auto it = work.begin(); it != work.end(); ++it) {
            auto rs = sys.all_reducers(it->second.monomial);
            if (!rs.empty()) {
                reducible.emplace_back(it, std::move(rs));
            }
        }
        if (reducible.empty()) {
            break;
        }
        auto& [it, rs] = reducible[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(reducible.size()) - 1))];
        const auto& [idx, occ] = rs[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(rs.size()) - 1))];
        detail::apply_reducer(work, it, sys.entries()[idx], occ, order);
    }
    std::vector<Term> done;
    for (auto& [k, t] : work) {
        done.push_back(std::move(t));
    }
    return OperadElement::from_terms(std::move(done));
}

}  // namespace operad
