#pragma once

#include <functional>
#include <map>
#include <vector>

#include "element.hpp"

namespace operad {

/// Incremental row echelon form over Q with monomials as columns. Each stored
/// row is scaled so that its pivot (structurally largest monomial) has coefficient 1.
class SparseEchelon {
public:
    using Row = std::map<TreeMonomial, Rational, std::greater<>>;

    /// Reduces v by the stored rows; the remainder is zero iff v is in the span.
    [[nodiscard]] Row reduce(const OperadElement& v) const {
        Row r;
        for (const auto& t : v.terms()) {
            r.emplace(t.monomial, t.coeff);
        }
        auto it = r.begin();
        while (it != r.end()) {
            auto p = pivots_.find(it->first);
            if (p == pivots_.end()) {
                ++it;
                continue;
            }
            const TreeMonomial key = it->first;
            const Rational c = it->second;
            for (const auto& [m, x] : rows_[p->second]) {
                auto [slot, inserted] = r.try_emplace(m, 0);
                slot->second -= c * x;
                if (sgn(slot->second) == 0) {
                    r.erase(slot);
                }
            }
            it = r.upper_bound(key);
        }
        return r;
    }

    [[nodiscard]] bool in_span(const OperadElement& v) const { return reduce(v).empty(); }

    /// Adds v; returns true if it was independent of the stored rows.
    bool add(const OperadElement& v) {
        Row r = reduce(v);
        if (r.empty()) {
            return false;
        }
        const Rational inv = Rational(1) / r.begin()->second;
        for (auto& [m, x] : r) {
            x *= inv;
        }
        pivots_.emplace(r.begin()->first, rows_.size());
        rows_.push_back(std::move(r));
        return true;
    }

    [[nodiscard]] std::size_t rank() const noexcept { return rows_.size(); }

private:
    std::vector<Row> rows_;
    std::map<TreeMonomial, std::size_t> pivots_;
};

}  // namespace operad
