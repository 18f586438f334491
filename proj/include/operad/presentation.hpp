#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "element.hpp"
#include "symmetric.hpp"

namespace operad {

/// A parse error carrying a 1-based source position.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, const std::string& message)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line),
          column_(column),
          message_(message) {}

    [[nodiscard]] int line() const noexcept { return line_; }
    [[nodiscard]] int column() const noexcept { return column_; }
    [[nodiscard]] const std::string& message() const noexcept { return message_; }

private:
    int line_;
    int column_;
    std::string message_;
};

enum class SymmetryAttr { kUnspecified, kSymmetric, kAntisymmetric, kNone, kAction };

struct ActionEntry {
    std::vector<std::vector<int>> cycles;
    int sign = 1;
    std::string target;

    friend bool operator==(const ActionEntry&, const ActionEntry&) = default;
};

struct GeneratorDecl {
    std::string name;
    int arity = 2;
    SymmetryAttr attr = SymmetryAttr::kUnspecified;
    std::vector<ActionEntry> actions;

    friend bool operator==(const GeneratorDecl&, const GeneratorDecl&) = default;
};

/// Generators (with symmetry data in symmetric mode) and relations.
/// In symmetric mode a generator with free action expands to one shuffle
/// generator per permutation: `name` for the identity and `name_<perm>`
/// (e.g. star_21) for the others.
struct Presentation {
    MonomialOrder order;
    bool symmetric = false;
    std::string field = "Q";
    int degree_cap = 0;  // 0: use the completion default
    std::vector<GeneratorDecl> declarations;
    std::vector<std::string> precedence;  // all generator names, smallest first
    GeneratorSet gens;
    std::optional<GeneratorSymmetry> symmetry;
    std::vector<OperadElement> relations;

    /// The relations as a shuffle-operad generating set: symmetrized in symmetric mode.
    [[nodiscard]] std::vector<OperadElement> shuffle_relations() const {
        if (symmetric) {
            return symmetrize_relations(relations, *symmetry);
        }
        return relations;
    }

    friend bool operator==(const Presentation& a, const Presentation& b) {
        return a.order == b.order && a.symmetric == b.symmetric && a.field == b.field &&
               a.degree_cap == b.degree_cap &&
               a.declarations == b.declarations && a.precedence == b.precedence && a.gens == b.gens &&
               a.relations == b.relations;
    }
};

namespace detail {

class Cursor {
public:
    Cursor(std::string_view text, int line, int column) : text_(text), line_(line), col0_(column) {}

    [[nodiscard]] std::size_t pos() const noexcept { return pos_; }
    void reset(std::size_t p) { pos_ = p; }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) {
            ++pos_;
        }
    }
    [[nodiscard]] bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }
    [[nodiscard]] char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    bool accept(std::string_view s) {
        skip_ws();
        if (text_.substr(pos_, s.size()) == s) {
            pos_ += s.size();
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) {
            fail(std::string("expected '") + c + "'" + found());
        }
    }

    std::string ident() {
        skip_ws();
        const std::size_t start = pos_;
        if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) != 0 || text_[pos_] == '_')) {
            ++pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) != 0 || text_[pos_] == '_')) {
                ++pos_;
            }
        }
        if (start == pos_) {
            fail("expected an identifier" + found());
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    [[nodiscard]] bool at_digit() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }
    [[nodiscard]] bool at_ident() {
        const char c = peek();
        return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_';
    }

    std::string digits() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0) {
            ++pos_;
        }
        if (start == pos_) {
            fail("expected a number" + found());
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    int integer() {
        const std::size_t start = pos_;
        const auto d = digits();
        if (d.size() > 9) {
            reset(start);
            fail("number too large");
        }
        return std::stoi(d);
    }

    /// A whitespace-delimited word such as "path-lex".
    std::string word() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])) == 0) {
            ++pos_;
        }
        if (start == pos_) {
            fail("unexpected end of statement");
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, msg); }
    [[noreturn]] void fail_at(std::size_t p, const std::string& msg) const {
        throw ParseError(line_, col0_ + static_cast<int>(p), msg);
    }

    [[nodiscard]] std::string found() const {
        if (pos_ >= text_.size()) {
            return ", found end of statement";
        }
        return std::string(", found '") + text_[pos_] + "'";
    }

    void skip_ws_public() { skip_ws(); }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    int line_;
    int col0_;
};

struct Statement {
    std::string text;
    int line = 1;
    int column = 1;
};

/// Splits on newlines and ';', dropping '#' comments and blank statements.
inline std::vector<Statement> split_statements(std::string_view text) {
    std::vector<Statement> out;
    int line = 1;
    int col = 1;
    Statement cur{"", 1, 1};
    bool comment = false;
    auto flush = [&] {
        bool blank = true;
        for (char c : cur.text) {
            if (std::isspace(static_cast<unsigned char>(c)) == 0) {
                blank = false;
            }
        }
        if (!blank) {
            out.push_back(cur);
        }
    };
    for (char c : text) {
        if (c == '\n') {
            flush();
            ++line;
            col = 1;
            cur = Statement{"", line, col};
            comment = false;
            continue;
        }
        if (!comment && c == '#') {
            comment = true;
        }
        if (!comment && c == ';') {
            flush();
            ++col;
            cur = Statement{"", line, col};
            continue;
        }
        cur.text.push_back(comment ? ' ' : c);
        ++col;
    }
    flush();
    return out;
}

struct TermSyntax {
    Rational coeff;
    RawNode tree;
    std::size_t pos;
};

inline RawNode parse_tree(Cursor& c, const GeneratorSet& gens) {
    if (c.at_digit()) {
        const std::size_t p = c.pos();
        const int l = c.integer();
        if (l < 1) {
            c.fail_at(p, "leaf labels must be positive");
        }
        return RawNode::leaf(l);
    }
    c.skip_ws_public();
    const std::size_t p = c.pos();
    const auto name = c.ident();
    const auto id = gens.find(name);
    if (!id) {
        c.fail_at(p, "unknown generator '" + name + "'");
    }
    RawNode r = RawNode::vertex(*id, {});
    c.expect('(');
    do {
        r.children.push_back(parse_tree(c, gens));
    } while (c.accept(','));
    c.expect(')');
    if (static_cast<int>(r.children.size()) != gens.arity(*id)) {
        c.fail_at(p, "arity mismatch at vertex '" + name + "': expected " + std::to_string(gens.arity(*id)) +
                         " inputs, got " + std::to_string(r.children.size()));
    }
    return r;
}

inline Rational parse_coefficient(Cursor& c) {
    const std::size_t p = c.pos();
    std::string num = c.digits();
    if (c.accept('/')) {
        const std::string den = c.digits();
        Rational q(num + "/" + den);
        if (den.find_first_not_of('0') == std::string::npos) {
            c.fail_at(p, "zero denominator");
        }
        q.canonicalize();
        return q;
    }
    return Rational(num);
}

/// side := [sign] term { (+|-) term }, term := [coef '*'] tree
inline void parse_side(Cursor& c, const GeneratorSet& gens, int side_sign, std::vector<TermSyntax>& out) {
    bool first = true;
    for (;;) {
        int sign = 1;
        if (c.accept('-')) {
            sign = -1;
        } else if (!c.accept('+') && !first) {
            return;
        }
        first = false;
        c.skip_ws_public();
        const std::size_t p = c.pos();
        Rational coeff = 1;
        if (c.at_digit()) {
            const std::size_t save = c.pos();
            Rational q = parse_coefficient(c);
            if (c.accept('*')) {
                coeff = q;
            } else {
                c.reset(save);
            }
        }
        RawNode t = parse_tree(c, gens);
        out.push_back(TermSyntax{coeff * sign * side_sign, std::move(t), p});
    }
}

inline std::pair<TreeMonomial, int> finish_monomial(const Cursor& c, std::size_t p, RawNode raw,
                                                    const GeneratorSet& gens, const GeneratorSymmetry* sym) {
    try {
        auto t = canonicalize(raw, gens);
        if (sym != nullptr) {
            return canonicalize_symmetric(std::move(raw), *sym);
        }
        return {std::move(t), 1};
    } catch (const std::invalid_argument& e) {
        c.fail_at(p, e.what());
    }
}

inline OperadElement parse_combination(Cursor& c, const GeneratorSet& gens, const GeneratorSymmetry* sym,
                                       std::size_t start, bool allow_degenerate) {
    std::vector<TermSyntax> terms;
    parse_side(c, gens, 1, terms);
    if (c.accept('=')) {
        parse_side(c, gens, -1, terms);
    }
    if (!c.at_end()) {
        c.fail("unexpected text" + c.found());
    }
    std::vector<Term> out;
    int arity = 0;
    for (auto& t : terms) {
        if (!allow_degenerate && t.tree.is_leaf()) {
            c.fail_at(t.pos, "a bare leaf is not a valid relation term");
        }
        auto [m, s] = finish_monomial(c, t.pos, std::move(t.tree), gens, sym);
        if (arity != 0 && m.arity() != arity) {
            c.fail_at(t.pos, "non-homogeneous relation: term of arity " + std::to_string(m.arity()) +
                                 " after terms of arity " + std::to_string(arity));
        }
        arity = m.arity();
        out.push_back(Term{std::move(m), t.coeff * s});
    }
    auto e = OperadElement::from_terms(std::move(out));
    if (e.is_zero()) {
        c.fail_at(start, "zero relation");
    }
    return e;
}

inline std::string permutation_digits(const Permutation& p) {
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p.size() > 9 && i > 0) {
            s += "x";
        }
        s += std::to_string(p[i]);
    }
    return s;
}

}  // namespace detail

/// Parses an element such as "mu(mu(1,2),3) - 2*mu(1,mu(2,3))" against a
/// generator set, applying the symmetry (if any) while canonicalizing.
inline OperadElement parse_element(std::string_view text, const GeneratorSet& gens,
                                   const GeneratorSymmetry* sym = nullptr) {
    detail::Cursor c(text, 1, 1);
    return detail::parse_combination(c, gens, sym, 0, true);
}

inline TreeMonomial parse_monomial(std::string_view text, const GeneratorSet& gens) {
    detail::Cursor c(text, 1, 1);
    auto raw = detail::parse_tree(c, gens);
    if (!c.at_end()) {
        c.fail("unexpected text" + c.found());
    }
    return detail::finish_monomial(c, 0, std::move(raw), gens, nullptr).first;
}

inline Presentation parse_presentation(std::string_view text) {
    using detail::Cursor;
    Presentation pr;
    struct PendingRelation {
        std::string text;
        int line;
        int column;
    };
    std::vector<PendingRelation> pending;
    std::vector<std::pair<std::string, std::pair<int, int>>> decl_pos;
    std::optional<std::pair<std::vector<std::string>, std::pair<int, int>>> precedence;
    bool symmetric_line = false;

    for (const auto& st : detail::split_statements(text)) {
        Cursor c(st.text, st.line, st.column);
        c.skip_ws_public();
        const std::size_t kw_pos = c.pos();
        const std::string kw = c.word();
        if (kw == "order") {
            const auto v = c.word();
            if (v == "path-lex") {
                pr.order.kind = OrderKind::kPathLex;
            } else if (v == "forest-lex") {
                pr.order.kind = OrderKind::kForestLex;
            } else {
                c.fail("unknown order '" + v + "' (expected path-lex or forest-lex)");
            }
        } else if (kw == "word-mode") {
            const auto v = c.word();
            if (v == "deglex") {
                pr.order.word_mode = WordMode::kDegLex;
            } else if (v == "lex") {
                pr.order.word_mode = WordMode::kLex;
            } else if (v == "revdeglex") {
                pr.order.word_mode = WordMode::kRevDegLex;
            } else {
                c.fail("unknown word mode '" + v + "' (expected deglex, lex or revdeglex)");
            }
        } else if (kw == "perm-mode") {
            const auto v = c.word();
            if (v == "revlex") {
                pr.order.perm_mode = PermMode::kRevLex;
            } else if (v == "lex") {
                pr.order.perm_mode = PermMode::kLex;
            } else {
                c.fail("unknown permutation mode '" + v + "' (expected revlex or lex)");
            }
        } else if (kw == "root-first") {
            pr.order.root_first = true;
        } else if (kw == "field") {
            const auto v = c.word();
            if (v != "Q") {
                c.fail("unsupported field '" + v + "' (only Q is available)");
            }
        } else if (kw == "cap") {
            c.skip_ws_public();
            const std::size_t cap_pos = c.pos();
            pr.degree_cap = c.integer();
            if (pr.degree_cap < 1) {
                c.fail_at(cap_pos, "degree cap must be at least 1");
            }
        } else if (kw == "symmetric") {
            symmetric_line = true;
        } else if (kw == "generator") {
            GeneratorDecl d;
            c.skip_ws_public();
            const std::size_t name_pos = c.pos();
            d.name = c.ident();
            c.skip_ws_public();
            const std::size_t ar_pos = c.pos();
            d.arity = c.integer();
            if (d.arity < 1) {
                c.fail_at(ar_pos, "generator arity must be at least 1");
            }
            for (const auto& other : pr.declarations) {
                if (other.name == d.name) {
                    c.fail_at(name_pos, "duplicate generator '" + d.name + "'");
                }
            }
            if (!c.at_end()) {
                c.skip_ws_public();
                const std::size_t attr_pos = c.pos();
                const auto attr = c.ident();
                if (attr == "symmetric") {
                    d.attr = SymmetryAttr::kSymmetric;
                } else if (attr == "antisymmetric") {
                    d.attr = SymmetryAttr::kAntisymmetric;
                } else if (attr == "none") {
                    d.attr = SymmetryAttr::kNone;
                } else if (attr == "action") {
                    d.attr = SymmetryAttr::kAction;
                    do {
                        ActionEntry e;
                        while (c.peek() == '(') {
                            c.expect('(');
                            std::vector<int> cyc;
                            do {
                                cyc.push_back(c.integer());
                                c.accept(',');
                            } while (c.peek() != ')' && !c.at_end());
                            c.expect(')');
                            e.cycles.push_back(std::move(cyc));
                        }
                        if (e.cycles.empty()) {
                            c.fail("expected a cycle such as (1 2)" + c.found());
                        }
                        if (!c.accept("->")) {
                            c.fail("expected '->'" + c.found());
                        }
                        if (c.accept('-')) {
                            e.sign = -1;
                        } else {
                            c.accept('+');
                        }
                        e.target = c.ident();
                        d.actions.push_back(std::move(e));
                    } while (c.accept(','));
                } else {
                    c.fail_at(attr_pos, "unknown symmetry attribute '" + attr +
                                            "' (expected symmetric, antisymmetric, none or action)");
                }
                if (!c.at_end()) {
                    c.fail("unexpected text" + c.found());
                }
            }
            decl_pos.emplace_back(d.name, std::make_pair(st.line, st.column + static_cast<int>(name_pos)));
            pr.declarations.push_back(std::move(d));
        } else if (kw == "precedence") {
            std::vector<std::string> names;
            names.push_back(c.ident());
            while (c.accept('<')) {
                names.push_back(c.ident());
            }
            if (!c.at_end()) {
                c.fail("expected '<'" + c.found());
            }
            precedence.emplace(std::move(names), std::make_pair(st.line, st.column + static_cast<int>(kw_pos)));
        } else if (kw == "relation") {
            c.skip_ws_public();
            const std::size_t p = c.pos();
            pending.push_back(PendingRelation{st.text.substr(p), st.line, st.column + static_cast<int>(p)});
        } else {
            c.fail_at(kw_pos, "unknown statement '" + kw + "'");
        }
    }

    if (pr.declarations.empty()) {
        throw ParseError(1, 1, "no generators declared");
    }
    pr.symmetric = symmetric_line;
    for (const auto& d : pr.declarations) {
        if (d.attr != SymmetryAttr::kUnspecified) {
            pr.symmetric = true;
        }
    }

    // Expanded generator names in default precedence order.
    struct Expanded {
        std::string name;
        int arity;
        std::size_t decl;
        Permutation perm;  // orbit position for free generators
    };
    std::vector<Expanded> expanded;
    for (std::size_t k = 0; k < pr.declarations.size(); ++k) {
        const auto& d = pr.declarations[k];
        const bool free = pr.symmetric && (d.attr == SymmetryAttr::kNone || d.attr == SymmetryAttr::kUnspecified);
        if (free && d.arity > 1) {
            const auto perms = all_permutations(d.arity);
            for (std::size_t r = 1; r < perms.size(); ++r) {
                expanded.push_back({d.name + "_" + detail::permutation_digits(perms[r]), d.arity, k, perms[r]});
            }
        }
        expanded.push_back({d.name, d.arity, k, identity_permutation(d.arity)});
    }
    std::vector<std::string> order_names;
    for (const auto& e : expanded) {
        order_names.push_back(e.name);
    }
    if (precedence) {
        const auto& [names, where] = *precedence;
        auto sorted_given = names;
        auto sorted_all = order_names;
        std::sort(sorted_given.begin(), sorted_given.end());
        std::sort(sorted_all.begin(), sorted_all.end());
        if (sorted_given != sorted_all) {
            std::string all;
            for (const auto& n : order_names) {
                all += (all.empty() ? "" : ", ") + n;
            }
            throw ParseError(where.first, where.second,
                             "precedence must list every generator exactly once: " + all);
        }
        order_names = names;
    }
    pr.precedence = order_names;
    std::vector<Generator> gl;
    for (const auto& e : expanded) {
        const auto rank = std::find(order_names.begin(), order_names.end(), e.name) - order_names.begin();
        gl.push_back(Generator{e.name, e.arity, static_cast<int>(rank)});
    }
    for (std::size_t i = 0; i < gl.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (gl[i].name == gl[j].name) {
                const auto& [n, where] = decl_pos[expanded[i].decl];
                throw ParseError(where.first, where.second, "generator name '" + gl[i].name + "' clashes with an orbit generator");
            }
        }
    }
    pr.gens = GeneratorSet(gl);

    if (pr.symmetric) {
        GeneratorSymmetry sym(pr.gens);
        std::vector<std::pair<std::pair<GeneratorId, Permutation>, SymmetryAction>> entries;
        for (std::size_t k = 0; k < pr.declarations.size(); ++k) {
            const auto& d = pr.declarations[k];
            const auto& where = decl_pos[k].second;
            const GeneratorId g = *pr.gens.find(d.name);
            try {
                switch (d.attr) {
                    case SymmetryAttr::kSymmetric:
                        sym.set_symmetric(g);
                        break;
                    case SymmetryAttr::kAntisymmetric:
                        sym.set_antisymmetric(g);
                        break;
                    case SymmetryAttr::kNone:
                    case SymmetryAttr::kUnspecified: {
                        std::vector<GeneratorId> orbit(factorial(d.arity));
                        for (std::size_t e = 0; e < expanded.size(); ++e) {
                            if (expanded[e].decl == k) {
                                orbit[permutation_rank(expanded[e].perm)] = *pr.gens.find(expanded[e].name);
                            }
                        }
                        sym.set_free_orbit(orbit);
                        break;
                    }
                    case SymmetryAttr::kAction:
                        for (const auto& a : d.actions) {
                            const auto target = pr.gens.find(a.target);
                            if (!target) {
                                throw std::invalid_argument("unknown generator '" + a.target + "' in action");
                            }
                            entries.push_back({{g, permutation_from_cycles(a.cycles, d.arity)}, {*target, a.sign}});
                        }
                        break;
                }
            } catch (const std::invalid_argument& e) {
                throw ParseError(where.first, where.second, e.what());
            }
        }
        try {
            if (!entries.empty()) {
                sym.close_from(entries);
            }
            if (!sym.is_complete()) {
                throw std::invalid_argument("symmetry data does not cover every generator");
            }
        } catch (const std::invalid_argument& e) {
            const auto& where = decl_pos.front().second;
            throw ParseError(where.first, where.second, e.what());
        }
        pr.symmetry = std::move(sym);
    }

    for (const auto& rel : pending) {
        Cursor c(rel.text, rel.line, rel.column);
        pr.relations.push_back(
            detail::parse_combination(c, pr.gens, pr.symmetry ? &*pr.symmetry : nullptr, 0, false));
    }
    return pr;
}

inline std::string to_string(SymmetryAttr a) {
    switch (a) {
        case SymmetryAttr::kSymmetric:
            return "symmetric";
        case SymmetryAttr::kAntisymmetric:
            return "antisymmetric";
        case SymmetryAttr::kNone:
            return "none";
        case SymmetryAttr::kAction:
            return "action";
        case SymmetryAttr::kUnspecified:
            break;
    }
    return "";
}

/// Canonical text of a presentation; parsing it gives an equal presentation.
inline std::string print_presentation(const Presentation& pr) {
    std::ostringstream os;
    os << "order " << to_string(pr.order.kind) << "\n";
    if (pr.order.kind == OrderKind::kPathLex) {
        os << "word-mode " << to_string(pr.order.word_mode) << "\n";
        os << "perm-mode " << to_string(pr.order.perm_mode) << "\n";
    }
    if (pr.order.root_first) {
        os << "root-first\n";
    }
    os << "field " << pr.field << "\n";
    if (pr.degree_cap > 0) {
        os << "cap " << pr.degree_cap << "\n";
    }
    if (pr.symmetric) {
        os << "symmetric\n";
    }
    for (const auto& d : pr.declarations) {
        os << "generator " << d.name << " " << d.arity;
        if (d.attr != SymmetryAttr::kUnspecified) {
            os << " " << to_string(d.attr);
        }
        for (std::size_t k = 0; k < d.actions.size(); ++k) {
            const auto& a = d.actions[k];
            os << (k == 0 ? " " : ", ");
            for (const auto& cyc : a.cycles) {
                os << "(";
                for (std::size_t i = 0; i < cyc.size(); ++i) {
                    os << (i == 0 ? "" : " ") << cyc[i];
                }
                os << ")";
            }
            os << " -> " << (a.sign < 0 ? "-" : "") << a.target;
        }
        os << "\n";
    }
    os << "precedence";
    for (std::size_t i = 0; i < pr.precedence.size(); ++i) {
        os << (i == 0 ? " " : " < ") << pr.precedence[i];
    }
    os << "\n";
    for (const auto& r : pr.relations) {
        os << "relation " << to_string(r, pr.gens, pr.order) << "\n";
    }
    return os.str();
}

}  // namespace operad
