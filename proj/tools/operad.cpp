// Command-line driver: operad <command> FILE [ELEMENT] [flags]

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "operad/operad.hpp"

namespace {

using operad::GeneratorSet;
using operad::MonomialOrder;
using operad::OperadElement;
using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;

struct Options {
    std::string command;
    std::string file;
    std::string element;
    std::string order;
    std::string word_mode;
    std::string perm_mode;
    bool root_first = false;
    int cap = 0;
    int up_to = 0;
    bool json = false;
    bool monomials = false;
    std::size_t admissibility_trials = 4000;
};

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void apply_order_flags(const Options& o, MonomialOrder& order) {
    if (o.order == "path-lex") {
        order.kind = operad::OrderKind::kPathLex;
    } else if (o.order == "forest-lex") {
        order.kind = operad::OrderKind::kForestLex;
    }
    if (o.word_mode == "deglex") {
        order.word_mode = operad::WordMode::kDegLex;
    } else if (o.word_mode == "lex") {
        order.word_mode = operad::WordMode::kLex;
    } else if (o.word_mode == "revdeglex") {
        order.word_mode = operad::WordMode::kRevDegLex;
    }
    if (o.perm_mode == "revlex") {
        order.perm_mode = operad::PermMode::kRevLex;
    } else if (o.perm_mode == "lex") {
        order.perm_mode = operad::PermMode::kLex;
    }
    if (o.root_first) {
        order.root_first = true;
    }
}

Json order_json(const MonomialOrder& o) {
    Json j;
    j["kind"] = operad::to_string(o.kind);
    if (o.kind == operad::OrderKind::kPathLex) {
        j["word_mode"] = operad::to_string(o.word_mode);
        j["perm_mode"] = operad::to_string(o.perm_mode);
    } else {
        j["root_first"] = o.root_first;
    }
    return j;
}

Json generators_json(const GeneratorSet& gens) {
    Json arr = Json::array();
    for (const auto& g : gens.all()) {
        arr.push_back(Json{{"name", g.name}, {"arity", g.arity}});
    }
    return arr;
}

std::string gname(std::size_t id) { return "g" + std::to_string(id); }

struct Context {
    Options opts;
    operad::Presentation pr;
    std::ostream& out;
    std::ostream& err;

    [[nodiscard]] const MonomialOrder& order() const { return pr.order; }
    [[nodiscard]] std::string str(const OperadElement& e) const { return operad::to_string(e, pr.gens, pr.order); }
    [[nodiscard]] std::string str(const operad::TreeMonomial& m) const { return operad::to_string(m, pr.gens); }

    Json header(const std::string& command) const {
        Json j;
        j["command"] = command;
        j["order"] = order_json(pr.order);
        j["symmetric"] = pr.symmetric;
        j["generators"] = generators_json(pr.gens);
        return j;
    }

    void emit(const Json& j) const { out << j.dump(2) << "\n"; }

    void human_header() const {
        out << "order: " << operad::describe(pr.order) << "\n";
    }
};

std::string provenance_text(const operad::Provenance& p, const Context& cx) {
    switch (p.kind) {
        case operad::Provenance::Kind::kInput:
            return "input " + std::to_string(p.input_index + 1);
        case operad::Provenance::Kind::kSPolynomial:
            return "S-polynomial of " + gname(p.left) + ", " + gname(p.right) + " at " + cx.str(*p.gamma);
        case operad::Provenance::Kind::kReinserted:
            return "reduction of " + gname(p.left);
    }
    return "";
}

Json provenance_json(const operad::Provenance& p, const Context& cx) {
    Json j;
    switch (p.kind) {
        case operad::Provenance::Kind::kInput:
            j["kind"] = "input";
            j["index"] = p.input_index + 1;
            break;
        case operad::Provenance::Kind::kSPolynomial:
            j["kind"] = "s-polynomial";
            j["pair"] = Json::array({gname(p.left), gname(p.right)});
            j["common_multiple"] = cx.str(*p.gamma);
            break;
        case operad::Provenance::Kind::kReinserted:
            j["kind"] = "reduction";
            j["of"] = gname(p.left);
            break;
    }
    return j;
}

operad::GroebnerBasis complete(const Context& cx) {
    operad::CompletionOptions co;
    co.degree_cap = cx.opts.cap > 0 ? cx.opts.cap : cx.pr.degree_cap;
    return operad::buchberger(cx.pr.shuffle_relations(), cx.order(), co);
}

void print_basis(const Context& cx, const operad::GroebnerBasis& gb) {
    cx.out << "degree cap: " << gb.degree_cap << "\n";
    cx.out << "complete up to cap: " << (gb.complete_up_to_cap ? "yes" : "no") << "\n";
    if (gb.truncated) {
        cx.out << "note: some elements exceed the degree cap\n";
    }
    cx.out << "basis (" << gb.elements.size() << " elements):\n";
    for (const auto& e : gb.elements) {
        cx.out << "  " << gname(e.id) << " = " << cx.str(e.element) << "\n";
    }
    cx.out << "provenance:\n";
    for (const auto& e : gb.elements) {
        cx.out << "  " << gname(e.id) << ": " << provenance_text(e.provenance, cx) << "\n";
    }
}

Json basis_json(const Context& cx, const operad::GroebnerBasis& gb) {
    Json arr = Json::array();
    for (const auto& e : gb.elements) {
        Json j;
        j["id"] = gname(e.id);
        j["element"] = cx.str(e.element);
        j["leading_term"] = cx.str(operad::leading_term(e.element, gb.order).first);
        j["arity"] = e.element.arity();
        j["provenance"] = provenance_json(e.provenance, cx);
        arr.push_back(std::move(j));
    }
    return arr;
}

int cmd_show(const Context& cx) {
    const auto rels = cx.pr.shuffle_relations();
    if (cx.opts.json) {
        Json j = cx.header("show");
        Json r = Json::array();
        for (const auto& e : cx.pr.relations) {
            r.push_back(cx.str(e));
        }
        j["relations"] = r;
        Json s = Json::array();
        for (const auto& e : rels) {
            s.push_back(cx.str(e));
        }
        j["shuffle_relations"] = s;
        cx.emit(j);
        return kExitOk;
    }
    cx.out << operad::print_presentation(cx.pr);
    if (cx.pr.symmetric) {
        cx.out << "# shuffle relations after symmetrization (" << rels.size() << "):\n";
        for (const auto& e : rels) {
            cx.out << "#   " << cx.str(e) << "\n";
        }
    }
    return kExitOk;
}

int cmd_complete(const Context& cx) {
    const auto gb = complete(cx);
    if (cx.opts.json) {
        Json j = cx.header("complete");
        j["degree_cap"] = gb.degree_cap;
        j["complete_up_to_cap"] = gb.complete_up_to_cap;
        j["truncated"] = gb.truncated;
        j["pairs_processed"] = gb.pairs_processed;
        j["basis"] = basis_json(cx, gb);
        cx.emit(j);
        return kExitOk;
    }
    cx.human_header();
    print_basis(cx, gb);
    return kExitOk;
}

Json witness_json(const Context& cx, const operad::GroebnerWitness& w) {
    Json j;
    j["pair"] = Json::array({w.i + 1, w.j + 1});
    j["common_multiple"] = cx.str(w.cm.gamma);
    j["s_polynomial"] = cx.str(w.s_polynomial);
    j["residue"] = cx.str(w.residue);
    return j;
}

void print_witness(const Context& cx, const std::vector<OperadElement>& G, const operad::GroebnerWitness& w) {
    cx.out << "witness: relations " << w.i + 1 << " and " << w.j + 1 << "\n";
    cx.out << "  " << w.i + 1 << ": " << cx.str(G[w.i]) << "\n";
    cx.out << "  " << w.j + 1 << ": " << cx.str(G[w.j]) << "\n";
    cx.out << "  common multiple: " << cx.str(w.cm.gamma) << "\n";
    cx.out << "  S-polynomial: " << cx.str(w.s_polynomial) << "\n";
    cx.out << "  residue: " << cx.str(w.residue) << "\n";
}

int cap_or_default(const Context& cx, const std::vector<OperadElement>& rels) {
    if (cx.opts.cap > 0) {
        return cx.opts.cap;
    }
    return cx.pr.degree_cap > 0 ? cx.pr.degree_cap : operad::default_degree_cap(rels);
}

int cmd_is_gb(const Context& cx) {
    const auto G = cx.pr.shuffle_relations();
    const int cap = cap_or_default(cx, G);
    const auto cert = operad::is_groebner(G, cx.order(), cap);
    if (cx.opts.json) {
        Json j = cx.header("is-gb");
        j["degree_cap"] = cap;
        j["relations"] = Json::array();
        for (const auto& g : G) {
            j["relations"].push_back(cx.str(g));
        }
        j["is_groebner"] = cert.is_groebner;
        j["pairs_checked"] = cert.checked.size();
        if (cert.witness) {
            j["witness"] = witness_json(cx, *cert.witness);
        }
        cx.emit(j);
    } else {
        cx.human_header();
        cx.out << "degree cap: " << cap << "\n";
        cx.out << "relations (" << G.size() << "):\n";
        for (std::size_t k = 0; k < G.size(); ++k) {
            cx.out << "  " << k + 1 << ": " << cx.str(G[k]) << "\n";
        }
        cx.out << "common multiples checked: " << cert.checked.size() << "\n";
        cx.out << "Groebner basis up to cap: " << (cert.is_groebner ? "yes" : "no") << "\n";
        if (cert.witness) {
            print_witness(cx, G, *cert.witness);
        }
    }
    return cert.is_groebner ? kExitOk : kExitNegative;
}

int cmd_is_pbw(const Context& cx) {
    const auto G = operad::autoreduce(cx.pr.shuffle_relations(), cx.order());
    const int cap = cap_or_default(cx, G);
    const auto cert = operad::pbw_certificate(G, cx.order(), cap);
    if (cx.opts.json) {
        Json j = cx.header("is-pbw");
        j["degree_cap"] = cap;
        j["relations"] = Json::array();
        for (const auto& g : G) {
            j["relations"].push_back(cx.str(g));
        }
        j["pbw"] = cert.certified;
        j["reason"] = cert.reason;
        if (cert.groebner) {
            j["pairs_checked"] = cert.groebner->checked.size();
            if (cert.groebner->witness) {
                j["witness"] = witness_json(cx, *cert.groebner->witness);
            }
        }
        cx.emit(j);
    } else {
        cx.human_header();
        cx.out << "degree cap: " << cap << "\n";
        cx.out << "relations (" << G.size() << "):\n";
        for (std::size_t k = 0; k < G.size(); ++k) {
            cx.out << "  " << k + 1 << ": " << cx.str(G[k]) << "\n";
        }
        if (cert.certified) {
            cx.out << "PBW: yes (quadratic Groebner basis, hence Koszul)\n";
            cx.out << "common multiples checked: " << cert.groebner->checked.size() << "\n";
        } else {
            cx.out << "PBW: no (" << cert.reason << ")\n";
            if (cert.groebner && cert.groebner->witness) {
                print_witness(cx, G, *cert.groebner->witness);
            }
        }
    }
    return cert.certified ? kExitOk : kExitNegative;
}

int cmd_nf(const Context& cx) {
    if (cx.opts.element.empty()) {
        throw UsageError("nf needs an ELEMENT argument");
    }
    OperadElement f;
    try {
        f = operad::parse_element(cx.opts.element, cx.pr.gens, cx.pr.symmetry ? &*cx.pr.symmetry : nullptr);
    } catch (const operad::ParseError& e) {
        throw UsageError("element:" + std::string(e.what()));
    }
    const auto gb = complete(cx);
    const auto r = operad::normal_form(f, gb.system());
    const int bound = operad::certified_arity(gb.degree_cap, cx.pr.gens);
    const bool reliable = bound == 0 || f.arity() <= bound;
    if (cx.opts.json) {
        Json j = cx.header("nf");
        j["degree_cap"] = gb.degree_cap;
        j["input"] = cx.str(f);
        j["normal_form"] = cx.str(r);
        j["reliable"] = reliable;
        cx.emit(j);
    } else {
        cx.human_header();
        cx.out << "degree cap: " << gb.degree_cap << "\n";
        cx.out << "input: " << cx.str(f) << "\n";
        cx.out << "normal form: " << cx.str(r) << "\n";
        if (!reliable) {
            cx.out << "note: arity " << f.arity() << " is above the arity " << bound << " certified by the cap\n";
        }
    }
    return kExitOk;
}

int cmd_dims(const Context& cx) {
    const auto gb = complete(cx);
    const int bound = operad::certified_arity(gb.degree_cap, cx.pr.gens);
    const int up_to = cx.opts.up_to > 0 ? cx.opts.up_to : std::min(bound, 6);
    if (up_to > bound) {
        throw UsageError("refusing arity " + std::to_string(up_to) + ": degree cap " +
                         std::to_string(gb.degree_cap) + " certifies dimensions only up to arity " +
                         std::to_string(bound) + " (raise --cap)");
    }
    const auto table = operad::dimensions(gb, cx.pr.gens, up_to, cx.opts.monomials);
    if (cx.opts.json) {
        Json j = cx.header("dims");
        j["degree_cap"] = gb.degree_cap;
        j["complete_up_to_cap"] = gb.complete_up_to_cap;
        j["certified_up_to"] = bound;
        j["dimensions"] = table.dims;
        if (cx.opts.monomials) {
            Json m = Json::object();
            for (int n = 1; n <= up_to; ++n) {
                Json list = Json::array();
                for (const auto& t : table.monomials[static_cast<std::size_t>(n - 1)]) {
                    list.push_back(cx.str(t));
                }
                m[std::to_string(n)] = list;
            }
            j["normal_monomials"] = m;
        }
        cx.emit(j);
    } else {
        cx.human_header();
        cx.out << "degree cap: " << gb.degree_cap << " (certifies arities up to " << bound << ")\n";
        cx.out << "basis size: " << gb.elements.size() << "\n";
        cx.out << "dimensions:";
        for (auto d : table.dims) {
            cx.out << " " << d;
        }
        cx.out << "\n";
        if (cx.opts.monomials) {
            for (int n = 1; n <= up_to; ++n) {
                cx.out << "arity " << n << ":\n";
                for (const auto& t : table.monomials[static_cast<std::size_t>(n - 1)]) {
                    cx.out << "  " << cx.str(t) << "\n";
                }
            }
        }
    }
    return kExitOk;
}

/// Non-default orders must pass the randomized admissibility suite first.
void gate_order(const Context& cx) {
    if (cx.pr.order.is_default()) {
        return;
    }
    const auto rep = operad::check_admissibility(cx.pr.order, cx.pr.gens, cx.opts.admissibility_trials, 1);
    if (!rep.admissible()) {
        const auto& v = *rep.violation;
        std::ostringstream msg;
        msg << "order " << operad::describe(cx.pr.order) << " is not admissible for these generators: ";
        if (v.kind == "arity") {
            msg << cx.str(v.lhs) << " and " << cx.str(v.rhs) << " violate arity dominance";
        } else {
            msg << cx.str(v.alpha) << " <= " << cx.str(v.alpha2) << " and " << cx.str(v.beta) << " <= "
                << cx.str(v.beta2) << ", but composing at slot " << v.shuffle.slot << " gives " << cx.str(v.lhs)
                << " vs " << cx.str(v.rhs) << " in the wrong order";
        }
        throw UsageError(msg.str());
    }
}

int run(const Options& opts, std::ostream& out, std::ostream& err) {
    Context cx{opts, operad::parse_presentation(read_file(opts.file)), out, err};
    apply_order_flags(opts, cx.pr.order);
    gate_order(cx);
    if (opts.command == "show") {
        return cmd_show(cx);
    }
    if (opts.command == "complete") {
        return cmd_complete(cx);
    }
    if (opts.command == "is-gb") {
        return cmd_is_gb(cx);
    }
    if (opts.command == "is-pbw") {
        return cmd_is_pbw(cx);
    }
    if (opts.command == "nf") {
        return cmd_nf(cx);
    }
    return cmd_dims(cx);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Groebner bases for operads: completion, normal forms, dimensions and PBW checks"};
    Options o;
    app.add_option("command", o.command, "complete | is-gb | nf | dims | is-pbw | show")
        ->required()
        ->check(CLI::IsMember({"complete", "is-gb", "nf", "dims", "is-pbw", "show"}));
    app.add_option("file", o.file, "presentation file")->required();
    app.add_option("element", o.element, "element for nf, e.g. 'mu(mu(1,2),3)'");
    app.add_option("--order", o.order, "monomial order")->check(CLI::IsMember({"path-lex", "forest-lex"}));
    app.add_option("--word-mode", o.word_mode, "path-lex word comparison")
        ->check(CLI::IsMember({"deglex", "lex", "revdeglex"}));
    app.add_option("--perm-mode", o.perm_mode, "path-lex permutation comparison")
        ->check(CLI::IsMember({"revlex", "lex"}));
    app.add_flag("--root-first", o.root_first, "forest-lex: compare root labels before leaf sets");
    app.add_option("--cap", o.cap, "degree cap (default: the file's cap line, else 2*max relation degree + 2)")->check(CLI::PositiveNumber);
    app.add_option("--up-to", o.up_to, "largest arity for dims")->check(CLI::PositiveNumber);
    app.add_flag("--json", o.json, "structured output");
    app.add_flag("--monomials", o.monomials, "dims: list normal monomials");
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }
    try {
        return run(o, std::cout, std::cerr);
    } catch (const operad::ParseError& e) {
        std::cerr << "error: " << o.file << ":" << e.what() << "\n";
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
    }
    return kExitUsage;
}
