#pragma once

#include <algorithm>
#include <deque>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "common_multiple.hpp"
#include "parallel.hpp"
#include "reduction.hpp"

namespace operad {

struct Provenance {
    enum class Kind { kInput, kSPolynomial, kReinserted };
    Kind kind = Kind::kInput;
    std::size_t input_index = 0;      // kInput: position in the interreduced input
    std::size_t left = 0;             // kSPolynomial: element ids of the pair; kReinserted: the replaced id
    std::size_t right = 0;
    std::optional<TreeMonomial> gamma;  // kSPolynomial: the common multiple

    static Provenance input(std::size_t k) { return Provenance{Kind::kInput, k, 0, 0, std::nullopt}; }
    static Provenance s_polynomial(std::size_t i, std::size_t j, TreeMonomial g) {
        return Provenance{Kind::kSPolynomial, 0, i, j, std::move(g)};
    }
    static Provenance reinserted(std::size_t id) { return Provenance{Kind::kReinserted, 0, id, 0, std::nullopt}; }
};

struct BasisElement {
    std::size_t id = 0;  // stable name g<id>
    OperadElement element;
    Provenance provenance;
};

struct GroebnerBasis {
    MonomialOrder order;
    std::vector<BasisElement> elements;
    int degree_cap = 0;
    bool complete_up_to_cap = false;
    bool truncated = false;  // some element has operation degree above the cap
    std::size_t pairs_processed = 0;

    [[nodiscard]] std::vector<OperadElement> relations() const {
        std::vector<OperadElement> out;
        out.reserve(elements.size());
        for (const auto& e : elements) {
            out.push_back(e.element);
        }
        return out;
    }
    [[nodiscard]] ReductionSystem system() const { return ReductionSystem(relations(), order); }
    [[nodiscard]] int max_op_degree() const {
        int d = 0;
        for (const auto& e : elements) {
            d = std::max(d, e.element.max_op_degree());
        }
        return d;
    }
};

struct CompletionOptions {
    int degree_cap = 0;  // 0 selects default_degree_cap
    bool reduced = true;
    std::size_t workers = 0;  // 0 selects default_worker_count
    std::size_t max_elements = 20000;
};

/// 2 * (largest operation degree among the relations) + 2.
inline int default_degree_cap(const std::vector<OperadElement>& rels) {
    int d = 0;
    for (const auto& r : rels) {
        d = std::max(d, r.max_op_degree());
    }
    return 2 * d + 2;
}

namespace detail {

inline void check_relations(const std::vector<OperadElement>& rels) {
    for (std::size_t k = 0; k < rels.size(); ++k) {
        if (rels[k].is_zero()) {
            throw std::invalid_argument("zero relation at position " + std::to_string(k + 1));
        }
    }
}

/// Removes elements whose leading term is divisible by another's, reinserting
/// their residues, then reduces every tail. Survivors keep id and provenance.
inline std::vector<BasisElement> interreduce(std::vector<BasisElement> input, const MonomialOrder& order) {
    std::deque<BasisElement> queue(std::make_move_iterator(input.begin()), std::make_move_iterator(input.end()));
    std::vector<BasisElement> result;
    auto system_of = [&](const std::vector<BasisElement>& es, std::size_t skip) {
        ReductionSystem sys({}, order);
        for (std::size_t k = 0; k < es.size(); ++k) {
            if (k != skip) {
                sys.add(es[k].element);
            }
        }
        return sys;
    };
    while (!queue.empty()) {
        BasisElement f = std::move(queue.front());
        queue.pop_front();
        auto h = normal_form(f.element, system_of(result, result.size()));
        if (h.is_zero()) {
            continue;
        }
        h = make_monic(std::move(h), order);
        const auto lt = leading_term(h, order).first;
        std::vector<BasisElement> kept;
        for (auto& e : result) {
            if (divides(lt, leading_term(e.element, order).first)) {
                queue.push_back(std::move(e));
            } else {
                kept.push_back(std::move(e));
            }
        }
        result = std::move(kept);
        f.element = std::move(h);
        result.push_back(std::move(f));
    }
    for (std::size_t k = 0; k < result.size(); ++k) {
        result[k].element = normal_form(result[k].element, system_of(result, k));
    }
    return result;
}

struct PairTask {
    int op_degree = 0;
    std::size_t i = 0;
    std::size_t j = 0;
    std::vector<std::int32_t> gamma_key;
    CommonMultiple cm;

    [[nodiscard]] auto key() const {
        return std::tie(op_degree, i, j, gamma_key, cm.emb_f.vertex_map, cm.emb_g.vertex_map);
    }
    friend bool operator<(const PairTask& a, const PairTask& b) { return a.key() < b.key(); }
};

class Completion {
public:
    Completion(const MonomialOrder& order, const CompletionOptions& opts, int cap)
        : order_(order), opts_(opts), cap_(cap) {
        workers_ = opts.workers == 0 ? default_worker_count() : opts.workers;
    }

    GroebnerBasis run(const std::vector<OperadElement>& K) {
        std::vector<BasisElement> in;
        for (std::size_t k = 0; k < K.size(); ++k) {
            in.push_back(BasisElement{0, K[k], Provenance::input(k)});
        }
        auto reduced = interreduce(std::move(in), order_);
        std::stable_sort(reduced.begin(), reduced.end(), [&](const BasisElement& a, const BasisElement& b) {
            if (a.element.arity() != b.element.arity()) {
                return a.element.arity() < b.element.arity();
            }
            return compare(order_, leading_term(a.element, order_).first, leading_term(b.element, order_).first) > 0;
        });
        for (std::size_t k = 0; k < reduced.size(); ++k) {
            reduced[k].provenance.input_index = k;
            insert(std::move(reduced[k].element), reduced[k].provenance);
        }
        bool complete = true;
        while (!queue_.empty()) {
            if (alive_.size() > opts_.max_elements) {
                complete = false;
                break;
            }
            process_batch();
        }
        if (opts_.reduced) {
            alive_ = interreduce(std::move(alive_), order_);
            std::sort(alive_.begin(), alive_.end(),
                      [](const BasisElement& a, const BasisElement& b) { return a.id < b.id; });
        }
        GroebnerBasis gb;
        gb.order = order_;
        gb.elements = std::move(alive_);
        gb.degree_cap = cap_;
        gb.complete_up_to_cap = complete;
        gb.truncated = truncated_;
        gb.pairs_processed = processed_;
        return gb;
    }

private:
    [[nodiscard]] ReductionSystem current_system() const {
        ReductionSystem sys({}, order_);
        for (const auto& e : alive_) {
            sys.add(e.element);
        }
        return sys;
    }

    [[nodiscard]] const BasisElement* find(std::size_t id) const {
        for (const auto& e : alive_) {
            if (e.id == id) {
                return &e;
            }
        }
        return nullptr;
    }

    void insert(OperadElement h, Provenance prov) {
        h = make_monic(std::move(h), order_);
        const auto lt = leading_term(h, order_).first;
        std::vector<BasisElement> victims;
        if (opts_.reduced) {
            std::vector<BasisElement> kept;
            for (auto& e : alive_) {
                if (divides(lt, leading_term(e.element, order_).first)) {
                    victims.push_back(std::move(e));
                } else {
                    kept.push_back(std::move(e));
                }
            }
            alive_ = std::move(kept);
        }
        const std::size_t id = ++next_id_;
        if (h.max_op_degree() > cap_) {
            truncated_ = true;
        }
        alive_.push_back(BasisElement{id, std::move(h), std::move(prov)});
        const auto& me = alive_.back();
        for (const auto& e : alive_) {
            const auto lte = leading_term(e.element, order_).first;
            for (auto& cm : small_common_multiples(lte, lt)) {
                if (cm.gamma.op_degree() > cap_) {
                    continue;
                }
                PairTask t;
                t.op_degree = cm.gamma.op_degree();
                t.i = e.id;
                t.j = me.id;
                t.gamma_key = order_key(order_, cm.gamma);
                t.cm = std::move(cm);
                queue_.insert(std::move(t));
            }
        }
        for (auto& v : victims) {
            auto g = normal_form(v.element, current_system());
            if (!g.is_zero()) {
                insert(std::move(g), Provenance::reinserted(v.id));
            }
        }
    }

    void process_batch() {
        const int degree = queue_.begin()->op_degree;
        std::vector<PairTask> batch;
        while (!queue_.empty() && queue_.begin()->op_degree == degree) {
            auto node = queue_.extract(queue_.begin());
            if (find(node.value().i) != nullptr && find(node.value().j) != nullptr) {
                batch.push_back(std::move(node.value()));
            }
        }
        const auto snapshot = current_system();
        const std::size_t snapshot_next = next_id_;
        std::vector<OperadElement> results(batch.size());
        std::vector<const OperadElement*> lhs(batch.size());
        std::vector<const OperadElement*> rhs(batch.size());
        for (std::size_t k = 0; k < batch.size(); ++k) {
            lhs[k] = &find(batch[k].i)->element;
            rhs[k] = &find(batch[k].j)->element;
        }
        parallel_for(
            batch.size(),
            [&](std::size_t k) {
                results[k] = normal_form(s_polynomial(*lhs[k], *rhs[k], batch[k].cm, order_), snapshot);
            },
            workers_);
        for (std::size_t k = 0; k < batch.size(); ++k) {
            ++processed_;
            if (results[k].is_zero() || find(batch[k].i) == nullptr || find(batch[k].j) == nullptr) {
                continue;
            }
            auto h = next_id_ == snapshot_next ? std::move(results[k]) : normal_form(results[k], current_system());
            if (!h.is_zero()) {
                insert(std::move(h), Provenance::s_polynomial(batch[k].i, batch[k].j, batch[k].cm.gamma));
            }
        }
    }

    MonomialOrder order_;
    CompletionOptions opts_;
    int cap_;
    std::size_t workers_ = 1;
    std::vector<BasisElement> alive_;
    std::set<PairTask> queue_;
    std::size_t next_id_ = 0;
    std::size_t processed_ = 0;
    bool truncated_ = false;
};

}  // namespace detail

/// Buchberger completion: adjoins residues of S-polynomials until every pair
/// with a common multiple of operation degree at most the cap reduces to zero.
inline GroebnerBasis buchberger(const std::vector<OperadElement>& K, const MonomialOrder& order,
                                CompletionOptions opts = {}) {
    detail::check_relations(K);
    const int cap = opts.degree_cap > 0 ? opts.degree_cap : default_degree_cap(K);
    return detail::Completion(order, opts, cap).run(K);
}

/// Reduced form of a basis: pairwise non-divisible leading terms, fully
/// reduced tails, monic. Surviving elements keep their ids.
inline GroebnerBasis autoreduce(GroebnerBasis G) {
    G.elements = detail::interreduce(std::move(G.elements), G.order);
    std::sort(G.elements.begin(), G.elements.end(),
              [](const BasisElement& a, const BasisElement& b) { return a.id < b.id; });
    return G;
}

/// Interreduced list of relations, in input order of survivors.
inline std::vector<OperadElement> autoreduce(const std::vector<OperadElement>& rels, const MonomialOrder& order) {
    detail::check_relations(rels);
    std::vector<BasisElement> in;
    for (std::size_t k = 0; k < rels.size(); ++k) {
        in.push_back(BasisElement{k, rels[k], Provenance::input(k)});
    }
    auto out = detail::interreduce(std::move(in), order);
    std::sort(out.begin(), out.end(), [](const BasisElement& a, const BasisElement& b) { return a.id < b.id; });
    std::vector<OperadElement> res;
    for (auto& e : out) {
        res.push_back(std::move(e.element));
    }
    return res;
}

struct CheckedPair {
    std::size_t i = 0;  // indices into the checked list
    std::size_t j = 0;
    TreeMonomial gamma;
    bool reduces_to_zero = true;
};

struct GroebnerWitness {
    std::size_t i = 0;
    std::size_t j = 0;
    CommonMultiple cm;
    OperadElement s_polynomial;
    OperadElement residue;
};

struct GroebnerCertificate {
    bool is_groebner = true;
    int degree_cap = 0;
    std::vector<CheckedPair> checked;
    std::optional<GroebnerWitness> witness;  // first nonzero residue in checking order
};

/// Diamond-lemma test: every S-polynomial of every pair (i <= j), at every
/// small common multiple of operation degree at most the cap, reduces to zero.
inline GroebnerCertificate is_groebner(const std::vector<OperadElement>& G, const MonomialOrder& order,
                                       int degree_cap, std::size_t workers = 0) {
    detail::check_relations(G);
    if (workers == 0) {
        workers = default_worker_count();
    }
    GroebnerCertificate cert;
    cert.degree_cap = degree_cap;
    const ReductionSystem sys(G, order);
    struct Job {
        std::size_t i, j;
        CommonMultiple cm;
    };
    std::vector<Job> jobs;
    for (std::size_t i = 0; i < G.size(); ++i) {
        for (std::size_t j = i; j < G.size(); ++j) {
            const auto& a = sys.entries()[i].lead;
            const auto& b = sys.entries()[j].lead;
            // distinct elements with equal leading terms need every overlap
            auto cms = (i != j && a == b) ? all_small_common_multiples(a, b) : small_common_multiples(a, b);
            for (auto& cm : cms) {
                if (cm.gamma.op_degree() <= degree_cap) {
                    jobs.push_back(Job{i, j, std::move(cm)});
                }
            }
        }
    }
    constexpr std::size_t kChunk = 64;
    for (std::size_t start = 0; start < jobs.size(); start += kChunk) {
        const std::size_t n = std::min(kChunk, jobs.size() - start);
        std::vector<OperadElement> s(n);
        std::vector<OperadElement> r(n);
        parallel_for(
            n,
            [&](std::size_t k) {
                const auto& job = jobs[start + k];
                s[k] = s_polynomial(G[job.i], G[job.j], job.cm, order);
                r[k] = normal_form(s[k], sys);
            },
            workers);
        for (std::size_t k = 0; k < n; ++k) {
            const auto& job = jobs[start + k];
            const bool zero = r[k].is_zero();
            cert.checked.push_back(CheckedPair{job.i, job.j, job.cm.gamma, zero});
            if (!zero) {
                cert.is_groebner = false;
                cert.witness = GroebnerWitness{job.i, job.j, job.cm, std::move(s[k]), std::move(r[k])};
                return cert;
            }
        }
    }
    return cert;
}

}  // namespace operad
