// Copyright 2026 The lpcsp Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Instantiation of validated rule programs. Domain predicates are evaluated
// to a fixpoint first; every other rule is then joined over the domain
// atoms of its body, in body order, with extensions in lexicographic order.
// Built-ins are checked as soon as their variables are bound. Colon
// elements expand over their guards. Domain atoms and facts are absorbed.

#ifndef LPCSP_GROUND_GROUNDER_HPP
#define LPCSP_GROUND_GROUNDER_HPP

#include <lpcsp/ground/program.hpp>
#include <lpcsp/lp/ast.hpp>

#include <functional>

namespace lpcsp::ground {

using Substitution = std::map<std::string, Value>;

inline Value eval_term(const lp::Term& t, const Substitution& s) {
    if (auto v = std::get_if<lp::Variable>(&t.node)) {
        auto it = s.find(v->name);
        if (it == s.end()) throw StructuralError("unbound variable " + v->name);
        return it->second;
    }
    if (auto c = std::get_if<lp::IntConst>(&t.node)) return c->value;
    const auto& e = std::get<lp::ArithExpr>(t.node);
    switch (e.op) {
    case lp::ArithOp::abs: return checked::abs(eval_term(e.args.at(0), s));
    case lp::ArithOp::add: return checked::add(eval_term(e.args.at(0), s), eval_term(e.args.at(1), s));
    case lp::ArithOp::sub: return checked::sub(eval_term(e.args.at(0), s), eval_term(e.args.at(1), s));
    }
    return 0;
}

inline bool eval_builtin(lp::Rel rel, const lp::Term& lhs, const lp::Term& rhs, const Substitution& s = {}) {
    const Value a = eval_term(lhs, s), b = eval_term(rhs, s);
    switch (rel) {
    case lp::Rel::lt: return a < b;
    case lp::Rel::le: return a <= b;
    case lp::Rel::eq: return a == b;
    case lp::Rel::ne: return a != b;
    }
    return false;
}

struct GroundStats {
    std::size_t substitutions = 0;  // body matches before element expansion
    std::size_t rules = 0;          // ground rules emitted
    std::size_t atoms = 0;
    std::size_t facts = 0;
    double ms = 0;
};

struct GroundResult {
    GroundProgram program;
    GroundStats stats;
    std::vector<std::string> warnings;
};

namespace detail {

using Tuple = std::vector<Value>;

struct Extension {
    std::vector<Tuple> tuples;  // sorted
    std::set<Tuple> members;
    std::map<Value, std::vector<std::size_t>> by_first;

    void rebuild() {
        tuples.assign(members.begin(), members.end());
        by_first.clear();
        for (std::size_t i = 0; i < tuples.size(); ++i)
            if (!tuples[i].empty()) by_first[tuples[i][0]].push_back(i);
    }
};

inline bool vars_bound(const lp::Term& t, const Substitution& s) {
    std::set<std::string> vs;
    lp::collect_vars(t, vs);
    for (const auto& v : vs)
        if (!s.count(v)) return false;
    return true;
}

inline bool vars_bound(const lp::Literal& l, const Substitution& s) {
    std::set<std::string> vs;
    lp::collect_vars(l, vs);
    for (const auto& v : vs)
        if (!s.count(v)) return false;
    return true;
}

class Grounder {
public:
    explicit Grounder(const lp::Program& p) : prog_(p) {}

    GroundResult run() {
        Stopwatch clock;
        domains();
        for (const auto& r : prog_.rules) {
            if (std::holds_alternative<lp::Fact>(r.node) || std::holds_alternative<lp::DomainDecl>(r.node)) continue;
            visit_body_atoms(r, [&](const lp::Atom& a, bool negated) {
                if (!negated && is_domain(a.pred) && ext_[a.pred].tuples.empty()) warned_.insert(a.pred);
            });
        }
        GroundResult out;
        gp_ = &out.program;
        // Domain atoms first, predicates in order of first appearance.
        for (const auto& pred : pred_order_) {
            if (!prog_.domain_preds.count(pred)) continue;
            for (const auto& t : ext_[pred].tuples) gp_->add_fact(gp_->atom(pred, t));
        }
        for (const auto& r : prog_.rules)
            if (auto f = std::get_if<lp::Fact>(&r.node); f && !is_domain(f->atom.pred)) {
                GroundAtom a = instantiate(f->atom, {});
                facts_.insert(a);
                gp_->add_fact(gp_->atoms.intern(a));
            }
        for (const auto& r : prog_.rules) rule(r);
        for (const auto& w : warned_) out.warnings.push_back("domain predicate " + w + " has an empty extension; rules using it vanish");
        out.stats = stats_;
        out.stats.rules = out.program.rules.size();
        out.stats.atoms = out.program.atoms.size();
        out.stats.facts = out.program.facts.size();
        out.stats.ms = clock.elapsed_ms();
        return out;
    }

private:
    bool is_domain(const std::string& pred) const { return prog_.domain_preds.count(pred) > 0; }

    GroundAtom instantiate(const lp::Atom& a, const Substitution& s) const {
        GroundAtom g{a.pred, {}};
        for (const auto& t : a.args) g.args.push_back(eval_term(t, s));
        return g;
    }

    bool holds_domain(const GroundAtom& a) const {
        auto it = ext_.find(a.pred);
        return it != ext_.end() && it->second.members.count(a.args) > 0;
    }

    void note_order(const std::string& pred) {
        if (std::find(pred_order_.begin(), pred_order_.end(), pred) == pred_order_.end()) pred_order_.push_back(pred);
    }

    // Fixpoint over domain-defining rules.
    void domains() {
        for (const auto& r : prog_.rules) {
            if (auto d = std::get_if<lp::DomainDecl>(&r.node)) note_order(d->pred);
            visit_atoms(r, [&](const lp::Atom& a) { note_order(a.pred); });
        }
        for (const auto& pred : prog_.domain_preds) ext_[pred];
        for (const auto& r : prog_.rules) {
            if (auto d = std::get_if<lp::DomainDecl>(&r.node)) {
                for (Value v = d->low; v <= d->high; ++v) {
                    ext_[d->pred].members.insert({v});
                    if (v == INT64_MAX) break;
                }
            } else if (auto f = std::get_if<lp::Fact>(&r.node); f && is_domain(f->atom.pred)) {
                ext_[f->atom.pred].members.insert(instantiate(f->atom, {}).args);
            }
        }
        for (auto& [_, e] : ext_) e.rebuild();
        for (bool changed = true; changed;) {
            changed = false;
            for (const auto& r : prog_.rules) {
                auto n = std::get_if<lp::NormalRule>(&r.node);
                if (!n || !is_domain(n->head.pred)) continue;
                std::vector<Tuple> found;
                Substitution s;
                join(n->body, s, [&](const Substitution& full) { found.push_back(instantiate(n->head, full).args); });
                auto& e = ext_[n->head.pred];
                bool grew = false;
                for (auto& t : found) grew |= e.members.insert(std::move(t)).second;
                if (grew) {
                    e.rebuild();
                    changed = true;
                }
            }
        }
    }

    template <class F>
    static void visit_atoms(const lp::Rule& r, F&& f) {
        auto lits = [&](const std::vector<lp::Literal>& b) {
            for (const auto& l : b)
                if (l.is_atom()) f(l.atom());
        };
        std::visit(
            [&](const auto& n) {
                using N = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<N, lp::Fact>) f(n.atom);
                else if constexpr (std::is_same_v<N, lp::NormalRule>) {
                    f(n.head);
                    lits(n.body);
                } else if constexpr (std::is_same_v<N, lp::ChoiceRule>) {
                    for (const auto& e : n.elements) {
                        f(e.atom);
                        for (const auto& g : e.guards) f(g);
                    }
                    lits(n.body);
                } else if constexpr (std::is_same_v<N, lp::IntegrityConstraint>) {
                    lits(n.body);
                } else if constexpr (std::is_same_v<N, lp::AggregateRule>) {
                    if (n.head) f(*n.head);
                    for (const auto& e : n.elements) {
                        f(e.literal.atom());
                        for (const auto& g : e.guards) f(g);
                    }
                    lits(n.body);
                }
            },
            r.node);
    }

    // Positive and negative body literals plus guards.
    template <class F>
    static void visit_body_atoms(const lp::Rule& r, F&& f) {
        auto lits = [&](const std::vector<lp::Literal>& b) {
            for (const auto& l : b)
                if (l.is_atom()) f(l.atom(), l.negated);
        };
        std::visit(
            [&](const auto& n) {
                using N = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<N, lp::ChoiceRule>) {
                    for (const auto& e : n.elements)
                        for (const auto& g : e.guards) f(g, false);
                } else if constexpr (std::is_same_v<N, lp::AggregateRule>) {
                    for (const auto& e : n.elements)
                        for (const auto& g : e.guards) f(g, false);
                }
                if constexpr (!std::is_same_v<N, lp::Fact> && !std::is_same_v<N, lp::DomainDecl>) lits(n.body);
            },
            r.node);
    }

    // Enumerates substitutions extending `s` that satisfy every positive
    // domain atom, negated domain atom and built-in in `lits`. Other
    // literals are ignored here.
    void join(const std::vector<lp::Literal>& lits, Substitution& s,
              const std::function<void(const Substitution&)>& emit) {
        std::vector<const lp::Literal*> gens, tests;
        for (const auto& l : lits) {
            if (l.is_atom()) {
                if (!is_domain(l.atom().pred)) continue;
                (l.negated ? tests : gens).push_back(&l);
            } else {
                tests.push_back(&l);
            }
        }
        std::vector<char> used(gens.size(), 0), tested(tests.size(), 0);
        step(gens, used, tests, tested, s, emit);
    }

    void step(const std::vector<const lp::Literal*>& gens, std::vector<char>& used,
              const std::vector<const lp::Literal*>& tests, std::vector<char>& tested, Substitution& s,
              const std::function<void(const Substitution&)>& emit) {
        std::vector<std::size_t> newly;
        bool ok = true;
        for (std::size_t i = 0; i < tests.size() && ok; ++i) {
            if (tested[i] || !vars_bound(*tests[i], s)) continue;
            tested[i] = 1;
            newly.push_back(i);
            const lp::Literal& l = *tests[i];
            if (l.is_atom()) ok = !holds_domain(instantiate(l.atom(), s));
            else ok = eval_builtin(l.builtin().rel, l.builtin().lhs, l.builtin().rhs, s);
        }
        if (ok) {
            std::optional<std::size_t> next;
            for (std::size_t i = 0; i < gens.size() && !next; ++i) {
                if (used[i]) continue;
                bool ready = true;
                for (const auto& t : gens[i]->atom().args)
                    if (!std::holds_alternative<lp::Variable>(t.node) && !vars_bound(t, s)) ready = false;
                if (ready) next = i;
            }
            if (!next) {
                bool all = std::all_of(used.begin(), used.end(), [](char c) { return c != 0; });
                if (all) {
                    ++stats_.substitutions;
                    emit(s);
                }
            } else {
                used[*next] = 1;
                match(*gens[*next], gens, used, tests, tested, s, emit);
                used[*next] = 0;
            }
        }
        for (std::size_t i : newly) tested[i] = 0;
    }

    void match(const lp::Literal& lit, const std::vector<const lp::Literal*>& gens, std::vector<char>& used,
               const std::vector<const lp::Literal*>& tests, std::vector<char>& tested, Substitution& s,
               const std::function<void(const Substitution&)>& emit) {
        const lp::Atom& a = lit.atom();
        const Extension& e = ext_[a.pred];
        auto try_tuple = [&](const Tuple& t) {
            std::vector<std::string> bound_here;
            bool ok = t.size() == a.args.size();
            for (std::size_t k = 0; k < a.args.size() && ok; ++k) {
                const auto& term = a.args[k];
                if (auto v = std::get_if<lp::Variable>(&term.node)) {
                    auto it = s.find(v->name);
                    if (it == s.end()) {
                        s.emplace(v->name, t[k]);
                        bound_here.push_back(v->name);
                    } else if (it->second != t[k]) {
                        ok = false;
                    }
                } else if (eval_term(term, s) != t[k]) {
                    ok = false;
                }
            }
            if (ok) step(gens, used, tests, tested, s, emit);
            for (const auto& v : bound_here) s.erase(v);
        };
        if (!a.args.empty() && vars_bound(a.args[0], s)) {
            auto it = e.by_first.find(eval_term(a.args[0], s));
            if (it == e.by_first.end()) return;
            for (std::size_t idx : it->second) try_tuple(e.tuples[idx]);
        } else {
            for (const auto& t : e.tuples) try_tuple(t);
        }
    }

    // Splits non-domain body literals into pos/neg ids; false if a negated
    // fact kills the instance.
    bool body_ids(const std::vector<lp::Literal>& body, const Substitution& s, std::vector<AtomId>& pos,
                  std::vector<AtomId>& neg) {
        for (const auto& l : body) {
            if (!l.is_atom() || is_domain(l.atom().pred)) continue;
            GroundAtom a = instantiate(l.atom(), s);
            const bool fact = facts_.count(a) > 0;
            if (l.negated) {
                if (fact) return false;
                neg.push_back(gp_->atoms.intern(a));
            } else if (!fact) {
                pos.push_back(gp_->atoms.intern(a));
            }
        }
        return true;
    }

    void expand(const std::vector<lp::Atom>& guards, Substitution s, const std::function<void(const Substitution&)>& f) {
        std::vector<lp::Literal> lits;
        for (const auto& g : guards) lits.push_back(lp::Literal{g, false});
        join(lits, s, f);
    }

    void rule(const lp::Rule& r) {
        std::visit(
            [&](const auto& n) {
                using N = std::decay_t<decltype(n)>;
                Substitution s;
                if constexpr (std::is_same_v<N, lp::NormalRule>) {
                    if (is_domain(n.head.pred)) return;
                    join(n.body, s, [&](const Substitution& full) {
                        std::vector<AtomId> pos, neg;
                        if (!body_ids(n.body, full, pos, neg)) return;
                        gp_->add_normal(gp_->atoms.intern(instantiate(n.head, full)), pos, neg);
                    });
                } else if constexpr (std::is_same_v<N, lp::IntegrityConstraint>) {
                    join(n.body, s, [&](const Substitution& full) {
                        std::vector<AtomId> pos, neg;
                        if (!body_ids(n.body, full, pos, neg)) return;
                        gp_->add_constraint(pos, neg);
                    });
                } else if constexpr (std::is_same_v<N, lp::ChoiceRule>) {
                    join(n.body, s, [&](const Substitution& full) {
                        std::vector<AtomId> pos, neg;
                        if (!body_ids(n.body, full, pos, neg)) return;
                        std::vector<AtomId> heads;
                        for (const auto& e : n.elements)
                            expand(e.guards, full, [&](const Substitution& el) {
                                heads.push_back(gp_->atoms.intern(instantiate(e.atom, el)));
                            });
                        std::vector<AtomId> distinct = heads;
                        std::sort(distinct.begin(), distinct.end());
                        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
                        const Value lo = n.lower.value_or(0);
                        const Value hi = n.upper.value_or(static_cast<Value>(distinct.size()));
                        gp_->add_choice(lo, heads, std::max(hi, lo), pos, neg);
                    });
                } else if constexpr (std::is_same_v<N, lp::AggregateRule>) {
                    join(n.body, s, [&](const Substitution& full) { aggregate(n, full); });
                }
            },
            r.node);
    }

    void aggregate(const lp::AggregateRule& n, const Substitution& s) {
        Value fixed = 0;  // weight of elements known true
        std::vector<WeightLiteral> lits;
        for (const auto& e : n.elements) {
            expand(e.guards, s, [&](const Substitution& el) {
                Value w = 1;
                if (n.kind == lp::AggKind::sum) {
                    w = e.weight ? eval_term(*e.weight, el) : 1;
                    if (w < 0) throw StructuralError("negative weight in #sum");
                }
                GroundAtom a = instantiate(e.literal.atom(), el);
                const bool pos = !e.literal.negated;
                std::optional<bool> known;
                if (is_domain(a.pred)) known = holds_domain(a);
                else if (facts_.count(a)) known = true;
                if (known) {
                    if (*known == pos) fixed = checked::add(fixed, w);
                    return;
                }
                lits.push_back({gp_->atoms.intern(a), pos, w});
            });
        }
        const Value bound = eval_term(n.bound, s);
        Value lower;
        if (n.rel == lp::AggRel::at_least) {
            lower = checked::sub(bound, fixed);
        } else {
            // sum <= t  iff  sum of flipped literals >= W - (t - fixed)
            Value total = 0;
            for (auto& l : lits) {
                total = checked::add(total, l.weight);
                l.positive = !l.positive;
            }
            lower = checked::sub(total, checked::sub(bound, fixed));
        }
        std::optional<AtomId> head;
        if (n.head) head = gp_->atoms.intern(instantiate(*n.head, s));
        gp_->add_weight(head, lower, lits);
    }

    const lp::Program& prog_;
    std::map<std::string, Extension> ext_;
    std::vector<std::string> pred_order_;
    std::set<GroundAtom> facts_;
    std::set<std::string> warned_;
    GroundProgram* gp_ = nullptr;
    GroundStats stats_;
};

} // namespace detail

/// Grounds a validated program (see lp::validate).
inline GroundResult ground(const lp::Program& program) { return detail::Grounder(program).run(); }

} // namespace lpcsp::ground

#endif // LPCSP_GROUND_GROUNDER_HPP
