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
// Reference grounder: every rule variable ranges over the whole universe
// of constants, non-domain atoms stay in bodies, and domain atoms are
// emitted as facts. Only built-ins and guards are evaluated. Heads must not
// contain arithmetic.

#ifndef LPCSP_TESTS_NAIVE_GROUNDER_HPP
#define LPCSP_TESTS_NAIVE_GROUNDER_HPP

#include <lpcsp/ground/grounder.hpp>

namespace oracle {

namespace naive {

using lpcsp::Value;
using lpcsp::ground::AtomId;
using lpcsp::ground::GroundAtom;
using lpcsp::ground::GroundProgram;
using Subst = lpcsp::ground::Substitution;

inline void constants(const lpcsp::lp::Term& t, std::set<Value>& out) {
    if (auto c = std::get_if<lpcsp::lp::IntConst>(&t.node)) out.insert(c->value);
    if (auto e = std::get_if<lpcsp::lp::ArithExpr>(&t.node))
        for (const auto& a : e->args) constants(a, out);
}

class Naive {
public:
    explicit Naive(const lpcsp::lp::Program& p) : p_(p) {}

    GroundProgram run() {
        universe();
        domains();
        for (const auto& [pred, tuples] : ext_)
            for (const auto& t : tuples) gp_.add_fact(gp_.atom(pred, t));
        for (const auto& r : p_.rules) rule(r);
        return std::move(gp_);
    }

private:
    const lpcsp::lp::Program& p_;
    std::vector<Value> u_;
    std::map<std::string, std::set<std::vector<Value>>> ext_;
    GroundProgram gp_;

    bool domain(const std::string& pred) const { return p_.domain_preds.count(pred) > 0; }

    void universe() {
        std::set<Value> u;
        auto atom = [&](const lpcsp::lp::Atom& a) {
            for (const auto& t : a.args) constants(t, u);
        };
        auto lits = [&](const std::vector<lpcsp::lp::Literal>& body) {
            for (const auto& l : body) {
                if (l.is_atom()) atom(l.atom());
                else {
                    constants(l.builtin().lhs, u);
                    constants(l.builtin().rhs, u);
                }
            }
        };
        for (const auto& r : p_.rules) {
            std::visit(
                [&](const auto& n) {
                    using N = std::decay_t<decltype(n)>;
                    if constexpr (std::is_same_v<N, lpcsp::lp::DomainDecl>) {
                        for (Value v = n.low; v <= n.high; ++v) u.insert(v);
                    } else if constexpr (std::is_same_v<N, lpcsp::lp::Fact>) {
                        atom(n.atom);
                    } else if constexpr (std::is_same_v<N, lpcsp::lp::NormalRule>) {
                        atom(n.head);
                        lits(n.body);
                    } else if constexpr (std::is_same_v<N, lpcsp::lp::ChoiceRule>) {
                        for (const auto& e : n.elements) {
                            atom(e.atom);
                            for (const auto& g : e.guards) atom(g);
                        }
                        lits(n.body);
                    } else if constexpr (std::is_same_v<N, lpcsp::lp::IntegrityConstraint>) {
                        lits(n.body);
                    } else {
                        if (n.head) atom(*n.head);
                        for (const auto& e : n.elements) {
                            lits({e.literal});
                            for (const auto& g : e.guards) atom(g);
                        }
                        lits(n.body);
                    }
                },
                r.node);
        }
        u_.assign(u.begin(), u.end());
    }

    GroundAtom inst(const lpcsp::lp::Atom& a, const Subst& s) const {
        GroundAtom g{a.pred, {}};
        for (const auto& t : a.args) g.args.push_back(lpcsp::ground::eval_term(t, s));
        return g;
    }

    // Calls f for every extension of s to the variables in vars.
    void each(const std::vector<std::string>& vars, std::size_t i, Subst& s, const std::function<void(Subst&)>& f) {
        if (i == vars.size()) {
            f(s);
            return;
        }
        if (s.count(vars[i])) {
            each(vars, i + 1, s, f);
            return;
        }
        for (Value v : u_) {
            s[vars[i]] = v;
            each(vars, i + 1, s, f);
        }
        s.erase(vars[i]);
    }

    bool in_domain(const GroundAtom& a) const {
        auto it = ext_.find(a.pred);
        return it != ext_.end() && it->second.count(a.args) > 0;
    }

    // Evaluates domain literals and built-ins; other atoms go to pos/neg.
    bool body(const std::vector<lpcsp::lp::Literal>& lits, const Subst& s, std::vector<AtomId>* pos,
              std::vector<AtomId>* neg) {
        for (const auto& l : lits) {
            if (!l.is_atom()) {
                const auto& b = l.builtin();
                if (!lpcsp::ground::eval_builtin(b.rel, b.lhs, b.rhs, s)) return false;
                continue;
            }
            GroundAtom a = inst(l.atom(), s);
            if (domain(a.pred)) {
                if (in_domain(a) == l.negated) return false;
                continue;
            }
            if (!pos) return false;
            (l.negated ? neg : pos)->push_back(gp_.atoms.intern(a));
        }
        return true;
    }

    static std::vector<std::string> vars_of(const std::vector<lpcsp::lp::Literal>& lits) {
        std::set<std::string> vs;
        for (const auto& l : lits) lpcsp::lp::collect_vars(l, vs);
        return {vs.begin(), vs.end()};
    }

    void domains() {
        for (bool changed = true; changed;) {
            changed = false;
            for (const auto& r : p_.rules) {
                if (auto d = std::get_if<lpcsp::lp::DomainDecl>(&r.node)) {
                    for (Value v = d->low; v <= d->high; ++v) changed |= ext_[d->pred].insert({v}).second;
                } else if (auto f = std::get_if<lpcsp::lp::Fact>(&r.node); f && domain(f->atom.pred)) {
                    changed |= ext_[f->atom.pred].insert(inst(f->atom, {}).args).second;
                } else if (auto n = std::get_if<lpcsp::lp::NormalRule>(&r.node); n && domain(n->head.pred)) {
                    Subst s;
                    each(vars_of(n->body), 0, s, [&](Subst& full) {
                        if (body(n->body, full, nullptr, nullptr))
                            changed |= ext_[n->head.pred].insert(inst(n->head, full).args).second;
                    });
                }
            }
        }
    }

    void expand(const std::vector<lpcsp::lp::Atom>& guards, const std::set<std::string>& extra, Subst& s,
                const std::function<void(Subst&)>& f) {
        std::set<std::string> vs = extra;
        for (const auto& g : guards) lpcsp::lp::collect_vars(g, vs);
        each({vs.begin(), vs.end()}, 0, s, [&](Subst& full) {
            for (const auto& g : guards)
                if (!in_domain(inst(g, full))) return;
            f(full);
        });
    }

    void rule(const lpcsp::lp::Rule& r) {
        std::visit(
            [&](const auto& n) {
                using N = std::decay_t<decltype(n)>;
                Subst s;
                if constexpr (std::is_same_v<N, lpcsp::lp::Fact>) {
                    if (!domain(n.atom.pred)) gp_.add_fact(gp_.atoms.intern(inst(n.atom, {})));
                } else if constexpr (std::is_same_v<N, lpcsp::lp::NormalRule>) {
                    if (domain(n.head.pred)) return;
                    each(vars_of(n.body), 0, s, [&](Subst& full) {
                        std::vector<AtomId> pos, neg;
                        if (body(n.body, full, &pos, &neg))
                            gp_.add_normal(gp_.atoms.intern(inst(n.head, full)), pos, neg);
                    });
                } else if constexpr (std::is_same_v<N, lpcsp::lp::IntegrityConstraint>) {
                    each(vars_of(n.body), 0, s, [&](Subst& full) {
                        std::vector<AtomId> pos, neg;
                        if (body(n.body, full, &pos, &neg)) gp_.add_constraint(pos, neg);
                    });
                } else if constexpr (std::is_same_v<N, lpcsp::lp::ChoiceRule>) {
                    each(vars_of(n.body), 0, s, [&](Subst& full) {
                        std::vector<AtomId> pos, neg;
                        if (!body(n.body, full, &pos, &neg)) return;
                        std::set<AtomId> heads;
                        for (const auto& e : n.elements) {
                            std::set<std::string> ev;
                            lpcsp::lp::collect_vars(e.atom, ev);
                            Subst el = full;
                            expand(e.guards, ev, el, [&](Subst& x) { heads.insert(gp_.atoms.intern(inst(e.atom, x))); });
                        }
                        const Value hi = n.upper.value_or(static_cast<Value>(heads.size()));
                        gp_.add_choice(n.lower.value_or(0), {heads.begin(), heads.end()}, std::max(hi, n.lower.value_or(0)),
                                       pos, neg);
                    });
                } else if constexpr (std::is_same_v<N, lpcsp::lp::AggregateRule>) {
                    each(vars_of(n.body), 0, s, [&](Subst& full) {
                        if (!body(n.body, full, nullptr, nullptr)) return;
                        std::vector<lpcsp::ground::WeightLiteral> els;
                        Value total = 0;
                        for (const auto& e : n.elements) {
                            std::set<std::string> ev;
                            lpcsp::lp::collect_vars(e.literal, ev);
                            if (e.weight) lpcsp::lp::collect_vars(*e.weight, ev);
                            Subst el = full;
                            expand(e.guards, ev, el, [&](Subst& x) {
                                Value w = e.weight ? lpcsp::ground::eval_term(*e.weight, x) : 1;
                                els.push_back({gp_.atoms.intern(inst(e.literal.atom(), x)), !e.literal.negated, w});
                                total += w;
                            });
                        }
                        Value bound = lpcsp::ground::eval_term(n.bound, full);
                        Value lower = bound;
                        if (n.rel == lpcsp::lp::AggRel::at_most) {
                            for (auto& l : els) l.positive = !l.positive;
                            lower = total - bound;
                        }
                        std::optional<AtomId> head;
                        if (n.head) head = gp_.atoms.intern(inst(*n.head, full));
                        gp_.add_weight(head, lower, els);
                    });
                }
            },
            r.node);
    }
};

} // namespace naive

inline lpcsp::ground::GroundProgram naive_ground(const lpcsp::lp::Program& p) { return naive::Naive(p).run(); }

} // namespace oracle

#endif // LPCSP_TESTS_NAIVE_GROUNDER_HPP
