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
// Defined-predicate evaluation (stratified, bottom-up over finite sorts) and
// a direct evaluator of specifications over interpretations. Nothing here
// depends on fd-core.

#ifndef LPCSP_DECLAR_EVALUATE_HPP
#define LPCSP_DECLAR_EVALUATE_HPP

#include <lpcsp/declar/ast.hpp>

#include <algorithm>
#include <functional>

namespace lpcsp::declar {

using Subst = std::map<std::string, Value>;

/// Function tables and open atoms. delta lists the abduced atoms: open
/// predicate atoms and f(args, value) for every open_function cell.
struct Interpretation {
    std::map<std::string, std::map<std::vector<Value>, Value>> functions;
    std::map<std::string, std::set<std::vector<Value>>> open;
    std::set<std::string> delta;

    /// Values of a unary function in argument order.
    std::vector<Value> table(const std::string& f) const {
        std::vector<Value> out;
        auto it = functions.find(f);
        if (it == functions.end()) return out;
        for (const auto& [args, v] : it->second) out.push_back(v);
        return out;
    }
};

inline void collect_vars(const Expr& e, std::set<std::string>& out);

inline void collect_vars(const Literal& l, std::set<std::string>& out) {
    if (l.is_atom()) {
        for (const auto& a : l.atom().args) collect_vars(a, out);
    } else {
        collect_vars(l.compare().lhs, out);
        collect_vars(l.compare().rhs, out);
    }
}

/// Free variables; aggregate-bound variables are excluded.
inline void collect_vars(const Expr& e, std::set<std::string>& out) {
    if (auto v = std::get_if<Var>(&e.node)) {
        out.insert(v->name);
    } else if (auto a = std::get_if<Apply>(&e.node)) {
        for (const auto& x : a->args) collect_vars(x, out);
    } else if (auto ar = std::get_if<Arith>(&e.node)) {
        for (const auto& x : ar->args) collect_vars(x, out);
    } else if (auto g = std::get_if<std::shared_ptr<const Aggregate>>(&e.node)) {
        std::set<std::string> inner;
        if ((*g)->weight) collect_vars(*(*g)->weight, inner);
        for (const auto& l : (*g)->cond) collect_vars(l, inner);
        inner.erase((*g)->var);
        out.insert(inner.begin(), inner.end());
    }
}

/// A test that can run once all of `needs` are bound.
struct BindingTest {
    std::set<std::string> needs;
    std::function<bool(const Subst&)> test;
};

/// Calls f for every binding of vars (over their sorts) passing all tests.
/// Tests run as soon as their variables are bound. f returns false to stop.
inline bool for_each_binding(const Spec& spec, const std::vector<std::string>& vars,
                             const std::map<std::string, std::string>& sort_of, const std::vector<BindingTest>& tests,
                             const std::function<bool(const Subst&)>& f, Subst base = {}) {
    std::vector<std::vector<const BindingTest*>> at(vars.size() + 1);
    for (const auto& t : tests) {
        std::size_t level = 0;
        for (const auto& v : t.needs) {
            if (base.count(v)) continue;
            auto it = std::find(vars.begin(), vars.end(), v);
            if (it == vars.end()) throw StructuralError("unbound variable " + v);
            level = std::max(level, static_cast<std::size_t>(it - vars.begin()) + 1);
        }
        at[level].push_back(&t);
    }
    std::vector<std::vector<Value>> values;
    for (const auto& v : vars) values.push_back(sort_values(spec.sort(sort_of.at(v))));
    Subst s = std::move(base);
    std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
        for (const BindingTest* t : at[i])
            if (!t->test(s)) return true;
        if (i == vars.size()) return f(s);
        for (Value v : values[i]) {
            s[vars[i]] = v;
            if (!rec(i + 1)) return false;
        }
        s.erase(vars[i]);
        return true;
    };
    return rec(0);
}

inline bool compare(Cmp c, Value a, Value b) {
    switch (c) {
    case Cmp::eq: return a == b;
    case Cmp::ne: return a != b;
    case Cmp::lt: return a < b;
    case Cmp::le: return a <= b;
    case Cmp::gt: return a > b;
    case Cmp::ge: return a >= b;
    }
    return false;
}

inline Value table_value(const Spec& spec, const std::string& name, Value arg) {
    const TableDecl& t = spec.table(name);
    const SortDecl& s = spec.sort(t.sort);
    if (arg < s.low || arg > s.high) throw StructuralError("table " + name + " applied outside its sort");
    return t.values[static_cast<std::size_t>(arg - s.low)];
}

/// Expressions without function terms or aggregates.
inline Value eval_static(const Spec& spec, const Expr& e, const Subst& s) {
    if (auto v = std::get_if<Var>(&e.node)) {
        auto it = s.find(v->name);
        if (it == s.end()) throw StructuralError("unbound variable " + v->name);
        return it->second;
    }
    if (auto n = std::get_if<Num>(&e.node)) return n->value;
    if (auto a = std::get_if<Apply>(&e.node)) {
        if (spec.kind(a->name) != Symbol::table) throw StructuralError("function term in a static expression");
        return table_value(spec, a->name, eval_static(spec, a->args[0], s));
    }
    if (auto ar = std::get_if<Arith>(&e.node)) {
        Value x = eval_static(spec, ar->args[0], s);
        switch (ar->op) {
        case ArithOp::add: return checked::add(x, eval_static(spec, ar->args[1], s));
        case ArithOp::sub: return checked::sub(x, eval_static(spec, ar->args[1], s));
        case ArithOp::mul: return checked::mul(x, eval_static(spec, ar->args[1], s));
        case ArithOp::neg: return checked::neg(x);
        case ArithOp::abs: return checked::abs(x);
        }
    }
    throw StructuralError("aggregate in a static expression");
}

/// Extensions of the defined predicates under the stratified semantics.
class Defined {
public:
    explicit Defined(const Spec& spec) : spec_(spec) {
        std::map<std::string, int> level;
        for (const auto& p : spec.preds)
            if (!p.open) level[p.name] = 0;
        for (bool changed = true; changed;) {
            changed = false;
            for (const auto& r : spec.rules)
                for (const auto& l : r.body) {
                    if (!l.is_atom()) continue;
                    int need = level[l.atom().pred] + (l.atom().negated ? 1 : 0);
                    if (level[r.head.pred] < need) {
                        level[r.head.pred] = need;
                        changed = true;
                        if (need > static_cast<int>(level.size()))
                            throw StructuralError("defined predicate " + r.head.pred + " is not stratified");
                    }
                }
        }
        int top = 0;
        for (const auto& [p, lv] : level) {
            ext_[p];
            top = std::max(top, lv);
        }
        for (int lv = 0; lv <= top; ++lv) {
            for (bool changed = true; changed;) {
                changed = false;
                for (const auto& r : spec.rules)
                    if (level[r.head.pred] == lv) changed |= apply(r);
            }
        }
    }

    bool holds(const std::string& pred, const std::vector<Value>& args) const {
        const PredDecl& p = spec_.pred(pred);
        if (p.open) throw StructuralError(pred + " is open, not defined");
        if (args.size() != p.sorts.size()) throw StructuralError("wrong arity for " + pred);
        for (std::size_t i = 0; i < args.size(); ++i) {
            const SortDecl& s = spec_.sort(p.sorts[i]);
            if (args[i] < s.low || args[i] > s.high) throw StructuralError("argument outside sort " + s.name);
        }
        return ext_.at(pred).count(args) > 0;
    }

    const std::set<std::vector<Value>>& extension(const std::string& pred) const { return ext_.at(pred); }

    /// Truth of a static literal (defined atom or static comparison).
    bool literal(const Literal& l, const Subst& s) const {
        if (!l.is_atom()) {
            const Compare& c = l.compare();
            return compare(c.cmp, eval_static(spec_, c.lhs, s), eval_static(spec_, c.rhs, s));
        }
        const AtomLit& a = l.atom();
        std::vector<Value> args;
        for (const auto& x : a.args) args.push_back(eval_static(spec_, x, s));
        return (ext_.at(a.pred).count(args) > 0) != a.negated;
    }

private:
    const Spec& spec_;
    std::map<std::string, std::set<std::vector<Value>>> ext_;

    bool apply(const DefRule& r) {
        std::vector<BindingTest> tests;
        for (const auto& l : r.body) {
            BindingTest t;
            collect_vars(l, t.needs);
            t.test = [this, &l](const Subst& s) { return literal(l, s); };
            tests.push_back(std::move(t));
        }
        bool changed = false;
        for_each_binding(spec_, r.scope.vars, r.scope.sort_of, tests, [&](const Subst& s) {
            std::vector<Value> args;
            for (const auto& x : r.head.args) args.push_back(eval_static(spec_, x, s));
            changed |= ext_[r.head.pred].insert(std::move(args)).second;
            return true;
        });
        return changed;
    }
};

/// Truth of a defined atom under the stratified least model.
inline bool eval_defined(const Spec& spec, const std::string& pred, const std::vector<Value>& args) {
    return Defined(spec).holds(pred, args);
}

/// Which body literals refer to open symbols (open predicates, functions,
/// channels) and so depend on the interpretation.
inline bool is_dynamic(const Spec& spec, const Literal& l) {
    if (!l.is_atom()) return false;
    Symbol k = spec.kind(l.atom().pred);
    return k == Symbol::open_pred || k == Symbol::function || k == Symbol::channel;
}

/// Evaluates expressions and literals over an interpretation.
class Evaluator {
public:
    Evaluator(const Spec& spec, const Defined& defined, const Interpretation& in)
        : spec_(spec), defined_(defined), in_(in) {}

    Value function(const std::string& f, const std::vector<Value>& args) const {
        auto it = in_.functions.find(f);
        if (it != in_.functions.end()) {
            auto jt = it->second.find(args);
            if (jt != it->second.end()) return jt->second;
        }
        throw StructuralError("function " + atom_name(f, args) + " has no value");
    }

    Value value(const Expr& e, Subst& s) const {
        if (auto a = std::get_if<Apply>(&e.node)) {
            std::vector<Value> args;
            for (const auto& x : a->args) args.push_back(value(x, s));
            if (spec_.kind(a->name) == Symbol::table) return table_value(spec_, a->name, args[0]);
            return function(a->name, args);
        }
        if (auto ar = std::get_if<Arith>(&e.node)) {
            Value x = value(ar->args[0], s);
            switch (ar->op) {
            case ArithOp::add: return checked::add(x, value(ar->args[1], s));
            case ArithOp::sub: return checked::sub(x, value(ar->args[1], s));
            case ArithOp::mul: return checked::mul(x, value(ar->args[1], s));
            case ArithOp::neg: return checked::neg(x);
            case ArithOp::abs: return checked::abs(x);
            }
        }
        if (auto g = std::get_if<std::shared_ptr<const Aggregate>>(&e.node)) {
            const Aggregate& agg = **g;
            Value total = 0;
            for (Value v : sort_values(spec_.sort(agg.sort))) {
                s[agg.var] = v;
                bool ok = true;
                for (const auto& l : agg.cond)
                    if (!holds(l, s)) {
                        ok = false;
                        break;
                    }
                if (ok) total = checked::add(total, agg.weight ? value(*agg.weight, s) : 1);
            }
            s.erase(agg.var);
            return total;
        }
        return eval_static(spec_, e, s);
    }

    bool holds(const Literal& l, Subst& s) const {
        if (!l.is_atom()) return holds(l.compare(), s);
        const AtomLit& a = l.atom();
        std::vector<Value> args;
        for (const auto& x : a.args) args.push_back(eval_static(spec_, x, s));
        switch (spec_.kind(a.pred)) {
        case Symbol::defined_pred: return defined_.extension(a.pred).count(args) > 0 ? !a.negated : a.negated;
        case Symbol::open_pred: {
            auto it = in_.open.find(a.pred);
            return it != in_.open.end() && it->second.count(args) > 0;
        }
        case Symbol::function: {
            Value v = args.back();
            args.pop_back();
            return function(a.pred, args) == v;
        }
        case Symbol::channel: return channel(spec_.channel(a.pred), args[0], args[1]);
        default: throw StructuralError("unknown predicate " + a.pred);
        }
    }

    bool holds(const Compare& c, Subst& s) const { return compare(c.cmp, value(c.lhs, s), value(c.rhs, s)); }

    bool channel(const ChannelDecl& ch, Value a, Value b) const {
        Value start = function(ch.func, {a});
        Value dur = eval_static(spec_, ch.duration, Subst{{ch.var_a, a}});
        return start <= b && b < checked::add(start, dur);
    }

private:
    const Spec& spec_;
    const Defined& defined_;
    const Interpretation& in_;
};

/// First violated requirement (function totality, range, properties, or a
/// constraint instance), or nullopt when the interpretation is a model.
inline std::optional<std::string> first_violation(const Spec& spec, const Defined& defined, const Interpretation& in) {
    for (const auto& f : spec.functions) {
        auto it = in.functions.find(f.name);
        std::vector<std::vector<Value>> tuples{{}};
        for (const auto& a : f.args) {
            std::vector<std::vector<Value>> next;
            for (const auto& t : tuples)
                for (Value v : sort_values(spec.sort(a))) {
                    next.push_back(t);
                    next.back().push_back(v);
                }
            tuples = std::move(next);
        }
        const SortDecl& range = spec.sort(f.range);
        std::set<Value> seen;
        for (const auto& t : tuples) {
            if (it == in.functions.end() || !it->second.count(t)) return "function " + atom_name(f.name, t) + " undefined";
            Value v = it->second.at(t);
            if (v < range.low || v > range.high) return "function " + atom_name(f.name, t) + " outside its range";
            if (f.prop != FuncProp::none && !seen.insert(v).second) return "function " + f.name + " is not injective";
        }
        if (f.prop == FuncProp::bijective && static_cast<Value>(seen.size()) - 1 != range.high - range.low)
            return "function " + f.name + " is not surjective";
    }
    Evaluator ev(spec, defined, in);
    for (std::size_t ci = 0; ci < spec.constraints.size(); ++ci) {
        const SpecConstraint& c = spec.constraints[ci];
        std::vector<BindingTest> tests;
        for (const auto& l : c.body) {
            BindingTest t;
            collect_vars(l, t.needs);
            t.test = [&ev, &l](const Subst& s) {
                Subst copy = s;
                return ev.holds(l, copy);
            };
            tests.push_back(std::move(t));
        }
        std::optional<std::string> bad;
        for_each_binding(spec, c.scope.vars, c.scope.sort_of, tests, [&](const Subst& s) {
            Subst copy = s;
            bool ok = !c.integrity;
            for (const auto& q : c.consequences)
                if (!ev.holds(q, copy)) ok = false;
            if (ok) return true;
            std::string where;
            for (const auto& [k, v] : s) where += (where.empty() ? "" : ", ") + k + "=" + std::to_string(v);
            bad = "constraint " + std::to_string(ci + 1) + " (line " + std::to_string(c.pos.line) + ") violated at {" +
                  where + "}";
            return false;
        });
        if (bad) return bad;
    }
    return std::nullopt;
}

inline bool satisfies(const Spec& spec, const Interpretation& in) {
    Defined defined(spec);
    return !first_violation(spec, defined, in);
}

/// min over the objective sort of the objective term.
inline std::optional<Value> objective_value(const Spec& spec, const Interpretation& in) {
    if (!spec.objective) return std::nullopt;
    Defined defined(spec);
    Evaluator ev(spec, defined, in);
    const Objective& o = *spec.objective;
    std::optional<Value> best;
    for (Value w : sort_values(spec.sort(o.sort))) {
        Subst s{{o.var, w}};
        Value v = ev.value(o.term, s);
        if (!best || v < *best) best = v;
    }
    return best;
}

} // namespace lpcsp::declar

#endif // LPCSP_DECLAR_EVALUATE_HPP
