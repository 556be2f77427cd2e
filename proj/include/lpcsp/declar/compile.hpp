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
// Compilation of .dl specifications to fd-core problems.
//
// Every function cell f(t) is one variable over the range sort; every open
// atom is a 0/1 variable; channels become occupancy constraints. Defined
// predicates and static comparisons are evaluated while grounding, so
// instances with a false static body are never emitted. Consequences are
// linearized. Instances whose body holds open atoms yield forbidden value
// tuples, which are grouped by variable set and rewritten as !=, offset and
// linear constraints where whole lines of tuples are forbidden.

#ifndef LPCSP_DECLAR_COMPILE_HPP
#define LPCSP_DECLAR_COMPILE_HPP

#include <lpcsp/declar/evaluate.hpp>
#include <lpcsp/fd/problem.hpp>

namespace lpcsp::declar {

/// cells: one variable per function cell. indicators: one 0/1 variable per
/// (cell, value) with exactly-one constraints, the cell value channelled
/// from them (the has_pos-style encoding).
enum class FunctionEncoding { cells, indicators };

struct CompileOptions {
    FunctionEncoding function_encoding = FunctionEncoding::cells;
    /// Largest value-tuple product enumerated for non-linear consequences.
    std::uint64_t fallback_cap = 1'000'000;
};

struct Compiled {
    struct Cell {
        std::string func;
        std::vector<Value> args;
        fd::VarId var;
    };
    struct OpenAtom {
        std::string pred;
        std::vector<Value> args;
        fd::VarId var;
    };

    fd::Problem problem;
    std::vector<Cell> cells;
    std::vector<OpenAtom> atoms;
    std::set<std::string> open_functions;
    std::optional<fd::VarId> objective;
    std::size_t instances = 0;  // ground constraint instances considered

    /// Function tables and open atoms of a total assignment.
    Interpretation decompile(const fd::Assignment& a) const {
        if (a.size() != problem.size())
            throw StructuralError("assignment has " + std::to_string(a.size()) + " values, problem has " +
                                  std::to_string(problem.size()) + " variables");
        Interpretation in;
        for (const auto& c : cells) {
            Value v = a[static_cast<std::size_t>(c.var)];
            in.functions[c.func][c.args] = v;
            if (open_functions.count(c.func)) {
                std::vector<Value> full = c.args;
                full.push_back(v);
                in.delta.insert(atom_name(c.func, full));
            }
        }
        for (const auto& o : atoms) {
            auto& ext = in.open[o.pred];
            if (a[static_cast<std::size_t>(o.var)] == 1) {
                ext.insert(o.args);
                in.delta.insert(atom_name(o.pred, o.args));
            }
        }
        return in;
    }
};

namespace detail {

struct Lin {
    std::map<fd::VarId, Value> coef;
    Value c = 0;

    void add(const Lin& o, Value k) {
        for (const auto& [v, a] : o.coef) coef[v] = checked::add(coef[v], checked::mul(a, k));
        c = checked::add(c, checked::mul(o.c, k));
    }
    void drop_zeros() {
        for (auto it = coef.begin(); it != coef.end();)
            it = it->second == 0 ? coef.erase(it) : std::next(it);
    }
};

inline bool static_expr(const Spec& spec, const Expr& e) {
    if (auto a = std::get_if<Apply>(&e.node)) {
        if (spec.kind(a->name) == Symbol::function) return false;
        return std::all_of(a->args.begin(), a->args.end(), [&](const Expr& x) { return static_expr(spec, x); });
    }
    if (auto ar = std::get_if<Arith>(&e.node))
        return std::all_of(ar->args.begin(), ar->args.end(), [&](const Expr& x) { return static_expr(spec, x); });
    return !std::holds_alternative<std::shared_ptr<const Aggregate>>(e.node);
}

inline std::vector<std::vector<Value>> tuples(const Spec& spec, const std::vector<std::string>& sorts) {
    std::vector<std::vector<Value>> out{{}};
    for (const auto& s : sorts) {
        std::vector<std::vector<Value>> next;
        for (const auto& t : out)
            for (Value v : sort_values(spec.sort(s))) {
                next.push_back(t);
                next.back().push_back(v);
            }
        out = std::move(next);
    }
    return out;
}

class Compiler {
public:
    Compiler(const Spec& spec, CompileOptions options) : spec_(spec), opt_(options), defined_(spec) {}

    Compiled run() {
        functions();
        open_preds();
        for (const auto& c : spec_.constraints) constraint(c);
        flush();
        objective();
        std::vector<fd::VarId> order = branch_;
        for (const auto& a : out_.atoms) order.push_back(a.var);
        out_.problem.set_branching(std::move(order));
        return std::move(out_);
    }

private:
    using Cond = std::pair<fd::VarId, Value>;

    const Spec& spec_;
    CompileOptions opt_;
    Defined defined_;
    Compiled out_;
    std::vector<fd::VarId> branch_;
    std::map<std::pair<std::string, std::vector<Value>>, fd::VarId> cell_;
    std::map<std::pair<std::string, std::vector<Value>>, fd::VarId> atom_;
    std::map<Cond, fd::VarId> ind_;
    std::map<std::pair<std::string, Value>, std::vector<fd::VarId>> occ_;
    std::map<std::vector<fd::VarId>, std::set<std::vector<Value>>> forbidden_;
    bool unsat_posted_ = false;

    fd::Problem& p() { return out_.problem; }

    [[noreturn]] static void semantic(SourcePos pos, const std::string& msg) {
        throw ParseError(ParseError::Kind::semantic, pos, msg);
    }

    void unsat() {
        if (unsat_posted_) return;
        unsat_posted_ = true;
        p().post(fd::Linear{{}, fd::Relation::eq, 1});
    }

    bool boolean(fd::VarId v) {
        const fd::Domain& d = p().var(v).domain;
        return d.min() >= 0 && d.max() <= 1;
    }

    // ---- variables ----

    void functions() {
        for (const auto& f : spec_.functions) {
            const SortDecl& range = spec_.sort(f.range);
            auto ts = tuples(spec_, f.args);
            const Value width = range.high - range.low + 1;
            if (f.prop == FuncProp::bijective && static_cast<Value>(ts.size()) != width)
                semantic(f.pos, "bijective function " + f.name + " has " + std::to_string(ts.size()) +
                                    " argument tuples but a range of " + std::to_string(width) + " values");
            if (f.open) out_.open_functions.insert(f.name);
            std::vector<fd::VarId> cells;
            std::map<Value, std::vector<fd::VarId>> by_value;
            for (const auto& t : ts) {
                fd::VarId v = p().add_var(range.low, range.high, atom_name(f.name, t));
                cell_[{f.name, t}] = v;
                out_.cells.push_back({f.name, t, v});
                cells.push_back(v);
                if (opt_.function_encoding == FunctionEncoding::indicators) {
                    fd::Linear one{{}, fd::Relation::eq, 1};
                    fd::Linear chan{{{1, v}}, fd::Relation::eq, 0};
                    for (Value x : sort_values(range)) {
                        std::vector<Value> full = t;
                        full.push_back(x);
                        fd::VarId b = p().add_var(0, 1, atom_name(f.name, full));
                        ind_[{v, x}] = b;
                        branch_.push_back(b);
                        one.terms.push_back({1, b});
                        chan.terms.push_back({checked::neg(x), b});
                        by_value[x].push_back(b);
                    }
                    p().post(std::move(one));
                    p().post(std::move(chan));
                } else {
                    branch_.push_back(v);
                }
            }
            if (f.prop == FuncProp::none || cells.size() < 2) continue;
            if (opt_.function_encoding == FunctionEncoding::cells) {
                p().post(fd::AllDifferent{cells});
            } else {
                for (auto& [x, bs] : by_value) {
                    fd::Linear at_most{{}, f.prop == FuncProp::bijective ? fd::Relation::eq : fd::Relation::le, 1};
                    for (fd::VarId b : bs) at_most.terms.push_back({1, b});
                    p().post(std::move(at_most));
                }
            }
        }
    }

    void open_preds() {
        for (const auto& pd : spec_.preds) {
            if (!pd.open) continue;
            for (const auto& t : tuples(spec_, pd.sorts)) {
                fd::VarId v = p().add_var(0, 1, atom_name(pd.name, t));
                atom_[{pd.name, t}] = v;
                out_.atoms.push_back({pd.name, t, v});
            }
        }
    }

    fd::VarId cell(const std::string& f, const std::vector<Value>& args) { return cell_.at({f, args}); }

    /// 0/1 variable that is 1 iff var = value (cached).
    fd::VarId indicator(fd::VarId var, Value value) {
        auto it = ind_.find({var, value});
        if (it != ind_.end()) return it->second;
        fd::VarId b = p().add_var(0, 1, p().var(var).name + "=" + std::to_string(value));
        p().post(fd::OccupancyChannel{var, 1, {b}, value});
        ind_[{var, value}] = b;
        return b;
    }

    /// Occupancy variables of channel ch at a (one per range value).
    const std::vector<fd::VarId>& occupancy(const ChannelDecl& ch, Value a) {
        auto key = std::make_pair(ch.name, a);
        auto it = occ_.find(key);
        if (it != occ_.end()) return it->second;
        const FuncDecl& f = spec_.function(ch.func);
        const SortDecl& range = spec_.sort(f.range);
        Value dur = eval_static(spec_, ch.duration, Subst{{ch.var_a, a}});
        if (dur < 0) semantic(ch.pos, "channel " + ch.name + " has a negative duration at " + std::to_string(a));
        std::vector<fd::VarId> occ;
        for (Value b : sort_values(range))
            occ.push_back(p().add_var(0, dur == 0 ? 0 : 1, atom_name(ch.name, {a, b})));
        if (dur > 0) p().post(fd::OccupancyChannel{cell(ch.func, {a}), dur, occ, range.low});
        return occ_[key] = std::move(occ);
    }

    /// The (variable, value) pair that makes a dynamic atom true.
    Cond condition(const AtomLit& a, const Subst& s) {
        std::vector<Value> args;
        for (const auto& x : a.args) args.push_back(eval_static(spec_, x, s));
        switch (spec_.kind(a.pred)) {
        case Symbol::open_pred: return {atom_.at({a.pred, args}), 1};
        case Symbol::function: {
            Value v = args.back();
            args.pop_back();
            fd::VarId c = cell(a.pred, args);
            if (opt_.function_encoding == FunctionEncoding::indicators) return {ind_.at({c, v}), 1};
            return {c, v};
        }
        case Symbol::channel: {
            const ChannelDecl& ch = spec_.channel(a.pred);
            Value low = spec_.sort(spec_.function(ch.func).range).low;
            return {occupancy(ch, args[0])[static_cast<std::size_t>(args[1] - low)], 1};
        }
        default: throw StructuralError("not an open atom: " + a.pred);
        }
    }

    /// var = value as a linear term: (coefficient on a variable, constant).
    std::optional<Lin> truth(Cond c) {
        Lin l;
        if (!p().var(c.first).domain.contains(c.second)) return std::nullopt;
        if (boolean(c.first)) {
            if (c.second == 1) {
                l.coef[c.first] = 1;
            } else {
                l.coef[c.first] = -1;
                l.c = 1;
            }
            return l;
        }
        l.coef[indicator(c.first, c.second)] = 1;
        return l;
    }

    // ---- linearization ----

    std::optional<Lin> linear(const Expr& e, Subst& s) {
        Lin out;
        if (static_expr(spec_, e)) {
            out.c = eval_static(spec_, e, s);
            return out;
        }
        if (auto a = std::get_if<Apply>(&e.node)) {
            std::vector<Value> args;
            for (const auto& x : a->args) args.push_back(eval_static(spec_, x, s));
            out.coef[cell(a->name, args)] = 1;
            return out;
        }
        if (auto ar = std::get_if<Arith>(&e.node)) {
            auto x = linear(ar->args[0], s);
            if (!x) return std::nullopt;
            switch (ar->op) {
            case ArithOp::add:
            case ArithOp::sub: {
                auto y = linear(ar->args[1], s);
                if (!y) return std::nullopt;
                x->add(*y, ar->op == ArithOp::add ? 1 : -1);
                return x;
            }
            case ArithOp::neg:
                out.add(*x, -1);
                return out;
            case ArithOp::mul: {
                auto y = linear(ar->args[1], s);
                if (!y) return std::nullopt;
                x->drop_zeros();
                y->drop_zeros();
                if (!x->coef.empty() && !y->coef.empty()) return std::nullopt;
                if (x->coef.empty()) std::swap(x, y);
                out.add(*x, y->c);
                return out;
            }
            case ArithOp::abs: return std::nullopt;
            }
        }
        const Aggregate& g = *std::get<std::shared_ptr<const Aggregate>>(e.node);
        for (Value v : sort_values(spec_.sort(g.sort))) {
            s[g.var] = v;
            bool ok = true;
            const AtomLit* dyn = nullptr;
            for (const auto& l : g.cond) {
                if (is_dynamic(spec_, l)) dyn = &l.atom();
                else if (!defined_.literal(l, s)) ok = false;
                if (!ok) break;
            }
            if (!ok) continue;
            Value w = g.weight ? eval_static(spec_, *g.weight, s) : 1;
            if (!dyn) {
                out.c = checked::add(out.c, w);
                continue;
            }
            if (auto t = truth(condition(*dyn, s))) out.add(*t, w);
        }
        s.erase(g.var);
        return out;
    }

    void post_linear(Lin l, Cmp cmp) {
        l.drop_zeros();
        if (l.coef.empty()) {
            if (!compare(cmp, l.c, 0)) unsat();
            return;
        }
        fd::Linear lin;
        Value sign = (cmp == Cmp::ge || cmp == Cmp::gt) ? -1 : 1;
        for (const auto& [v, a] : l.coef) lin.terms.push_back({checked::mul(a, sign), v});
        Value bound = checked::mul(checked::neg(l.c), sign);
        switch (cmp) {
        case Cmp::eq: lin.rel = fd::Relation::eq; break;
        case Cmp::ne:
            if (lin.terms.size() == 2 && bound == 0 && lin.terms[0].coeff == -lin.terms[1].coeff &&
                checked::abs(lin.terms[0].coeff) == 1) {
                p().post(fd::NotEqual{lin.terms[0].var, lin.terms[1].var});
                return;
            }
            lin.rel = fd::Relation::ne;
            break;
        case Cmp::le:
        case Cmp::ge: lin.rel = fd::Relation::le; break;
        case Cmp::lt:
        case Cmp::gt:
            lin.rel = fd::Relation::le;
            bound = checked::sub(bound, 1);
            break;
        }
        lin.bound = bound;
        p().post(std::move(lin));
    }

    /// abs(x - y + k) != c
    bool offset(const Compare& q, Subst& s) {
        if (q.cmp != Cmp::ne) return false;
        const Expr* inner = nullptr;
        const Expr* other = nullptr;
        for (auto [a, b] : {std::pair{&q.lhs, &q.rhs}, std::pair{&q.rhs, &q.lhs}}) {
            auto ar = std::get_if<Arith>(&a->node);
            if (ar && ar->op == ArithOp::abs && static_expr(spec_, *b)) {
                inner = &ar->args[0];
                other = b;
                break;
            }
        }
        if (!inner) return false;
        auto l = linear(*inner, s);
        if (!l) return false;
        l->drop_zeros();
        if (l->coef.size() != 2) return false;
        auto it = l->coef.begin();
        auto [v1, a1] = *it++;
        auto [v2, a2] = *it;
        if (checked::abs(a1) != 1 || a1 != -a2) return false;
        fd::VarId x = a1 == 1 ? v1 : v2;
        fd::VarId y = a1 == 1 ? v2 : v1;
        const Value c = eval_static(spec_, *other, s);
        const Value k = l->c;
        if (c < 0) return true;
        if (k == 0) {
            if (c == 0) p().post(fd::NotEqual{x, y});
            else p().post(fd::NotEqualOffset{x, y, c});
            return true;
        }
        auto side = [&](Value d) { p().post(fd::Linear{{{1, x}, {-1, y}}, fd::Relation::ne, d}); };
        side(checked::sub(c, k));
        if (c != 0) side(checked::sub(checked::neg(c), k));
        return true;
    }

    void collect_cells(const Expr& e, Subst& s, std::vector<fd::VarId>& out, SourcePos pos) {
        if (auto a = std::get_if<Apply>(&e.node)) {
            if (spec_.kind(a->name) != Symbol::function) return;
            std::vector<Value> args;
            for (const auto& x : a->args) args.push_back(eval_static(spec_, x, s));
            fd::VarId v = cell(a->name, args);
            if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
        } else if (auto ar = std::get_if<Arith>(&e.node)) {
            for (const auto& x : ar->args) collect_cells(x, s, out, pos);
        } else if (std::holds_alternative<std::shared_ptr<const Aggregate>>(e.node)) {
            semantic(pos, "aggregates are only supported in linear comparisons");
        }
    }

    /// Non-linear consequence: forbid every falsifying value tuple.
    void enumerate(const Compare& q, Subst& s, SourcePos pos) {
        std::vector<fd::VarId> vars;
        collect_cells(q.lhs, s, vars, pos);
        collect_cells(q.rhs, s, vars, pos);
        std::uint64_t product = 1;
        for (fd::VarId v : vars) product *= p().var(v).domain.size();
        if (vars.size() > 3 || product > opt_.fallback_cap)
            semantic(pos, "non-linear constraint over too many function cells");
        std::map<fd::VarId, const Compiled::Cell*> by_var;
        for (const auto& c : out_.cells) by_var[c.var] = &c;
        std::vector<std::vector<Value>> doms;
        for (fd::VarId v : vars) doms.push_back(p().var(v).domain.values());
        Interpretation in;
        Evaluator ev(spec_, defined_, in);
        std::vector<Value> pick(vars.size());
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
            if (i == vars.size()) {
                if (!ev.holds(q, s)) add_forbidden(vars, pick);
                return;
            }
            const auto* c = by_var.at(vars[i]);
            for (Value x : doms[i]) {
                pick[i] = x;
                in.functions[c->func][c->args] = x;
                rec(i + 1);
            }
        };
        rec(0);
    }

    void consequence(const Compare& q, Subst& s, SourcePos pos) {
        if (offset(q, s)) return;
        auto l = linear(q.lhs, s);
        auto r = l ? linear(q.rhs, s) : std::nullopt;
        if (!l || !r) {
            enumerate(q, s, pos);
            return;
        }
        l->add(*r, -1);
        post_linear(std::move(*l), q.cmp);
    }

    // ---- constraints ----

    void add_forbidden(std::vector<fd::VarId> vars, std::vector<Value> vals) {
        std::vector<std::size_t> idx(vars.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return vars[a] < vars[b]; });
        std::vector<fd::VarId> vs;
        std::vector<Value> xs;
        for (std::size_t i : idx) {
            vs.push_back(vars[i]);
            xs.push_back(vals[i]);
        }
        forbidden_[vs].insert(xs);
    }

    void constraint(const SpecConstraint& c) {
        std::vector<BindingTest> tests;
        std::vector<const AtomLit*> dyn;
        for (const auto& l : c.body) {
            if (is_dynamic(spec_, l)) {
                dyn.push_back(&l.atom());
                continue;
            }
            BindingTest t;
            collect_vars(l, t.needs);
            t.test = [this, &l](const Subst& s) { return defined_.literal(l, s); };
            tests.push_back(std::move(t));
        }
        if (!dyn.empty())
            for (const auto& q : c.consequences)
                if (!static_expr(spec_, q.lhs) || !static_expr(spec_, q.rhs))
                    semantic(c.pos, "a constraint with open atoms in its body needs static consequences");
        for_each_binding(spec_, c.scope.vars, c.scope.sort_of, tests, [&](const Subst& bound) {
            ++out_.instances;
            Subst s = bound;
            if (dyn.empty()) {
                for (const auto& q : c.consequences) consequence(q, s, c.pos);
                return true;
            }
            std::map<fd::VarId, Value> cond;
            for (const AtomLit* a : dyn) {
                auto [v, x] = condition(*a, s);
                if (!p().var(v).domain.contains(x)) return true;
                auto [it, fresh] = cond.emplace(v, x);
                if (!fresh && it->second != x) return true;
            }
            bool ok = !c.integrity;
            for (const auto& q : c.consequences)
                if (!compare(q.cmp, eval_static(spec_, q.lhs, s), eval_static(spec_, q.rhs, s))) ok = false;
            if (ok) return true;
            std::vector<fd::VarId> vs;
            std::vector<Value> xs;
            for (const auto& [v, x] : cond) {
                vs.push_back(v);
                xs.push_back(x);
            }
            add_forbidden(std::move(vs), std::move(xs));
            return true;
        });
    }

    void flush() {
        for (const auto& [vars, tuples] : forbidden_) {
            if (vars.empty()) {
                unsat();
            } else if (vars.size() == 1) {
                for (const auto& t : tuples) {
                    if (p().var(vars[0]).domain.size() == 1 && p().var(vars[0]).domain.contains(t[0])) {
                        unsat();
                        break;
                    }
                    p().remove_value(vars[0], t[0]);
                }
            } else if (vars.size() == 2) {
                pairs(vars[0], vars[1], tuples);
            } else {
                for (const auto& t : tuples) clause(vars, t);
            }
        }
    }

    /// sum of (var_i = val_i) <= k - 1
    void clause(const std::vector<fd::VarId>& vars, const std::vector<Value>& vals) {
        Lin l;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            auto t = truth({vars[i], vals[i]});
            if (!t) return;
            l.add(*t, 1);
        }
        l.c = checked::sub(l.c, static_cast<Value>(vars.size()) - 1);
        post_linear(std::move(l), Cmp::le);
    }

    void pairs(fd::VarId x, fd::VarId y, const std::set<std::vector<Value>>& bad) {
        const std::vector<Value> dx = p().var(x).domain.values();
        const fd::Domain& dy = p().var(y).domain;
        std::set<std::vector<Value>> left = bad;
        // Lines y - x = d and x + y = s lying entirely inside the forbidden set.
        auto line = [&](auto point) {
            std::vector<std::vector<Value>> pts;
            for (Value a : dx) {
                Value b = point(a);
                if (dy.contains(b)) pts.push_back({a, b});
            }
            if (pts.empty()) return std::vector<std::vector<Value>>{};
            bool uncovered = false;
            for (const auto& q : pts) {
                if (!bad.count(q)) return std::vector<std::vector<Value>>{};
                uncovered |= left.count(q) > 0;
            }
            return uncovered ? pts : std::vector<std::vector<Value>>{};
        };
        auto cover = [&](const std::vector<std::vector<Value>>& pts) {
            for (const auto& q : pts) left.erase(q);
        };
        std::set<Value> diffs, sums;
        for (const auto& t : bad) {
            diffs.insert(t[1] - t[0]);
            sums.insert(t[0] + t[1]);
        }
        std::set<Value> done;
        for (Value d : diffs) {
            if (done.count(d)) continue;
            auto pts = line([d](Value a) { return a + d; });
            if (pts.empty()) continue;
            if (d == 0) {
                p().post(fd::NotEqual{x, y});
                cover(pts);
                continue;
            }
            auto opposite = diffs.count(-d) ? line([d](Value a) { return a - d; }) : std::vector<std::vector<Value>>{};
            if (!opposite.empty() || (diffs.count(-d) && bad_line_complete(dx, dy, bad, -d))) {
                p().post(fd::NotEqualOffset{x, y, checked::abs(d)});
                cover(pts);
                cover(opposite);
                done.insert(-d);
            } else {
                p().post(fd::Linear{{{1, y}, {-1, x}}, fd::Relation::ne, d});
                cover(pts);
            }
        }
        for (Value sm : sums) {
            auto pts = line([sm](Value a) { return sm - a; });
            if (pts.empty()) continue;
            p().post(fd::Linear{{{1, x}, {1, y}}, fd::Relation::ne, sm});
            cover(pts);
        }
        for (const auto& t : left) clause({x, y}, t);
    }

    static bool bad_line_complete(const std::vector<Value>& dx, const fd::Domain& dy,
                                  const std::set<std::vector<Value>>& bad, Value d) {
        bool any = false;
        for (Value a : dx) {
            Value b = a + d;
            if (!dy.contains(b)) continue;
            any = true;
            if (!bad.count({a, b})) return false;
        }
        return any;
    }

    void objective() {
        if (!spec_.objective) return;
        const Objective& o = *spec_.objective;
        std::vector<fd::VarId> reserves;
        Value lo_min = INT64_MAX, hi_min = INT64_MAX;
        for (Value w : sort_values(spec_.sort(o.sort))) {
            Subst s{{o.var, w}};
            auto l = linear(o.term, s);
            if (!l) semantic(o.pos, "the objective term must be linear");
            l->drop_zeros();
            Value lo = l->c, hi = l->c;
            fd::Linear eq{{}, fd::Relation::eq, l->c};
            for (const auto& [v, a] : l->coef) {
                const fd::Domain& d = p().var(v).domain;
                Value x = checked::mul(a, d.min()), y = checked::mul(a, d.max());
                lo = checked::add(lo, std::min(x, y));
                hi = checked::add(hi, std::max(x, y));
                eq.terms.push_back({checked::neg(a), v});
            }
            fd::VarId r = p().add_var(lo, hi, o.var + "=" + std::to_string(w));
            eq.terms.push_back({1, r});
            p().post(std::move(eq));
            reserves.push_back(r);
            lo_min = std::min(lo_min, lo);
            hi_min = std::min(hi_min, hi);
        }
        fd::VarId m = p().add_var(lo_min, hi_min, "objective");
        p().post(fd::MinOf{m, reserves});
        p().set_objective(m);
        out_.objective = m;
    }
};

} // namespace detail

/// Compiles a checked specification. Throws ParseError (semantic) for
/// bijective size mismatches and unsupported constraint shapes.
inline Compiled compile(const Spec& spec, CompileOptions options = {}) {
    return detail::Compiler(spec, options).run();
}

} // namespace lpcsp::declar

#endif // LPCSP_DECLAR_COMPILE_HPP
