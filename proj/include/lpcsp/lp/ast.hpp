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
// Abstract syntax of non-ground rule programs. Source positions are kept on
// rules for diagnostics but take no part in equality.

#ifndef LPCSP_LP_AST_HPP
#define LPCSP_LP_AST_HPP

#include <lpcsp/common.hpp>

#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace lpcsp::lp {

struct Term;

struct Variable {
    std::string name;
    friend bool operator==(const Variable&, const Variable&) = default;
};

struct IntConst {
    Value value = 0;
    friend bool operator==(const IntConst&, const IntConst&) = default;
};

enum class ArithOp { add, sub, abs };

struct ArithExpr {
    ArithOp op = ArithOp::add;
    std::vector<Term> args;  // two for add/sub, one for abs
    friend bool operator==(const ArithExpr&, const ArithExpr&);
};

struct Term {
    std::variant<Variable, IntConst, ArithExpr> node;

    static Term var(std::string name) { return Term{Variable{std::move(name)}}; }
    static Term num(Value v) { return Term{IntConst{v}}; }
    static Term add(Term a, Term b) { return Term{ArithExpr{ArithOp::add, {std::move(a), std::move(b)}}}; }
    static Term sub(Term a, Term b) { return Term{ArithExpr{ArithOp::sub, {std::move(a), std::move(b)}}}; }
    static Term abs(Term a) { return Term{ArithExpr{ArithOp::abs, {std::move(a)}}}; }

    friend bool operator==(const Term&, const Term&) = default;
};

inline bool operator==(const ArithExpr& a, const ArithExpr& b) { return a.op == b.op && a.args == b.args; }

struct Atom {
    std::string pred;
    std::vector<Term> args;
    friend bool operator==(const Atom&, const Atom&) = default;
};

/// `>` and `>=` are stored with operands swapped.
enum class Rel { lt, le, eq, ne };

struct Builtin {
    Rel rel = Rel::eq;
    Term lhs;
    Term rhs;
    friend bool operator==(const Builtin&, const Builtin&) = default;
};

struct Literal {
    std::variant<Atom, Builtin> item;
    bool negated = false;  // only for atoms

    bool is_atom() const { return std::holds_alternative<Atom>(item); }
    const Atom& atom() const { return std::get<Atom>(item); }
    const Builtin& builtin() const { return std::get<Builtin>(item); }

    friend bool operator==(const Literal&, const Literal&) = default;
};

struct DomainDecl {
    std::string pred;
    Value low = 0;
    Value high = 0;
    friend bool operator==(const DomainDecl&, const DomainDecl&) = default;
};

struct Fact {
    Atom atom;
    friend bool operator==(const Fact&, const Fact&) = default;
};

struct NormalRule {
    Atom head;
    std::vector<Literal> body;
    friend bool operator==(const NormalRule&, const NormalRule&) = default;
};

struct ChoiceElement {
    Atom atom;
    std::vector<Atom> guards;
    friend bool operator==(const ChoiceElement&, const ChoiceElement&) = default;
};

struct ChoiceRule {
    std::optional<Value> lower;  // absent: 0
    std::vector<ChoiceElement> elements;
    std::optional<Value> upper;  // absent: number of expanded elements
    std::vector<Literal> body;
    friend bool operator==(const ChoiceRule&, const ChoiceRule&) = default;
};

struct IntegrityConstraint {
    std::vector<Literal> body;
    friend bool operator==(const IntegrityConstraint&, const IntegrityConstraint&) = default;
};

enum class AggKind { count, sum };
enum class AggRel { at_least, at_most };

struct WeightedElement {
    Literal literal;              // an atom, possibly negated
    std::optional<Term> weight;   // sum only
    std::vector<Atom> guards;
    friend bool operator==(const WeightedElement&, const WeightedElement&) = default;
};

/// `[head] :- #count{...} >= bound, body.` Without a head the rule is an
/// integrity constraint forbidding the aggregate condition.
struct AggregateRule {
    std::optional<Atom> head;
    AggKind kind = AggKind::count;
    AggRel rel = AggRel::at_least;
    Term bound;
    std::vector<WeightedElement> elements;
    std::vector<Literal> body;
    friend bool operator==(const AggregateRule&, const AggregateRule&) = default;
};

struct Rule {
    std::variant<DomainDecl, Fact, NormalRule, ChoiceRule, IntegrityConstraint, AggregateRule> node;
    SourcePos pos;

    friend bool operator==(const Rule& a, const Rule& b) { return a.node == b.node; }
};

struct Program {
    std::vector<Rule> rules;
    std::map<std::string, std::size_t> arities;
    /// Predicates whose extension is fixed before search: defined only by
    /// interval declarations, facts and rules over other domain predicates.
    std::set<std::string> domain_preds;

    friend bool operator==(const Program& a, const Program& b) { return a.rules == b.rules; }
};

// Helpers over terms and literals.

inline void collect_vars(const Term& t, std::set<std::string>& out) {
    if (auto v = std::get_if<Variable>(&t.node)) out.insert(v->name);
    else if (auto e = std::get_if<ArithExpr>(&t.node))
        for (const auto& a : e->args) collect_vars(a, out);
}

inline void collect_vars(const Atom& a, std::set<std::string>& out) {
    for (const auto& t : a.args) collect_vars(t, out);
}

inline void collect_vars(const Literal& l, std::set<std::string>& out) {
    if (l.is_atom()) collect_vars(l.atom(), out);
    else {
        collect_vars(l.builtin().lhs, out);
        collect_vars(l.builtin().rhs, out);
    }
}

} // namespace lpcsp::lp

#endif // LPCSP_LP_AST_HPP
