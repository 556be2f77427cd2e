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
// Syntax tree of the .dl specification dialect (see docs/dl-grammar.md).

#ifndef LPCSP_DECLAR_AST_HPP
#define LPCSP_DECLAR_AST_HPP

#include <lpcsp/common.hpp>

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace lpcsp::declar {

struct Aggregate;

enum class ArithOp { add, sub, mul, neg, abs };

struct Var {
    std::string name;
};

struct Num {
    Value value = 0;
};

/// f(args): a function term or a table lookup.
struct Apply {
    std::string name;
    std::vector<struct Expr> args;
};

struct Arith {
    ArithOp op = ArithOp::add;
    std::vector<struct Expr> args;
};

struct Expr {
    std::variant<Var, Num, Apply, Arith, std::shared_ptr<const Aggregate>> node;
    SourcePos pos;
};

enum class Cmp { eq, ne, lt, le, gt, ge };

struct AtomLit {
    std::string pred;
    std::vector<Expr> args;
    bool negated = false;
};

struct Compare {
    Cmp cmp = Cmp::eq;
    Expr lhs, rhs;
};

struct Literal {
    std::variant<AtomLit, Compare> node;
    SourcePos pos;

    bool is_atom() const { return std::holds_alternative<AtomLit>(node); }
    const AtomLit& atom() const { return std::get<AtomLit>(node); }
    const Compare& compare() const { return std::get<Compare>(node); }
};

enum class AggKind { count, sum };

/// #count{ V in s : cond } or #sum{ w, V in s : cond }.
struct Aggregate {
    AggKind kind = AggKind::count;
    std::optional<Expr> weight;
    std::string var;
    std::string sort;
    std::vector<Literal> cond;
};

struct SortDecl {
    std::string name;
    Value low = 0, high = 0;
};

enum class FuncProp { none, injective, bijective };

struct FuncDecl {
    std::string name;
    std::vector<std::string> args;
    std::string range;
    FuncProp prop = FuncProp::none;
    bool open = false;  // declared with open_function
    SourcePos pos;
};

struct PredDecl {
    std::string name;
    std::vector<std::string> sorts;
    bool open = false;
    SourcePos pos;
};

struct TableDecl {
    std::string name;
    std::string sort;
    std::vector<Value> values;  // in sort order
};

/// name(A, B) holds iff func(A) <= B < func(A) + duration.
struct ChannelDecl {
    std::string name;
    std::string var_a, var_b;
    std::string func;
    Expr duration;  // static, may mention var_a
    SourcePos pos;
};

/// Variables of a statement with their sorts, in order of first
/// occurrence. Aggregate-bound variables are kept apart.
struct Scope {
    std::vector<std::string> vars;
    std::map<std::string, std::string> sort_of;
    std::set<std::string> local;  // bound by an aggregate
};

struct DefRule {
    AtomLit head;
    std::vector<Literal> body;
    Scope scope;
    SourcePos pos;
};

/// consequences <- body. An integrity constraint has no consequences.
struct SpecConstraint {
    std::vector<Compare> consequences;
    std::vector<Literal> body;
    bool integrity = false;
    Scope scope;
    SourcePos pos;
};

/// maximize min var in sort : term
struct Objective {
    std::string var;
    std::string sort;
    Expr term;
    Scope scope;
    SourcePos pos;
};

enum class Symbol { none, sort, function, open_pred, defined_pred, table, channel };

struct Spec {
    std::vector<SortDecl> sorts;
    std::vector<FuncDecl> functions;
    std::vector<PredDecl> preds;
    std::vector<TableDecl> tables;
    std::vector<ChannelDecl> channels;
    std::vector<DefRule> rules;
    std::vector<SpecConstraint> constraints;
    std::optional<Objective> objective;

    Symbol kind(const std::string& name) const {
        auto it = symbols_.find(name);
        return it == symbols_.end() ? Symbol::none : it->second.first;
    }

    const SortDecl& sort(const std::string& n) const { return sorts.at(index(n, Symbol::sort)); }
    const FuncDecl& function(const std::string& n) const { return functions.at(index(n, Symbol::function)); }
    const PredDecl& pred(const std::string& n) const {
        Symbol k = kind(n);
        if (k != Symbol::open_pred && k != Symbol::defined_pred) throw StructuralError("unknown predicate " + n);
        return preds.at(symbols_.at(n).second);
    }
    const TableDecl& table(const std::string& n) const { return tables.at(index(n, Symbol::table)); }
    const ChannelDecl& channel(const std::string& n) const { return channels.at(index(n, Symbol::channel)); }

    void declare(const std::string& name, Symbol k, std::size_t idx) { symbols_[name] = {k, idx}; }

private:
    std::size_t index(const std::string& n, Symbol k) const {
        auto it = symbols_.find(n);
        if (it == symbols_.end() || it->second.first != k) throw StructuralError("unknown symbol " + n);
        return it->second.second;
    }

    std::map<std::string, std::pair<Symbol, std::size_t>> symbols_;
};

inline std::vector<Value> sort_values(const SortDecl& s) {
    std::vector<Value> out;
    for (Value v = s.low; v <= s.high; ++v) {
        out.push_back(v);
        if (v == s.high) break;
    }
    return out;
}

inline std::string atom_name(const std::string& pred, const std::vector<Value>& args) {
    std::string out = pred;
    if (args.empty()) return out;
    out += "(";
    for (std::size_t i = 0; i < args.size(); ++i) out += (i ? "," : "") + std::to_string(args[i]);
    return out + ")";
}

} // namespace lpcsp::declar

#endif // LPCSP_DECLAR_AST_HPP
