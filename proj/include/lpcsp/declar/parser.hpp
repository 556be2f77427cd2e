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
// Parser and static checks for the .dl dialect. The grammar is written out
// in docs/dl-grammar.md. Checks: symbols declared before use, arities,
// every variable typed by exactly one sort (inferred from argument
// positions), negation only over defined predicates, defined predicates
// stratified, table sizes.

#ifndef LPCSP_DECLAR_PARSER_HPP
#define LPCSP_DECLAR_PARSER_HPP

#include <lpcsp/declar/ast.hpp>

#include <cctype>
#include <functional>
#include <string_view>

namespace lpcsp::declar {

namespace detail {

enum class Tok { ident, var, integer, punct, hash, end };

struct Token {
    Tok kind = Tok::end;
    std::string text;
    Value value = 0;
    bool overflow = false;
    SourcePos pos;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : s_(src) {}

    Token next() {
        skip();
        Token t;
        t.pos = {line_, col_};
        if (i_ >= s_.size()) return t;
        const char c = s_[i_];
        if (std::islower(static_cast<unsigned char>(c))) {
            t.kind = Tok::ident;
            t.text = word();
        } else if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
            t.kind = Tok::var;
            t.text = word();
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            t.kind = Tok::integer;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
                const Value d = s_[i_] - '0';
                if (t.value > (INT64_MAX - d) / 10) t.overflow = true;
                else t.value = t.value * 10 + d;
                t.text += s_[i_];
                advance();
            }
        } else if (c == '#') {
            t.kind = Tok::hash;
            advance();
            t.text = "#" + word();
        } else {
            t.kind = Tok::punct;
            static const char* two[] = {"..", "->", "<-", "<=", ">=", "!="};
            for (const char* p : two) {
                if (s_.substr(i_, 2) == p) {
                    t.text = p;
                    advance();
                    advance();
                    return t;
                }
            }
            if (std::string_view(";,(){}:=<>+-*").find(c) == std::string_view::npos)
                throw ParseError(ParseError::Kind::syntax, t.pos, std::string("unexpected character '") + c + "'");
            t.text = std::string(1, c);
            advance();
        }
        return t;
    }

private:
    std::string_view s_;
    std::size_t i_ = 0;
    int line_ = 1, col_ = 1;

    void advance() {
        if (s_[i_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++i_;
    }

    void skip() {
        while (i_ < s_.size()) {
            if (std::isspace(static_cast<unsigned char>(s_[i_]))) advance();
            else if (s_[i_] == '%')
                while (i_ < s_.size() && s_[i_] != '\n') advance();
            else break;
        }
    }

    std::string word() {
        std::string w;
        while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) {
            w += s_[i_];
            advance();
        }
        return w;
    }
};

inline const std::set<std::string>& keywords() {
    static const std::set<std::string> k{"sort", "func", "open_function", "open", "pred", "table", "channel", "con",
                                         "maximize", "min", "in", "for", "not", "abs", "injective", "bijective"};
    return k;
}

class Parser {
public:
    explicit Parser(std::string_view src) : lex_(src) { shift(); }

    Spec spec() {
        while (cur_.kind != Tok::end) statement();
        stratify();
        return std::move(spec_);
    }

private:
    Lexer lex_;
    Token cur_;
    Spec spec_;
    int depth_ = 0;
    std::set<std::string> active_;  // aggregate variables in scope
    static constexpr int kMaxDepth = 200;
    // Defined-predicate dependencies: head -> (body pred, negated).
    std::map<std::string, std::vector<std::pair<std::string, bool>>> deps_;

    [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected = {}) const {
        throw ParseError(ParseError::Kind::syntax, cur_.pos, msg, std::move(expected));
    }
    [[noreturn]] static void semantic(SourcePos pos, const std::string& msg, std::string var = {}) {
        throw ParseError(ParseError::Kind::semantic, pos, msg, {}, std::move(var));
    }

    void shift() { cur_ = lex_.next(); }
    bool is(std::string_view p) const { return cur_.kind == Tok::punct && cur_.text == p; }
    bool is_word(std::string_view w) const { return cur_.kind == Tok::ident && cur_.text == w; }

    void expect(std::string_view p) {
        if (!is(p)) fail("expected '" + std::string(p) + "', got '" + cur_.text + "'", {"'" + std::string(p) + "'"});
        shift();
    }

    void expect_word(std::string_view w) {
        if (!is_word(w)) fail("expected '" + std::string(w) + "'", {"'" + std::string(w) + "'"});
        shift();
    }

    std::string name() {
        if (cur_.kind != Tok::ident) fail("expected a name, got '" + cur_.text + "'", {"name"});
        std::string n = cur_.text;
        shift();
        return n;
    }

    std::string fresh_name() {
        SourcePos pos = cur_.pos;
        std::string n = name();
        if (keywords().count(n)) semantic(pos, "'" + n + "' is a keyword");
        if (spec_.kind(n) != Symbol::none) semantic(pos, "symbol " + n + " declared twice");
        return n;
    }

    std::string sort_ref() {
        SourcePos pos = cur_.pos;
        std::string n = name();
        if (spec_.kind(n) != Symbol::sort) semantic(pos, "undeclared sort " + n);
        return n;
    }

    std::vector<std::string> sort_list() {
        std::vector<std::string> out{sort_ref()};
        while (is(",")) {
            shift();
            out.push_back(sort_ref());
        }
        return out;
    }

    Value integer() {
        bool neg = false;
        if (is("-")) {
            neg = true;
            shift();
        }
        if (cur_.kind != Tok::integer) fail("expected an integer", {"integer"});
        if (cur_.overflow) semantic(cur_.pos, "integer literal out of range");
        Value v = neg ? -cur_.value : cur_.value;
        shift();
        return v;
    }

    FuncProp property() {
        if (is_word("injective")) {
            shift();
            return FuncProp::injective;
        }
        if (is_word("bijective")) {
            shift();
            return FuncProp::bijective;
        }
        return FuncProp::none;
    }

    void statement() {
        SourcePos pos = cur_.pos;
        if (is_word("sort")) {
            shift();
            SortDecl s;
            s.name = fresh_name();
            expect("=");
            s.low = integer();
            expect("..");
            s.high = integer();
            expect(";");
            if (s.low > s.high) semantic(pos, "empty sort " + s.name);
            spec_.declare(s.name, Symbol::sort, spec_.sorts.size());
            spec_.sorts.push_back(s);
        } else if (is_word("func")) {
            shift();
            FuncDecl f;
            f.pos = pos;
            f.name = fresh_name();
            expect(":");
            f.args = sort_list();
            expect("->");
            f.range = sort_ref();
            f.prop = property();
            expect(";");
            spec_.declare(f.name, Symbol::function, spec_.functions.size());
            spec_.functions.push_back(f);
        } else if (is_word("open_function")) {
            shift();
            FuncDecl f;
            f.pos = pos;
            f.open = true;
            f.name = fresh_name();
            expect("(");
            f.args = sort_list();
            expect(")");
            if (f.args.size() < 2) semantic(pos, "open_function needs argument sorts and a range sort");
            f.range = f.args.back();
            f.args.pop_back();
            f.prop = property();
            expect(";");
            spec_.declare(f.name, Symbol::function, spec_.functions.size());
            spec_.functions.push_back(f);
        } else if (is_word("open") || is_word("pred")) {
            const bool open = is_word("open");
            shift();
            PredDecl p;
            p.pos = pos;
            p.open = open;
            p.name = fresh_name();
            expect("(");
            p.sorts = sort_list();
            expect(")");
            expect(";");
            spec_.declare(p.name, open ? Symbol::open_pred : Symbol::defined_pred, spec_.preds.size());
            spec_.preds.push_back(p);
        } else if (is_word("table")) {
            shift();
            TableDecl t;
            t.name = fresh_name();
            expect("(");
            t.sort = sort_ref();
            expect(")");
            expect("=");
            t.values.push_back(integer());
            while (is(",")) {
                shift();
                t.values.push_back(integer());
            }
            expect(";");
            const SortDecl& s = spec_.sort(t.sort);
            if (static_cast<Value>(t.values.size()) - 1 != s.high - s.low)
                semantic(pos, "table " + t.name + " needs one value per element of " + t.sort);
            spec_.declare(t.name, Symbol::table, spec_.tables.size());
            spec_.tables.push_back(t);
        } else if (is_word("channel")) {
            shift();
            channel(pos);
        } else if (is_word("con")) {
            shift();
            SpecConstraint c;
            c.pos = pos;
            do {
                if (!c.consequences.empty()) shift();
                Literal l = literal();
                if (l.is_atom()) semantic(l.pos, "a consequence must be a comparison");
                c.consequences.push_back(l.compare());
            } while (is(","));
            if (is("<-")) {
                shift();
                c.body = body();
            }
            expect(";");
            analyse(c);
            spec_.constraints.push_back(std::move(c));
        } else if (is("<-")) {
            shift();
            SpecConstraint c;
            c.pos = pos;
            c.integrity = true;
            c.body = body();
            expect(";");
            analyse(c);
            spec_.constraints.push_back(std::move(c));
        } else if (is_word("maximize")) {
            shift();
            if (spec_.objective) semantic(pos, "only one objective allowed");
            expect_word("min");
            Objective o;
            o.pos = pos;
            if (cur_.kind != Tok::var) fail("expected a variable", {"variable"});
            o.var = cur_.text;
            shift();
            expect_word("in");
            o.sort = sort_ref();
            expect(":");
            o.term = expr();
            expect(";");
            analyse(o);
            spec_.objective = std::move(o);
        } else if (cur_.kind == Tok::ident) {
            def_rule();
        } else {
            fail("expected a statement, got '" + cur_.text + "'",
                 {"sort", "func", "open_function", "open", "pred", "table", "channel", "con", "'<-'", "maximize",
                  "rule"});
        }
    }

    void channel(SourcePos pos) {
        ChannelDecl ch;
        ch.pos = pos;
        ch.name = fresh_name();
        expect("(");
        if (cur_.kind != Tok::var) fail("expected a variable", {"variable"});
        ch.var_a = cur_.text;
        shift();
        expect(",");
        if (cur_.kind != Tok::var) fail("expected a variable", {"variable"});
        ch.var_b = cur_.text;
        shift();
        expect(")");
        expect("=");
        SourcePos fpos = cur_.pos;
        ch.func = name();
        if (spec_.kind(ch.func) != Symbol::function) semantic(fpos, "undeclared function " + ch.func);
        const FuncDecl& f = spec_.function(ch.func);
        if (f.args.size() != 1) semantic(fpos, "a channel needs a unary function");
        expect("(");
        if (cur_.kind != Tok::var || cur_.text != ch.var_a) fail("expected " + ch.var_a, {ch.var_a});
        shift();
        expect(")");
        expect_word("for");
        ch.duration = expr();
        expect(";");
        if (ch.var_a == ch.var_b) semantic(pos, "channel variables must differ");
        Scope sc;
        bind(sc, ch.var_a, f.args[0], pos);
        bind(sc, ch.var_b, f.range, pos);
        infer(ch.duration, sc, std::nullopt);
        require_static(ch.duration, "channel duration");
        for (const auto& v : sc.vars)
            if (v != ch.var_a && v != ch.var_b) semantic(pos, "variable " + v + " is not bound in the channel", v);
        spec_.declare(ch.name, Symbol::channel, spec_.channels.size());
        spec_.channels.push_back(std::move(ch));
    }

    void def_rule() {
        DefRule r;
        r.pos = cur_.pos;
        r.head = atom_tail(name(), r.pos);
        if (spec_.kind(r.head.pred) != Symbol::defined_pred)
            semantic(r.pos, r.head.pred + " is not a declared defined predicate (pred)");
        for (const auto& a : r.head.args)
            if (!std::holds_alternative<Var>(a.node) && !std::holds_alternative<Num>(a.node))
                semantic(a.pos, "head arguments must be variables or integers");
        if (is("<-")) {
            shift();
            r.body = body();
        }
        expect(";");
        Literal head{r.head, r.pos};
        infer(head, r.scope);
        for (const auto& l : r.body) {
            infer(l, r.scope);
            if (l.is_atom()) {
                if (spec_.kind(l.atom().pred) != Symbol::defined_pred)
                    semantic(l.pos, "rule bodies may only use defined predicates and comparisons");
                deps_[r.head.pred].push_back({l.atom().pred, l.atom().negated});
            } else {
                require_static(l.compare().lhs, "comparison in a rule body");
                require_static(l.compare().rhs, "comparison in a rule body");
            }
        }
        deps_[r.head.pred];
        check_typed(r.scope, r.pos);
        const PredDecl& p = spec_.pred(r.head.pred);
        for (std::size_t i = 0; i < r.head.args.size(); ++i)
            if (auto n = std::get_if<Num>(&r.head.args[i].node)) {
                const SortDecl& s = spec_.sort(p.sorts[i]);
                if (n->value < s.low || n->value > s.high)
                    semantic(r.head.args[i].pos, "value " + std::to_string(n->value) + " outside sort " + s.name);
            }
        spec_.rules.push_back(std::move(r));
    }

    std::vector<Literal> body() {
        std::vector<Literal> out{literal()};
        while (is(",")) {
            shift();
            out.push_back(literal());
        }
        return out;
    }

    AtomLit atom_tail(std::string pred, SourcePos pos) {
        AtomLit a;
        a.pred = std::move(pred);
        (void)pos;
        expect("(");
        a.args.push_back(expr());
        while (is(",")) {
            shift();
            a.args.push_back(expr());
        }
        expect(")");
        return a;
    }

    static std::optional<Cmp> cmp_of(const Token& t) {
        if (t.kind != Tok::punct) return std::nullopt;
        if (t.text == "=") return Cmp::eq;
        if (t.text == "!=") return Cmp::ne;
        if (t.text == "<") return Cmp::lt;
        if (t.text == "<=") return Cmp::le;
        if (t.text == ">") return Cmp::gt;
        if (t.text == ">=") return Cmp::ge;
        return std::nullopt;
    }

    Literal literal() {
        Literal l;
        l.pos = cur_.pos;
        if (is_word("not")) {
            shift();
            AtomLit a = atom_tail(name(), l.pos);
            a.negated = true;
            l.node = std::move(a);
            return l;
        }
        Expr lhs = expr();
        if (auto c = cmp_of(cur_)) {
            shift();
            Compare cmp{*c, std::move(lhs), expr()};
            l.node = std::move(cmp);
            return l;
        }
        auto ap = std::get_if<Apply>(&lhs.node);
        if (!ap) fail("expected a comparison operator", {"'='", "'!='", "'<'", "'<='", "'>'", "'>='"});
        l.node = AtomLit{ap->name, ap->args, false};
        return l;
    }

    struct DepthGuard {
        int& d;
        explicit DepthGuard(int& depth, const Parser& p) : d(depth) {
            if (++d > kMaxDepth) p.fail("expression nested too deeply");
        }
        ~DepthGuard() { --d; }
    };

    Expr expr() {
        DepthGuard g(depth_, *this);
        Expr e = product();
        while (is("+") || is("-")) {
            ArithOp op = is("+") ? ArithOp::add : ArithOp::sub;
            SourcePos pos = cur_.pos;
            shift();
            Expr rhs = product();
            e = Expr{Arith{op, {std::move(e), std::move(rhs)}}, pos};
        }
        return e;
    }

    Expr product() {
        Expr e = unary();
        while (is("*")) {
            SourcePos pos = cur_.pos;
            shift();
            Expr rhs = unary();
            e = Expr{Arith{ArithOp::mul, {std::move(e), std::move(rhs)}}, pos};
        }
        return e;
    }

    Expr unary() {
        DepthGuard g(depth_, *this);
        if (is("-")) {
            SourcePos pos = cur_.pos;
            shift();
            if (cur_.kind == Tok::integer) {
                if (cur_.overflow) semantic(cur_.pos, "integer literal out of range");
                Value v = -cur_.value;
                shift();
                return Expr{Num{v}, pos};
            }
            return Expr{Arith{ArithOp::neg, {unary()}}, pos};
        }
        return primary();
    }

    Expr primary() {
        SourcePos pos = cur_.pos;
        if (cur_.kind == Tok::integer) {
            if (cur_.overflow) semantic(pos, "integer literal out of range");
            Value v = cur_.value;
            shift();
            return Expr{Num{v}, pos};
        }
        if (cur_.kind == Tok::var) {
            std::string v = cur_.text;
            shift();
            return Expr{Var{v}, pos};
        }
        if (is("(")) {
            shift();
            Expr e = expr();
            expect(")");
            return e;
        }
        if (cur_.kind == Tok::hash) return aggregate();
        if (is_word("abs")) {
            shift();
            expect("(");
            Expr e = expr();
            expect(")");
            return Expr{Arith{ArithOp::abs, {std::move(e)}}, pos};
        }
        if (cur_.kind == Tok::ident) {
            std::string n = name();
            AtomLit a = atom_tail(n, pos);
            return Expr{Apply{a.pred, std::move(a.args)}, pos};
        }
        fail("expected a term, got '" + cur_.text + "'", {"integer", "variable", "name", "'('", "#count", "#sum"});
    }

    Expr aggregate() {
        SourcePos pos = cur_.pos;
        auto agg = std::make_shared<Aggregate>();
        if (cur_.text == "#count") agg->kind = AggKind::count;
        else if (cur_.text == "#sum") agg->kind = AggKind::sum;
        else fail("unknown aggregate " + cur_.text, {"#count", "#sum"});
        shift();
        expect("{");
        if (agg->kind == AggKind::sum) {
            agg->weight = expr();
            expect(",");
        }
        if (cur_.kind != Tok::var) fail("expected the aggregate variable", {"variable"});
        agg->var = cur_.text;
        shift();
        expect_word("in");
        agg->sort = sort_ref();
        if (is(":")) {
            shift();
            agg->cond = body();
        }
        expect("}");
        return Expr{std::shared_ptr<const Aggregate>(std::move(agg)), pos};
    }

    // ---- analysis ----

    void bind(Scope& sc, const std::string& var, const std::string& sort, SourcePos pos) {
        auto [it, fresh] = sc.sort_of.emplace(var, sort);
        if (!fresh && it->second != sort)
            throw ParseError(ParseError::Kind::semantic, pos,
                             "variable " + var + " used with sorts " + it->second + " and " + sort, {}, var);
        if (fresh) note(sc, var);
    }

    void note(Scope& sc, const std::string& var) {
        if (sc.local.count(var)) return;
        if (std::find(sc.vars.begin(), sc.vars.end(), var) == sc.vars.end()) sc.vars.push_back(var);
    }

    void infer(const Expr& e, Scope& sc, std::optional<std::string> sort) {
        if (auto v = std::get_if<Var>(&e.node)) {
            if (sc.local.count(v->name) && !active_.count(v->name))
                semantic(e.pos, "variable " + v->name + " is bound by an aggregate", v->name);
            if (sort) bind(sc, v->name, *sort, e.pos);
            else note(sc, v->name);
        } else if (auto n = std::get_if<Num>(&e.node)) {
            if (sort) {
                const SortDecl& s = spec_.sort(*sort);
                if (n->value < s.low || n->value > s.high)
                    semantic(e.pos, "value " + std::to_string(n->value) + " outside sort " + s.name);
            }
        } else if (auto a = std::get_if<Apply>(&e.node)) {
            Symbol k = spec_.kind(a->name);
            if (k == Symbol::function) {
                const FuncDecl& f = spec_.function(a->name);
                if (a->args.size() != f.args.size())
                    throw ParseError(ParseError::Kind::arity, e.pos, "function " + f.name + " takes " +
                                                                         std::to_string(f.args.size()) + " arguments");
                for (std::size_t i = 0; i < a->args.size(); ++i) {
                    if (!is_static(a->args[i])) semantic(a->args[i].pos, "nested function terms are not supported");
                    infer(a->args[i], sc, f.args[i]);
                }
            } else if (k == Symbol::table) {
                if (a->args.size() != 1) throw ParseError(ParseError::Kind::arity, e.pos, "tables take one argument");
                infer(a->args[0], sc, spec_.table(a->name).sort);
            } else {
                semantic(e.pos, "undeclared function or table " + a->name);
            }
        } else if (auto ar = std::get_if<Arith>(&e.node)) {
            for (const auto& x : ar->args) infer(x, sc, std::nullopt);
        } else {
            const Aggregate& g = *std::get<std::shared_ptr<const Aggregate>>(e.node);
            if (sc.sort_of.count(g.var) && !sc.local.count(g.var))
                semantic(e.pos, "aggregate variable " + g.var + " already used outside the aggregate", g.var);
            if (active_.count(g.var)) semantic(e.pos, "nested aggregates reuse variable " + g.var, g.var);
            sc.local.insert(g.var);
            active_.insert(g.var);
            bind(sc, g.var, g.sort, e.pos);
            if (g.weight) {
                infer(*g.weight, sc, std::nullopt);
                require_static(*g.weight, "aggregate weight");
            }
            int dynamic = 0;
            for (const auto& l : g.cond) {
                infer(l, sc);
                if (l.is_atom()) {
                    Symbol k = spec_.kind(l.atom().pred);
                    if (k != Symbol::defined_pred) ++dynamic;
                } else {
                    require_static(l.compare().lhs, "comparison in an aggregate condition");
                    require_static(l.compare().rhs, "comparison in an aggregate condition");
                }
            }
            active_.erase(g.var);
            if (dynamic > 1) semantic(e.pos, "an aggregate condition may hold at most one open atom");
            if (sort) semantic(e.pos, "aggregate used as an argument");
        }
    }

    void infer(const Literal& l, Scope& sc) {
        if (!l.is_atom()) {
            infer(l.compare().lhs, sc, std::nullopt);
            infer(l.compare().rhs, sc, std::nullopt);
            return;
        }
        const AtomLit& a = l.atom();
        Symbol k = spec_.kind(a.pred);
        std::vector<std::string> sorts;
        if (k == Symbol::open_pred || k == Symbol::defined_pred) {
            sorts = spec_.pred(a.pred).sorts;
        } else if (k == Symbol::function) {
            const FuncDecl& f = spec_.function(a.pred);
            sorts = f.args;
            sorts.push_back(f.range);
        } else if (k == Symbol::channel) {
            const FuncDecl& f = spec_.function(spec_.channel(a.pred).func);
            sorts = {f.args[0], f.range};
        } else {
            semantic(l.pos, "undeclared predicate " + a.pred);
        }
        if (a.args.size() != sorts.size())
            throw ParseError(ParseError::Kind::arity, l.pos,
                             a.pred + " takes " + std::to_string(sorts.size()) + " arguments");
        if (a.negated && k != Symbol::defined_pred) semantic(l.pos, "negation is only allowed on defined predicates");
        for (std::size_t i = 0; i < a.args.size(); ++i) {
            if (!is_static(a.args[i])) semantic(a.args[i].pos, "atom arguments must not contain function terms");
            infer(a.args[i], sc, sorts[i]);
        }
    }

    bool is_static(const Expr& e) const {
        if (auto a = std::get_if<Apply>(&e.node)) {
            if (spec_.kind(a->name) == Symbol::function) return false;
            for (const auto& x : a->args)
                if (!is_static(x)) return false;
            return true;
        }
        if (auto ar = std::get_if<Arith>(&e.node)) {
            for (const auto& x : ar->args)
                if (!is_static(x)) return false;
            return true;
        }
        if (std::holds_alternative<std::shared_ptr<const Aggregate>>(e.node)) return false;
        return true;
    }

    void require_static(const Expr& e, const std::string& what) const {
        if (!is_static(e)) semantic(e.pos, what + " must not depend on functions or aggregates");
    }

    static void check_typed(const Scope& sc, SourcePos pos) {
        for (const auto& v : sc.vars)
            if (!sc.sort_of.count(v))
                throw ParseError(ParseError::Kind::semantic, pos, "untyped variable " + v, {}, v);
    }

    void analyse(SpecConstraint& c) {
        for (const auto& l : c.body) {
            infer(l, c.scope);
            if (!l.is_atom()) {
                require_static(l.compare().lhs, "comparison in a constraint body");
                require_static(l.compare().rhs, "comparison in a constraint body");
            }
        }
        for (const auto& q : c.consequences) {
            infer(q.lhs, c.scope, std::nullopt);
            infer(q.rhs, c.scope, std::nullopt);
        }
        check_typed(c.scope, c.pos);
    }

    void analyse(Objective& o) {
        bind(o.scope, o.var, o.sort, o.pos);
        infer(o.term, o.scope, std::nullopt);
        check_typed(o.scope, o.pos);
        for (const auto& v : o.scope.vars)
            if (v != o.var) semantic(o.pos, "variable " + v + " is not bound in the objective", v);
    }

    void stratify() {
        std::map<std::string, int> level;
        for (const auto& [p, _] : deps_) level[p] = 0;
        const int limit = static_cast<int>(level.size()) + 1;
        for (bool changed = true; changed;) {
            changed = false;
            for (const auto& [head, ds] : deps_) {
                for (const auto& [q, neg] : ds) {
                    int need = level[q] + (neg ? 1 : 0);
                    if (level[head] < need) {
                        level[head] = need;
                        changed = true;
                        if (need > limit) {
                            SourcePos pos;
                            for (const auto& r : spec_.rules)
                                if (r.head.pred == head) pos = r.pos;
                            semantic(pos, "defined predicate " + head + " depends negatively on itself (not stratified)");
                        }
                    }
                }
            }
        }
    }
};

} // namespace detail

/// Parses and checks a .dl specification. Throws ParseError.
inline Spec parse_spec(std::string_view source) { return detail::Parser(source).spec(); }

} // namespace lpcsp::declar

#endif // LPCSP_DECLAR_PARSER_HPP
