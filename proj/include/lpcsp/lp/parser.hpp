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
// Hand-written lexer and recursive-descent parser for .lp programs, plus the
// static checks (arity, domain predicates, range restriction). The grammar
// is in docs/lp-grammar.md.

#ifndef LPCSP_LP_PARSER_HPP
#define LPCSP_LP_PARSER_HPP

#include <lpcsp/lp/ast.hpp>

#include <algorithm>
#include <cctype>
#include <string_view>

namespace lpcsp::lp {

namespace detail {

enum class Tok {
    ident,
    variable,
    integer,
    punct,  // ( ) { } , ; . .. : :- + - < <= = != > >= #count #sum
    end,
};

struct Token {
    Tok kind = Tok::end;
    std::string text;
    Value value = 0;
    bool overflow = false;
    SourcePos pos;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip_space();
        Token t;
        t.pos = pos_;
        if (i_ >= src_.size()) return t;
        const char c = src_[i_];
        if (std::islower(static_cast<unsigned char>(c))) {
            t.kind = Tok::ident;
            t.text = word();
            return t;
        }
        if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
            t.kind = Tok::variable;
            t.text = word();
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            t.kind = Tok::integer;
            while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) {
                const int d = src_[i_] - '0';
                if (t.value > (INT64_MAX - d) / 10) t.overflow = true;
                else t.value = t.value * 10 + d;
                t.text += src_[i_];
                advance();
            }
            return t;
        }
        t.kind = Tok::punct;
        auto two = [&](const char* s) { return src_.substr(i_, 2) == s; };
        for (const char* op : {":-", "..", "<=", ">=", "!=", "=="}) {
            if (two(op)) {
                t.text = op;
                advance();
                advance();
                if (t.text == "==") t.text = "=";
                return t;
            }
        }
        if (c == '#') {
            advance();
            std::string w = (i_ < src_.size() && std::islower(static_cast<unsigned char>(src_[i_]))) ? word() : "";
            t.text = "#" + w;
            return t;
        }
        t.text = std::string(1, c);
        advance();
        return t;
    }

private:
    void advance() {
        if (src_[i_] == '\n') {
            ++pos_.line;
            pos_.column = 1;
        } else {
            ++pos_.column;
        }
        ++i_;
    }

    void skip_space() {
        while (i_ < src_.size()) {
            const char c = src_[i_];
            if (c == '%') {
                while (i_ < src_.size() && src_[i_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    std::string word() {
        std::string w;
        while (i_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[i_])) || src_[i_] == '_')) {
            w += src_[i_];
            advance();
        }
        return w;
    }

    std::string_view src_;
    std::size_t i_ = 0;
    SourcePos pos_;
};

class Parser {
public:
    explicit Parser(std::string_view src) : lex_(src) { cur_ = lex_.next(); }

    Program program() {
        Program p;
        while (cur_.kind != Tok::end) p.rules.push_back(statement());
        return p;
    }

private:
    static constexpr int kMaxDepth = 200;

    [[noreturn]] void fail(std::string msg, std::vector<std::string> expected = {}) const {
        std::string got = cur_.kind == Tok::end ? "end of input" : "'" + cur_.text + "'";
        throw ParseError(ParseError::Kind::syntax, cur_.pos, msg + ", got " + got, std::move(expected));
    }

    [[noreturn]] void semantic(SourcePos pos, std::string msg) const {
        throw ParseError(ParseError::Kind::semantic, pos, std::move(msg));
    }

    bool is(const char* p) const { return cur_.kind == Tok::punct && cur_.text == p; }

    void shift() { cur_ = lex_.next(); }

    void expect(const char* p) {
        if (!is(p)) fail("unexpected token", {std::string("'") + p + "'"});
        shift();
    }

    Value integer() {
        if (cur_.kind != Tok::integer) fail("unexpected token", {"integer"});
        if (cur_.overflow) fail("integer literal out of range");
        Value v = cur_.value;
        shift();
        return v;
    }

    Rule statement() {
        Rule r;
        r.pos = cur_.pos;
        if (is(":-")) {
            shift();
            Body b = body();
            if (b.agg) {
                b.agg->body = std::move(b.literals);
                r.node = std::move(*b.agg);
            } else {
                r.node = IntegrityConstraint{std::move(b.literals)};
            }
        } else if (cur_.kind == Tok::integer || is("{")) {
            r.node = choice();
        } else if (cur_.kind == Tok::ident && cur_.text != "not" && cur_.text != "abs") {
            SourcePos at = cur_.pos;
            std::optional<std::pair<Value, Value>> interval;
            Atom head = atom(&interval);
            if (interval) {
                if (is(":-")) semantic(at, "interval declarations cannot have a body");
                r.node = DomainDecl{head.pred, interval->first, interval->second};
            } else if (is(":-")) {
                shift();
                Body b = body();
                if (b.agg) {
                    b.agg->head = std::move(head);
                    b.agg->body = std::move(b.literals);
                    r.node = std::move(*b.agg);
                } else {
                    r.node = NormalRule{std::move(head), std::move(b.literals)};
                }
            } else {
                r.node = Fact{std::move(head)};
            }
        } else {
            fail("unexpected token at start of rule", {"atom", "':-'", "'{'", "integer"});
        }
        expect(".");
        return r;
    }

    ChoiceRule choice() {
        ChoiceRule c;
        if (cur_.kind == Tok::integer) c.lower = integer();
        expect("{");
        if (!is("}")) {
            while (true) {
                ChoiceElement e;
                e.atom = atom(nullptr);
                while (is(":")) {
                    shift();
                    e.guards.push_back(atom(nullptr));
                }
                c.elements.push_back(std::move(e));
                if (is(";") || is(",")) {
                    shift();
                    continue;
                }
                break;
            }
        }
        expect("}");
        if (cur_.kind == Tok::integer) c.upper = integer();
        if (is(":-")) {
            shift();
            Body b = body();
            if (b.agg) fail("aggregate not allowed in a choice rule body");
            c.body = std::move(b.literals);
        }
        return c;
    }

    struct Body {
        std::vector<Literal> literals;
        std::optional<AggregateRule> agg;
    };

    Body body() {
        Body b;
        while (true) {
            if (is("#count") || is("#sum")) {
                if (b.agg) fail("only one aggregate per rule");
                b.agg = aggregate();
            } else {
                b.literals.push_back(literal());
            }
            if (!is(",")) break;
            shift();
        }
        return b;
    }

    AggregateRule aggregate() {
        AggregateRule a;
        a.kind = is("#sum") ? AggKind::sum : AggKind::count;
        shift();
        expect("{");
        if (!is("}")) {
            while (true) {
                WeightedElement e;
                bool neg = false;
                if (cur_.kind == Tok::ident && cur_.text == "not") {
                    neg = true;
                    shift();
                }
                e.literal = Literal{atom(nullptr), neg};
                if (is("=")) {
                    if (a.kind != AggKind::sum) fail("weights are only allowed in #sum");
                    shift();
                    e.weight = term(0);
                }
                while (is(":")) {
                    shift();
                    e.guards.push_back(atom(nullptr));
                }
                a.elements.push_back(std::move(e));
                if (is(";") || is(",")) {
                    shift();
                    continue;
                }
                break;
            }
        }
        expect("}");
        if (is(">=") || is(">")) {
            bool strict = is(">");
            shift();
            a.rel = AggRel::at_least;
            a.bound = term(0);
            if (strict) a.bound = Term::add(std::move(a.bound), Term::num(1));
        } else if (is("<=") || is("<")) {
            bool strict = is("<");
            shift();
            a.rel = AggRel::at_most;
            a.bound = term(0);
            if (strict) a.bound = Term::sub(std::move(a.bound), Term::num(1));
        } else {
            fail("expected aggregate comparison", {"'>='", "'<='", "'>'", "'<'"});
        }
        return a;
    }

    Literal literal() {
        if (cur_.kind == Tok::ident && cur_.text == "not") {
            shift();
            if (cur_.kind != Tok::ident || cur_.text == "abs" || cur_.text == "not")
                fail("expected atom after 'not'", {"atom"});
            return Literal{atom(nullptr), true};
        }
        if (cur_.kind == Tok::ident && cur_.text != "abs") return Literal{atom(nullptr), false};
        Term lhs = term(0);
        Rel rel;
        bool swap = false;
        if (is("<")) rel = Rel::lt;
        else if (is("<=")) rel = Rel::le;
        else if (is("=")) rel = Rel::eq;
        else if (is("!=")) rel = Rel::ne;
        else if (is(">")) rel = Rel::lt, swap = true;
        else if (is(">=")) rel = Rel::le, swap = true;
        else fail("expected comparison", {"'<'", "'<='", "'='", "'!='", "'>'", "'>='"});
        shift();
        Term rhs = term(0);
        if (swap) std::swap(lhs, rhs);
        return Literal{Builtin{rel, std::move(lhs), std::move(rhs)}, false};
    }

    Atom atom(std::optional<std::pair<Value, Value>>* interval) {
        if (cur_.kind != Tok::ident || cur_.text == "not" || cur_.text == "abs") fail("expected atom", {"atom"});
        Atom a;
        a.pred = cur_.text;
        shift();
        if (!is("(")) return a;
        shift();
        while (true) {
            SourcePos at = cur_.pos;
            Term t = term(0);
            if (is("..")) {
                if (!interval || !a.args.empty()) semantic(at, "interval only allowed as the single argument of a fact");
                shift();
                Term hi = term(0);
                auto lo_c = std::get_if<IntConst>(&t.node);
                auto hi_c = std::get_if<IntConst>(&hi.node);
                if (!lo_c || !hi_c) semantic(at, "interval bounds must be integers");
                *interval = std::make_pair(lo_c->value, hi_c->value);
                expect(")");
                if (!is(".")) fail("interval declaration must end the rule", {"'.'"});
                return a;
            }
            a.args.push_back(std::move(t));
            if (is(",")) {
                shift();
                continue;
            }
            break;
        }
        expect(")");
        return a;
    }

    Term term(int depth) {
        if (depth > kMaxDepth) fail("expression nested too deeply");
        Term t = primary(depth);
        while (is("+") || is("-")) {
            bool plus = is("+");
            shift();
            Term r = primary(depth);
            t = plus ? Term::add(std::move(t), std::move(r)) : Term::sub(std::move(t), std::move(r));
        }
        return t;
    }

    Term primary(int depth) {
        if (cur_.kind == Tok::variable) {
            Term t = Term::var(cur_.text);
            shift();
            return t;
        }
        if (cur_.kind == Tok::integer) return Term::num(integer());
        if (is("-")) {
            shift();
            return Term::num(-integer());
        }
        if (cur_.kind == Tok::ident && cur_.text == "abs") {
            shift();
            expect("(");
            Term inner = term(depth + 1);
            expect(")");
            return Term::abs(std::move(inner));
        }
        if (is("(")) {
            shift();
            Term inner = term(depth + 1);
            expect(")");
            return inner;
        }
        fail("expected term", {"variable", "integer", "'abs'", "'('"});
    }

    Lexer lex_;
    Token cur_;
};

inline const Atom* rule_head(const Rule& r) {
    if (auto n = std::get_if<NormalRule>(&r.node)) return &n->head;
    if (auto f = std::get_if<Fact>(&r.node)) return &f->atom;
    if (auto a = std::get_if<AggregateRule>(&r.node)) return a->head ? &*a->head : nullptr;
    return nullptr;
}

template <class F>
void for_each_atom(const Rule& r, F&& f) {
    auto lits = [&](const std::vector<Literal>& body) {
        for (const auto& l : body)
            if (l.is_atom()) f(l.atom());
    };
    std::visit(
        [&](const auto& n) {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, Fact>) {
                f(n.atom);
            } else if constexpr (std::is_same_v<N, NormalRule>) {
                f(n.head);
                lits(n.body);
            } else if constexpr (std::is_same_v<N, ChoiceRule>) {
                for (const auto& e : n.elements) {
                    f(e.atom);
                    for (const auto& g : e.guards) f(g);
                }
                lits(n.body);
            } else if constexpr (std::is_same_v<N, IntegrityConstraint>) {
                lits(n.body);
            } else if constexpr (std::is_same_v<N, AggregateRule>) {
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

} // namespace detail

/// Fills in arities and domain predicates and checks arity consistency,
/// guard and aggregate restrictions and range restriction.
inline void validate(Program& p) {
    using detail::for_each_atom;
    p.arities.clear();
    p.domain_preds.clear();
    for (const auto& r : p.rules) {
        auto note = [&](const std::string& pred, std::size_t arity) {
            auto [it, fresh] = p.arities.emplace(pred, arity);
            if (!fresh && it->second != arity)
                throw ParseError(ParseError::Kind::arity, r.pos,
                                 "predicate " + pred + " used with arity " + std::to_string(arity) +
                                     " and " + std::to_string(it->second));
        };
        if (auto d = std::get_if<DomainDecl>(&r.node)) note(d->pred, 1);
        for_each_atom(r, [&](const Atom& a) { note(a.pred, a.args.size()); });
        if (auto n = std::get_if<NormalRule>(&r.node); n && n->body.empty())
            throw ParseError(ParseError::Kind::semantic, r.pos, "rule with empty body; write it as a fact");
        if (auto c = std::get_if<ChoiceRule>(&r.node); c && c->lower && c->upper && *c->lower > *c->upper)
            throw ParseError(ParseError::Kind::semantic, r.pos, "choice lower bound exceeds upper bound");
        if (auto c = std::get_if<ChoiceRule>(&r.node); c && ((c->lower && *c->lower < 0) || (c->upper && *c->upper < 0)))
            throw ParseError(ParseError::Kind::semantic, r.pos, "choice bounds must be non-negative");
    }

    // Domain predicates: greatest set closed under "every defining rule is an
    // interval, a fact or a normal rule over positive domain atoms and
    // built-ins".
    std::map<std::string, bool> candidate;
    for (const auto& r : p.rules) {
        std::visit(
            [&](const auto& n) {
                using N = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<N, DomainDecl>) {
                    candidate.emplace(n.pred, true);
                } else if constexpr (std::is_same_v<N, Fact>) {
                    candidate.emplace(n.atom.pred, true);
                } else if constexpr (std::is_same_v<N, NormalRule>) {
                    candidate.emplace(n.head.pred, true);
                } else if constexpr (std::is_same_v<N, ChoiceRule>) {
                    for (const auto& e : n.elements) candidate[e.atom.pred] = false;
                } else if constexpr (std::is_same_v<N, AggregateRule>) {
                    if (n.head) candidate[n.head->pred] = false;
                }
            },
            r.node);
    }
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& r : p.rules) {
            auto n = std::get_if<NormalRule>(&r.node);
            if (!n || !candidate[n->head.pred]) continue;
            for (const auto& l : n->body) {
                if (!l.is_atom()) continue;
                auto it = candidate.find(l.atom().pred);
                if (l.negated || it == candidate.end() || !it->second) {
                    candidate[n->head.pred] = false;
                    changed = true;
                    break;
                }
            }
        }
    }
    for (const auto& [pred, ok] : candidate)
        if (ok) p.domain_preds.insert(pred);

    auto is_domain = [&](const Atom& a) { return p.domain_preds.count(a.pred) > 0; };
    auto plain_vars = [](const Atom& a, std::set<std::string>& out) {
        for (const auto& t : a.args)
            if (auto v = std::get_if<Variable>(&t.node)) out.insert(v->name);
    };
    auto range_error = [](const Rule& r, const std::string& var) {
        throw ParseError(ParseError::Kind::range_restriction, r.pos,
                         "variable " + var + " does not occur in a positive domain atom", {}, var);
    };

    for (const auto& r : p.rules) {
        std::set<std::string> global, bound;
        auto scan_body = [&](const std::vector<Literal>& body) {
            for (const auto& l : body) {
                collect_vars(l, global);
                if (l.is_atom() && !l.negated && is_domain(l.atom())) plain_vars(l.atom(), bound);
            }
        };
        auto check_global = [&] {
            for (const auto& v : global)
                if (!bound.count(v)) range_error(r, v);
        };
        auto check_guards = [&](const std::vector<Atom>& guards) {
            for (const auto& g : guards)
                if (!is_domain(g))
                    throw ParseError(ParseError::Kind::semantic, r.pos,
                                     "guard " + g.pred + " is not a domain predicate");
        };
        auto check_local = [&](std::set<std::string> vars, const std::vector<Atom>& guards) {
            std::set<std::string> local_bound = bound;
            for (const auto& g : guards) plain_vars(g, local_bound);
            for (const auto& g : guards) collect_vars(g, vars);
            for (const auto& v : vars)
                if (!local_bound.count(v)) range_error(r, v);
        };

        if (auto f = std::get_if<Fact>(&r.node)) {
            collect_vars(f->atom, global);
            check_global();
        } else if (auto n = std::get_if<NormalRule>(&r.node)) {
            collect_vars(n->head, global);
            scan_body(n->body);
            check_global();
        } else if (auto c = std::get_if<IntegrityConstraint>(&r.node)) {
            scan_body(c->body);
            check_global();
        } else if (auto ch = std::get_if<ChoiceRule>(&r.node)) {
            scan_body(ch->body);
            check_global();
            for (const auto& e : ch->elements) {
                check_guards(e.guards);
                std::set<std::string> vars;
                collect_vars(e.atom, vars);
                check_local(vars, e.guards);
            }
        } else if (auto a = std::get_if<AggregateRule>(&r.node)) {
            for (const auto& l : a->body)
                if (l.is_atom() && !is_domain(l.atom()))
                    throw ParseError(ParseError::Kind::semantic, r.pos,
                                     "body of an aggregate rule may only hold domain atoms and built-ins besides the aggregate");
            if (a->head) collect_vars(*a->head, global);
            collect_vars(a->bound, global);
            scan_body(a->body);
            check_global();
            for (const auto& e : a->elements) {
                check_guards(e.guards);
                std::set<std::string> vars;
                collect_vars(e.literal, vars);
                if (e.weight) collect_vars(*e.weight, vars);
                check_local(vars, e.guards);
            }
        }
    }
}

/// Parses and validates a program. Throws ParseError on any defect.
inline Program parse_program(std::string_view source) {
    Program p = detail::Parser(source).program();
    validate(p);
    return p;
}

} // namespace lpcsp::lp

#endif // LPCSP_LP_PARSER_HPP
