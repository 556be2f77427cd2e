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
// Canonical text for rule programs. Binary operands that are themselves
// binary are parenthesized, so rendering then parsing is the identity.

#ifndef LPCSP_LP_RENDER_HPP
#define LPCSP_LP_RENDER_HPP

#include <lpcsp/lp/ast.hpp>

namespace lpcsp::lp {

inline std::string render(const Term& t);

namespace detail {

inline bool is_binary(const Term& t) {
    auto e = std::get_if<ArithExpr>(&t.node);
    return e && e->op != ArithOp::abs;
}

inline std::string operand(const Term& t) { return is_binary(t) ? "(" + render(t) + ")" : render(t); }

template <class T, class F>
std::string join(const std::vector<T>& xs, const char* sep, F&& f) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += sep;
        out += f(xs[i]);
    }
    return out;
}

} // namespace detail

inline std::string render(const Term& t) {
    if (auto v = std::get_if<Variable>(&t.node)) return v->name;
    if (auto c = std::get_if<IntConst>(&t.node)) return std::to_string(c->value);
    const auto& e = std::get<ArithExpr>(t.node);
    if (e.op == ArithOp::abs) return "abs(" + render(e.args.at(0)) + ")";
    return detail::operand(e.args.at(0)) + (e.op == ArithOp::add ? " + " : " - ") + detail::operand(e.args.at(1));
}

inline std::string render(const Atom& a) {
    if (a.args.empty()) return a.pred;
    return a.pred + "(" + detail::join(a.args, ",", [](const Term& t) { return render(t); }) + ")";
}

inline const char* rel_text(Rel r) {
    switch (r) {
    case Rel::lt: return "<";
    case Rel::le: return "<=";
    case Rel::eq: return "=";
    case Rel::ne: return "!=";
    }
    return "?";
}

inline std::string render(const Literal& l) {
    if (l.is_atom()) return (l.negated ? "not " : "") + render(l.atom());
    const auto& b = l.builtin();
    return render(b.lhs) + " " + rel_text(b.rel) + " " + render(b.rhs);
}

inline std::string render_guards(const std::vector<Atom>& guards) {
    std::string out;
    for (const auto& g : guards) out += " : " + render(g);
    return out;
}

inline std::string render(const Rule& r) {
    auto body = [](const std::vector<Literal>& b) {
        return detail::join(b, ", ", [](const Literal& l) { return render(l); });
    };
    return std::visit(
        [&](const auto& n) -> std::string {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, DomainDecl>) {
                return n.pred + "(" + std::to_string(n.low) + ".." + std::to_string(n.high) + ").";
            } else if constexpr (std::is_same_v<N, Fact>) {
                return render(n.atom) + ".";
            } else if constexpr (std::is_same_v<N, NormalRule>) {
                return render(n.head) + (n.body.empty() ? "" : " :- " + body(n.body)) + ".";
            } else if constexpr (std::is_same_v<N, ChoiceRule>) {
                std::string out;
                if (n.lower) out += std::to_string(*n.lower) + " ";
                out += "{" + detail::join(n.elements, "; ", [](const ChoiceElement& e) {
                           return render(e.atom) + render_guards(e.guards);
                       }) + "}";
                if (n.upper) out += " " + std::to_string(*n.upper);
                if (!n.body.empty()) out += " :- " + body(n.body);
                return out + ".";
            } else if constexpr (std::is_same_v<N, IntegrityConstraint>) {
                return ":- " + body(n.body) + ".";
            } else {
                std::string out = n.head ? render(*n.head) + " :- " : ":- ";
                out += n.kind == AggKind::count ? "#count{" : "#sum{";
                out += detail::join(n.elements, "; ", [](const WeightedElement& e) {
                    return render(e.literal) + (e.weight ? " = " + render(*e.weight) : "") + render_guards(e.guards);
                });
                out += n.rel == AggRel::at_least ? "} >= " : "} <= ";
                out += render(n.bound);
                if (!n.body.empty()) out += ", " + body(n.body);
                return out + ".";
            }
        },
        r.node);
}

inline std::string render(const Program& p) {
    std::string out;
    for (const auto& r : p.rules) out += render(r) + "\n";
    return out;
}

} // namespace lpcsp::lp

#endif // LPCSP_LP_RENDER_HPP
