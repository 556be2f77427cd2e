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
// Line-oriented text form of ground programs (docs/ground-format.md):
//
//   #atoms
//   1 d(1)
//   2 pos(1,1)
//   #facts
//   d(1).
//   #rules
//   a :- b, not c.
//   #choice 1 {pos(1,1); pos(1,2)} 1 :- d(1).
//   :- pos(1,1), pos(2,2).
//   #weight h :- 3 {a = 1; not b = 2}.
//
// A headless #weight line forbids its body. Lines starting with % are
// comments.

#ifndef LPCSP_GROUND_TEXT_HPP
#define LPCSP_GROUND_TEXT_HPP

#include <lpcsp/ground/program.hpp>

#include <cctype>
#include <sstream>
#include <string_view>

namespace lpcsp::ground {

namespace detail {

inline std::string body_text(const AtomTable& t, const std::vector<AtomId>& pos, const std::vector<AtomId>& neg) {
    std::string out;
    for (AtomId a : pos) out += (out.empty() ? "" : ", ") + t.name(a);
    for (AtomId a : neg) out += (out.empty() ? "not " : ", not ") + t.name(a);
    return out;
}

} // namespace detail

inline std::string rule_text(const GroundProgram& gp, const GroundRule& r) {
    const AtomTable& t = gp.atoms;
    return std::visit(
        [&](const auto& x) -> std::string {
            using R = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<R, NormalRule>) {
                return t.name(x.head) + " :- " + detail::body_text(t, x.pos, x.neg) + ".";
            } else if constexpr (std::is_same_v<R, ChoiceRule>) {
                std::string out = "#choice " + std::to_string(x.lower) + " {";
                for (std::size_t i = 0; i < x.heads.size(); ++i) out += (i ? "; " : "") + t.name(x.heads[i]);
                out += "} " + std::to_string(x.upper);
                std::string b = detail::body_text(t, x.pos, x.neg);
                return out + (b.empty() ? "" : " :- " + b) + ".";
            } else if constexpr (std::is_same_v<R, ConstraintRule>) {
                std::string b = detail::body_text(t, x.pos, x.neg);
                return b.empty() ? ":- ." : ":- " + b + ".";
            } else {
                std::string out = "#weight ";
                if (x.head) out += t.name(*x.head) + " ";
                out += ":- " + std::to_string(x.lower) + " {";
                for (std::size_t i = 0; i < x.elements.size(); ++i) {
                    const auto& e = x.elements[i];
                    out += (i ? "; " : "") + std::string(e.positive ? "" : "not ") + t.name(e.atom) + " = " +
                           std::to_string(e.weight);
                }
                return out + "}.";
            }
        },
        r);
}

inline std::string write_ground(const GroundProgram& gp) {
    std::string out = "#atoms\n";
    for (AtomId a = 1; static_cast<std::size_t>(a) <= gp.atoms.size(); ++a)
        out += std::to_string(a) + " " + gp.atoms.name(a) + "\n";
    out += "#facts\n";
    for (AtomId f : gp.facts) out += gp.atoms.name(f) + ".\n";
    out += "#rules\n";
    for (const auto& r : gp.rules) out += rule_text(gp, r) + "\n";
    return out;
}

namespace detail {

class GroundReader {
public:
    GroundReader(std::string_view line, int lineno, const std::map<std::string, AtomId>& names)
        : s_(line), line_(lineno), names_(names) {}

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(ParseError::Kind::syntax, SourcePos{line_, static_cast<int>(i_) + 1}, msg);
    }

    void ws() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }

    bool eat(std::string_view tok) {
        ws();
        if (s_.substr(i_, tok.size()) == tok) {
            i_ += tok.size();
            return true;
        }
        return false;
    }

    void need(std::string_view tok) {
        if (!eat(tok)) fail("expected '" + std::string(tok) + "'");
    }

    bool at_end() {
        ws();
        return i_ >= s_.size();
    }

    bool peek_word(std::string_view w) {
        ws();
        return s_.substr(i_, w.size()) == w && (i_ + w.size() >= s_.size() || s_[i_ + w.size()] == ' ');
    }

    Value integer() {
        ws();
        std::size_t start = i_;
        if (i_ < s_.size() && s_[i_] == '-') ++i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (start == i_ || (i_ == start + 1 && s_[start] == '-')) fail("expected integer");
        try {
            return std::stoll(std::string(s_.substr(start, i_ - start)));
        } catch (const std::exception&) {
            fail("integer out of range");
        }
    }

    std::string name() {
        ws();
        std::size_t start = i_;
        if (i_ >= s_.size() || !std::islower(static_cast<unsigned char>(s_[i_]))) fail("expected atom");
        while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
        if (i_ < s_.size() && s_[i_] == '(') {
            while (i_ < s_.size() && s_[i_] != ')') ++i_;
            if (i_ >= s_.size()) fail("unterminated atom");
            ++i_;
        }
        return std::string(s_.substr(start, i_ - start));
    }

    AtomId atom() {
        std::string n = name();
        auto it = names_.find(n);
        if (it == names_.end()) fail("atom " + n + " not in the atom table");
        return it->second;
    }

    // b1, not b2, ... up to '.'
    void body(std::vector<AtomId>& pos, std::vector<AtomId>& neg) {
        if (eat(".")) return;
        while (true) {
            if (peek_word("not")) {
                eat("not");
                neg.push_back(atom());
            } else {
                pos.push_back(atom());
            }
            if (eat(",")) continue;
            need(".");
            return;
        }
    }

private:
    std::string_view s_;
    std::size_t i_ = 0;
    int line_;
    const std::map<std::string, AtomId>& names_;
};

} // namespace detail

/// Inverse of write_ground. Atom ids are taken from the #atoms section.
inline GroundProgram read_ground(std::string_view text) {
    GroundProgram gp;
    std::map<std::string, AtomId> names;
    std::istringstream in{std::string(text)};
    std::string line;
    enum { none, atoms, facts, rules } section = none;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '%') continue;
        std::string_view l(line);
        l.remove_prefix(first);
        if (l == "#atoms") { section = atoms; continue; }
        if (l == "#facts") { section = facts; continue; }
        if (l == "#rules") { section = rules; continue; }
        detail::GroundReader r(l, lineno, names);
        switch (section) {
        case none: r.fail("content before a section header");
        case atoms: {
            Value id = r.integer();
            std::string n = r.name();
            if (id != static_cast<Value>(gp.atoms.size()) + 1) r.fail("atom ids must be dense and ascending");
            // Re-parse the textual atom into predicate and arguments.
            GroundAtom a;
            std::size_t paren = n.find('(');
            a.pred = n.substr(0, paren);
            if (paren != std::string::npos) {
                std::string inner = n.substr(paren + 1, n.size() - paren - 2);
                std::stringstream ss(inner);
                std::string part;
                while (std::getline(ss, part, ',')) {
                    try {
                        std::size_t used = 0;
                        a.args.push_back(std::stoll(part, &used));
                        if (used != part.size()) r.fail("bad atom argument");
                    } catch (const std::logic_error&) {
                        r.fail("bad atom argument");
                    }
                }
            }
            if (gp.atoms.find(a)) r.fail("duplicate atom " + n);
            names[n] = gp.atoms.intern(a);
            if (!r.at_end()) r.fail("trailing text");
            break;
        }
        case facts:
            gp.add_fact(r.atom());
            r.need(".");
            break;
        case rules: {
            if (r.eat("#choice")) {
                Value lo = r.integer();
                r.need("{");
                std::vector<AtomId> heads;
                if (!r.eat("}")) {
                    do heads.push_back(r.atom());
                    while (r.eat(";"));
                    r.need("}");
                }
                Value hi = r.integer();
                std::vector<AtomId> pos, neg;
                if (r.eat(":-")) r.body(pos, neg);
                else r.need(".");
                gp.add_choice(lo, heads, hi, pos, neg);
            } else if (r.eat("#weight")) {
                std::optional<AtomId> head;
                if (!r.eat(":-")) {
                    head = r.atom();
                    r.need(":-");
                }
                Value lower = r.integer();
                r.need("{");
                std::vector<WeightLiteral> els;
                if (!r.eat("}")) {
                    do {
                        bool positive = !r.peek_word("not");
                        if (!positive) r.eat("not");
                        AtomId a = r.atom();
                        r.need("=");
                        els.push_back({a, positive, r.integer()});
                    } while (r.eat(";"));
                    r.need("}");
                }
                r.need(".");
                gp.add_weight(head, lower, els);
            } else if (r.eat(":-")) {
                std::vector<AtomId> pos, neg;
                r.body(pos, neg);
                gp.add_constraint(pos, neg);
            } else {
                AtomId h = r.atom();
                r.need(":-");
                std::vector<AtomId> pos, neg;
                r.body(pos, neg);
                gp.add_normal(h, pos, neg);
            }
            if (!r.at_end()) r.fail("trailing text");
            break;
        }
        }
    }
    return gp;
}

} // namespace lpcsp::ground

#endif // LPCSP_GROUND_TEXT_HPP
