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
// Propositional programs: an atom table with dense ids from 1 and four rule
// kinds. The add_* members normalize on entry, so every stored rule meets
// the invariants (head not in its own body, 0 <= lower <= upper <= |heads|,
// positive weights).

#ifndef LPCSP_GROUND_PROGRAM_HPP
#define LPCSP_GROUND_PROGRAM_HPP

#include <lpcsp/common.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace lpcsp::ground {

using AtomId = std::int32_t;

struct GroundAtom {
    std::string pred;
    std::vector<Value> args;
    friend auto operator<=>(const GroundAtom&, const GroundAtom&) = default;
};

inline std::string to_string(const GroundAtom& a) {
    if (a.args.empty()) return a.pred;
    std::string out = a.pred + "(";
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(a.args[i]);
    }
    return out + ")";
}

class AtomTable {
public:
    AtomId intern(const GroundAtom& a) {
        auto [it, fresh] = index_.emplace(a, static_cast<AtomId>(atoms_.size() + 1));
        if (fresh) atoms_.push_back(a);
        return it->second;
    }

    std::optional<AtomId> find(const GroundAtom& a) const {
        auto it = index_.find(a);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    const GroundAtom& atom(AtomId id) const {
        if (!contains(id)) throw StructuralError("atom id " + std::to_string(id) + " not in table");
        return atoms_[static_cast<std::size_t>(id - 1)];
    }

    std::string name(AtomId id) const { return to_string(atom(id)); }
    bool contains(AtomId id) const { return id >= 1 && static_cast<std::size_t>(id) <= atoms_.size(); }
    std::size_t size() const noexcept { return atoms_.size(); }

private:
    std::vector<GroundAtom> atoms_;
    std::map<GroundAtom, AtomId> index_;
};

struct NormalRule {
    AtomId head = 0;
    std::vector<AtomId> pos, neg;
    friend bool operator==(const NormalRule&, const NormalRule&) = default;
};

struct ChoiceRule {
    Value lower = 0;
    std::vector<AtomId> heads;
    Value upper = 0;
    std::vector<AtomId> pos, neg;
    friend bool operator==(const ChoiceRule&, const ChoiceRule&) = default;
};

struct ConstraintRule {
    std::vector<AtomId> pos, neg;
    friend bool operator==(const ConstraintRule&, const ConstraintRule&) = default;
};

struct WeightLiteral {
    AtomId atom = 0;
    bool positive = true;
    Value weight = 1;
    friend bool operator==(const WeightLiteral&, const WeightLiteral&) = default;
};

/// head <- lower <= [elements]. Without a head the body is forbidden.
struct WeightRule {
    std::optional<AtomId> head;
    Value lower = 0;
    std::vector<WeightLiteral> elements;
    friend bool operator==(const WeightRule&, const WeightRule&) = default;
};

using GroundRule = std::variant<NormalRule, ChoiceRule, ConstraintRule, WeightRule>;

class GroundProgram {
public:
    AtomTable atoms;
    std::vector<GroundRule> rules;
    std::set<AtomId> facts;

    AtomId atom(const std::string& pred, std::vector<Value> args = {}) {
        return atoms.intern(GroundAtom{pred, std::move(args)});
    }

    void add_fact(AtomId a) {
        check(a);
        facts.insert(a);
    }

    void add_normal(AtomId head, std::vector<AtomId> pos, std::vector<AtomId> neg) {
        check(head);
        if (!tidy(pos, neg)) return;
        if (std::binary_search(pos.begin(), pos.end(), head)) return;
        if (std::binary_search(neg.begin(), neg.end(), head)) {
            rules.push_back(ConstraintRule{std::move(pos), std::move(neg)});
            return;
        }
        if (pos.empty() && neg.empty()) {
            facts.insert(head);
            return;
        }
        rules.push_back(NormalRule{head, std::move(pos), std::move(neg)});
    }

    void add_choice(Value lower, std::vector<AtomId> heads, Value upper, std::vector<AtomId> pos,
                    std::vector<AtomId> neg) {
        if (lower > upper) throw StructuralError("choice lower bound exceeds upper bound");
        for (AtomId h : heads) check(h);
        if (!tidy(pos, neg)) return;
        std::sort(heads.begin(), heads.end());
        heads.erase(std::unique(heads.begin(), heads.end()), heads.end());
        const Value n = static_cast<Value>(heads.size());
        lower = std::max<Value>(lower, 0);
        if (lower > n) {
            rules.push_back(ConstraintRule{std::move(pos), std::move(neg)});
            return;
        }
        upper = std::min(upper, n);
        if (upper < 0) {
            rules.push_back(ConstraintRule{std::move(pos), std::move(neg)});
            return;
        }
        rules.push_back(ChoiceRule{lower, std::move(heads), upper, std::move(pos), std::move(neg)});
    }

    void add_constraint(std::vector<AtomId> pos, std::vector<AtomId> neg) {
        if (!tidy(pos, neg)) return;
        rules.push_back(ConstraintRule{std::move(pos), std::move(neg)});
    }

    void add_weight(std::optional<AtomId> head, Value lower, std::vector<WeightLiteral> elements) {
        if (head) check(*head);
        std::vector<WeightLiteral> kept;
        Value total = 0;
        for (const auto& e : elements) {
            check(e.atom);
            if (e.weight < 0) throw StructuralError("negative weight on " + atoms.name(e.atom));
            if (e.weight == 0) continue;
            total = checked::add(total, e.weight);
            kept.push_back(e);
        }
        if (lower > total) return;
        if (lower <= 0) {
            if (head) facts.insert(*head);
            else rules.push_back(ConstraintRule{});
            return;
        }
        rules.push_back(WeightRule{head, lower, std::move(kept)});
    }

    void check(AtomId a) const {
        if (!atoms.contains(a)) throw StructuralError("atom id " + std::to_string(a) + " not in table");
    }

    /// Throws StructuralError unless every rule meets the stored invariants.
    void validate() const {
        for (AtomId f : facts) check(f);
        for (const auto& r : rules) {
            std::visit(
                [&](const auto& x) {
                    using R = std::decay_t<decltype(x)>;
                    if constexpr (std::is_same_v<R, WeightRule>) {
                        if (x.head) check(*x.head);
                        for (const auto& e : x.elements) {
                            check(e.atom);
                            if (e.weight <= 0) throw StructuralError("non-positive weight");
                        }
                    } else {
                        for (AtomId a : x.pos) check(a);
                        for (AtomId a : x.neg) check(a);
                        if constexpr (std::is_same_v<R, NormalRule>) {
                            check(x.head);
                            if (std::count(x.pos.begin(), x.pos.end(), x.head) ||
                                std::count(x.neg.begin(), x.neg.end(), x.head))
                                throw StructuralError("normal rule head occurs in its body");
                        } else if constexpr (std::is_same_v<R, ChoiceRule>) {
                            for (AtomId a : x.heads) check(a);
                            if (x.lower < 0 || x.lower > x.upper || x.upper > static_cast<Value>(x.heads.size()))
                                throw StructuralError("choice bounds out of range");
                        }
                    }
                },
                r);
        }
    }

private:
    // Sorts and dedupes a body; false if it can never hold.
    bool tidy(std::vector<AtomId>& pos, std::vector<AtomId>& neg) const {
        for (AtomId a : pos) check(a);
        for (AtomId a : neg) check(a);
        std::sort(pos.begin(), pos.end());
        pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
        std::sort(neg.begin(), neg.end());
        neg.erase(std::unique(neg.begin(), neg.end()), neg.end());
        for (AtomId a : pos)
            if (std::binary_search(neg.begin(), neg.end(), a)) return false;
        return true;
    }
};

} // namespace lpcsp::ground

#endif // LPCSP_GROUND_PROGRAM_HPP
