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
// Choice-free normal form. Every rule becomes `head <- lower <= [lits]`,
// with head 0 standing for falsity. A choice rule l {a1..an} u <- B turns
// into, per element, a <- B, not a' and a' <- B, not a with a fresh
// complement a', plus two headless weight rules for the bounds. Body
// literals there weigh K = n + 1 so the bound part only counts once all of
// B holds:
//
//   upper:  0 <- |B|K + u + 1 <= [B = K, a1 = 1, ..., an = 1]
//   lower:  0 <- |B|K + n - l + 1 <= [B = K, not a1 = 1, ..., not an = 1]

#ifndef LPCSP_STABLE_NORMALIZE_HPP
#define LPCSP_STABLE_NORMALIZE_HPP

#include <lpcsp/ground/program.hpp>

#include <functional>

namespace lpcsp::stable {

using ground::AtomId;
using ground::GroundProgram;

struct NLit {
    AtomId atom = 0;
    bool positive = true;
    Value weight = 1;
};

struct NRule {
    AtomId head = 0;  // 0: falsity
    Value lower = 0;
    std::vector<NLit> lits;
    Value total = 0;  // sum of weights
};

struct Complement {
    AtomId atom;      // the complement atom
    AtomId original;  // the choice head it shadows
    std::vector<AtomId> pos, neg;  // the choice body
};

struct NormalizedProgram {
    std::size_t original_atoms = 0;
    std::size_t atom_count = 0;  // original plus complements
    std::vector<NRule> rules;
    std::vector<Complement> complements;
    /// True when the positive dependency graph is acyclic.
    bool tight = true;
};

namespace detail {

inline NRule basic(AtomId head, const std::vector<AtomId>& pos, const std::vector<AtomId>& neg) {
    NRule r;
    r.head = head;
    for (AtomId a : pos) r.lits.push_back({a, true, 1});
    for (AtomId a : neg) r.lits.push_back({a, false, 1});
    r.lower = r.total = static_cast<Value>(r.lits.size());
    return r;
}

inline bool has_positive_cycle(const NormalizedProgram& np) {
    std::vector<std::vector<AtomId>> out(np.atom_count + 1);
    for (const auto& r : np.rules)
        if (r.head)
            for (const auto& l : r.lits)
                if (l.positive) out[static_cast<std::size_t>(r.head)].push_back(l.atom);
    // Iterative three-colour DFS.
    std::vector<char> colour(np.atom_count + 1, 0);
    for (std::size_t root = 1; root <= np.atom_count; ++root) {
        if (colour[root]) continue;
        std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
        colour[root] = 1;
        while (!stack.empty()) {
            auto& [v, i] = stack.back();
            if (i < out[v].size()) {
                std::size_t w = static_cast<std::size_t>(out[v][i++]);
                if (colour[w] == 1) return true;
                if (colour[w] == 0) {
                    colour[w] = 1;
                    stack.push_back({w, 0});
                }
            } else {
                colour[v] = 2;
                stack.pop_back();
            }
        }
    }
    return false;
}

} // namespace detail

inline NormalizedProgram normalize(const GroundProgram& gp) {
    gp.validate();
    NormalizedProgram np;
    np.original_atoms = gp.atoms.size();
    np.atom_count = gp.atoms.size();
    for (AtomId f : gp.facts) {
        NRule r;
        r.head = f;
        np.rules.push_back(r);
    }
    for (const auto& rule : gp.rules) {
        std::visit(
            [&](const auto& x) {
                using R = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<R, ground::NormalRule>) {
                    np.rules.push_back(detail::basic(x.head, x.pos, x.neg));
                } else if constexpr (std::is_same_v<R, ground::ConstraintRule>) {
                    np.rules.push_back(detail::basic(0, x.pos, x.neg));
                } else if constexpr (std::is_same_v<R, ground::ChoiceRule>) {
                    for (AtomId a : x.heads) {
                        AtomId c = static_cast<AtomId>(++np.atom_count);
                        np.complements.push_back({c, a, x.pos, x.neg});
                        auto neg = x.neg;
                        neg.push_back(c);
                        np.rules.push_back(detail::basic(a, x.pos, neg));
                        neg = x.neg;
                        neg.push_back(a);
                        np.rules.push_back(detail::basic(c, x.pos, neg));
                    }
                    const Value n = static_cast<Value>(x.heads.size());
                    const Value k = n + 1;
                    const Value b = static_cast<Value>(x.pos.size() + x.neg.size());
                    auto bounds = [&](bool heads_positive, Value need) {
                        NRule r;
                        for (AtomId a : x.pos) r.lits.push_back({a, true, k});
                        for (AtomId a : x.neg) r.lits.push_back({a, false, k});
                        for (AtomId a : x.heads) r.lits.push_back({a, heads_positive, 1});
                        r.lower = checked::add(checked::mul(b, k), need);
                        for (const auto& l : r.lits) r.total += l.weight;
                        np.rules.push_back(std::move(r));
                    };
                    if (x.upper < n) bounds(true, x.upper + 1);
                    if (x.lower > 0) bounds(false, n - x.lower + 1);
                } else {
                    NRule r;
                    r.head = x.head.value_or(0);
                    r.lower = x.lower;
                    for (const auto& e : x.elements) {
                        if (e.weight < 0) throw StructuralError("negative weight");
                        r.lits.push_back({e.atom, e.positive, e.weight});
                        r.total = checked::add(r.total, e.weight);
                    }
                    np.rules.push_back(std::move(r));
                }
            },
            rule);
    }
    np.tight = !detail::has_positive_cycle(np);
    return np;
}

/// Extends a set of original atoms with the complements it determines.
inline std::vector<char> complete_candidate(const NormalizedProgram& np, const std::vector<AtomId>& candidate) {
    std::vector<char> in(np.atom_count + 1, 0);
    for (AtomId a : candidate) {
        if (a < 1 || static_cast<std::size_t>(a) > np.original_atoms) return {};
        in[static_cast<std::size_t>(a)] = 1;
    }
    for (const auto& c : np.complements) {
        bool body = !in[static_cast<std::size_t>(c.original)];
        for (AtomId p : c.pos) body = body && in[static_cast<std::size_t>(p)];
        for (AtomId q : c.neg) body = body && !in[static_cast<std::size_t>(q)];
        in[static_cast<std::size_t>(c.atom)] = body ? 1 : 0;
    }
    return in;
}

/// Stable-model test: every headless rule is unviolated and the candidate
/// (with its complements) is the least model of the reduct.
inline bool check_stable(const NormalizedProgram& np, const std::vector<AtomId>& candidate) {
    std::vector<char> in = complete_candidate(np, candidate);
    if (in.empty()) return false;
    auto at = [&](AtomId a) { return in[static_cast<std::size_t>(a)] != 0; };
    // Reduct: negative literals become constants under the candidate.
    std::vector<Value> need(np.rules.size());
    std::vector<std::vector<std::pair<std::size_t, Value>>> watch(np.atom_count + 1);
    std::vector<char> lm(np.atom_count + 1, 0);
    std::vector<AtomId> queue;
    for (std::size_t i = 0; i < np.rules.size(); ++i) {
        const NRule& r = np.rules[i];
        Value sat = 0, neg_sat = 0;
        for (const auto& l : r.lits) {
            if (at(l.atom) == l.positive) sat += l.weight;
            if (!l.positive && !at(l.atom)) neg_sat += l.weight;
        }
        if (r.head == 0) {
            if (sat >= r.lower) return false;
            continue;
        }
        need[i] = r.lower - neg_sat;
        for (const auto& l : r.lits)
            if (l.positive) watch[static_cast<std::size_t>(l.atom)].push_back({i, l.weight});
        if (need[i] <= 0 && !lm[static_cast<std::size_t>(r.head)]) {
            lm[static_cast<std::size_t>(r.head)] = 1;
            queue.push_back(r.head);
        }
    }
    while (!queue.empty()) {
        AtomId a = queue.back();
        queue.pop_back();
        for (auto [i, w] : watch[static_cast<std::size_t>(a)]) {
            need[i] -= w;
            const AtomId h = np.rules[i].head;
            if (need[i] <= 0 && !lm[static_cast<std::size_t>(h)]) {
                lm[static_cast<std::size_t>(h)] = 1;
                queue.push_back(h);
            }
        }
    }
    for (std::size_t a = 1; a <= np.atom_count; ++a)
        if ((lm[a] != 0) != (in[a] != 0)) return false;
    return true;
}

inline bool check_stable(const GroundProgram& gp, const std::vector<AtomId>& candidate) {
    return check_stable(normalize(gp), candidate);
}

} // namespace lpcsp::stable

#endif // LPCSP_STABLE_NORMALIZE_HPP
