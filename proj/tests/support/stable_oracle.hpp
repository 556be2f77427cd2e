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
// Reference stable-model semantics evaluated directly on ground programs,
// without the complement translation: choice heads that are in the
// candidate support themselves in the reduct, and weight bodies use the
// usual reduct that fixes negative literals to their candidate value.

#ifndef LPCSP_TESTS_STABLE_ORACLE_HPP
#define LPCSP_TESTS_STABLE_ORACLE_HPP

#include <lpcsp/ground/program.hpp>

#include <random>
#include <set>
#include <stdexcept>

namespace oracle {

using lpcsp::Value;
using lpcsp::ground::AtomId;
using lpcsp::ground::GroundProgram;

inline bool is_stable(const GroundProgram& gp, const std::vector<char>& in) {
    namespace g = lpcsp::ground;
    auto body = [&](const std::vector<AtomId>& pos, const std::vector<AtomId>& neg) {
        for (AtomId a : pos)
            if (!in[static_cast<std::size_t>(a)]) return false;
        for (AtomId a : neg)
            if (in[static_cast<std::size_t>(a)]) return false;
        return true;
    };
    for (const auto& r : gp.rules) {
        if (auto c = std::get_if<g::ConstraintRule>(&r); c && body(c->pos, c->neg)) return false;
        if (auto c = std::get_if<g::ChoiceRule>(&r); c && body(c->pos, c->neg)) {
            Value k = 0;
            for (AtomId h : c->heads) k += in[static_cast<std::size_t>(h)];
            if (k < c->lower || k > c->upper) return false;
        }
        if (auto w = std::get_if<g::WeightRule>(&r); w && !w->head) {
            Value s = 0;
            for (const auto& e : w->elements)
                if ((in[static_cast<std::size_t>(e.atom)] != 0) == e.positive) s += e.weight;
            if (s >= w->lower) return false;
        }
    }
    std::vector<char> lm(in.size(), 0);
    for (AtomId f : gp.facts) lm[static_cast<std::size_t>(f)] = 1;
    for (bool changed = true; changed;) {
        changed = false;
        auto derive = [&](AtomId h) {
            if (!lm[static_cast<std::size_t>(h)]) {
                lm[static_cast<std::size_t>(h)] = 1;
                changed = true;
            }
        };
        auto reduct_body = [&](const std::vector<AtomId>& pos, const std::vector<AtomId>& neg) {
            for (AtomId a : neg)
                if (in[static_cast<std::size_t>(a)]) return false;
            for (AtomId a : pos)
                if (!lm[static_cast<std::size_t>(a)]) return false;
            return true;
        };
        for (const auto& r : gp.rules) {
            if (auto n = std::get_if<g::NormalRule>(&r)) {
                if (reduct_body(n->pos, n->neg)) derive(n->head);
            } else if (auto c = std::get_if<g::ChoiceRule>(&r)) {
                if (reduct_body(c->pos, c->neg))
                    for (AtomId h : c->heads)
                        if (in[static_cast<std::size_t>(h)]) derive(h);
            } else if (auto w = std::get_if<g::WeightRule>(&r); w && w->head) {
                Value s = 0;
                for (const auto& e : w->elements) {
                    if (e.positive && lm[static_cast<std::size_t>(e.atom)]) s += e.weight;
                    if (!e.positive && !in[static_cast<std::size_t>(e.atom)]) s += e.weight;
                }
                if (s >= w->lower) derive(*w->head);
            }
        }
    }
    return lm == in;
}

/// All stable models by enumerating every subset of the atom table.
inline std::set<std::vector<AtomId>> stable_models(const GroundProgram& gp) {
    const std::size_t n = gp.atoms.size();
    if (n > 20) throw std::runtime_error("subset oracle refuses more than 20 atoms");
    std::set<std::vector<AtomId>> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<char> in(n + 1, 0);
        std::vector<AtomId> m;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) {
                in[i + 1] = 1;
                m.push_back(static_cast<AtomId>(i + 1));
            }
        if (is_stable(gp, in)) out.insert(m);
    }
    return out;
}

/// Random ground program over atoms p1..pn mixing all four rule kinds.
inline GroundProgram random_ground_program(std::mt19937_64& rng, std::size_t max_atoms = 12,
                                           std::size_t max_rules = 25, bool normal_only = false) {
    auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    GroundProgram gp;
    const int n = uni(1, static_cast<int>(max_atoms));
    for (int i = 1; i <= n; ++i) gp.atom("p", {i});
    auto pick = [&] { return static_cast<AtomId>(uni(1, n)); };
    auto some = [&](int most) {
        std::vector<AtomId> v;
        for (int k = uni(0, most); k > 0; --k) v.push_back(pick());
        return v;
    };
    const int rules = uni(0, static_cast<int>(max_rules));
    for (int i = 0; i < rules; ++i) {
        const int kind = normal_only ? uni(0, 5) : uni(0, 9);
        if (kind == 0) {
            gp.add_fact(pick());
        } else if (kind <= 5) {
            gp.add_normal(pick(), some(2), some(2));
        } else if (kind == 6) {
            gp.add_constraint(some(2), some(2));
        } else if (kind <= 8) {
            std::vector<AtomId> heads = some(4);
            if (heads.empty()) heads.push_back(pick());
            std::set<AtomId> distinct(heads.begin(), heads.end());
            const int h = static_cast<int>(distinct.size());
            const int lo = uni(0, h);
            const int hi = uni(lo, h);
            gp.add_choice(lo, heads, hi, some(2), some(1));
        } else {
            std::vector<lpcsp::ground::WeightLiteral> els;
            Value total = 0;
            for (int k = uni(1, 4); k > 0; --k) {
                Value w = uni(1, 3);
                els.push_back({pick(), uni(0, 2) != 0, w});
                total += w;
            }
            std::optional<AtomId> head;
            if (uni(0, 1)) head = pick();
            gp.add_weight(head, uni(1, static_cast<int>(total)), els);
        }
    }
    return gp;
}

} // namespace oracle

#endif // LPCSP_TESTS_STABLE_ORACLE_HPP
