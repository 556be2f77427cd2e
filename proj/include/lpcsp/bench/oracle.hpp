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
// Brute-force oracles. Each scans its whole search space with a direct
// checker and refuses (OracleRefusal) when the space exceeds the cap.

#ifndef LPCSP_BENCH_ORACLE_HPP
#define LPCSP_BENCH_ORACLE_HPP

#include <lpcsp/bench/graph.hpp>
#include <lpcsp/bench/schedule.hpp>
#include <lpcsp/declar/evaluate.hpp>
#include <lpcsp/ground/program.hpp>

#include <numeric>

namespace lpcsp::bench {

class OracleRefusal : public Error {
public:
    using Error::Error;
};

inline constexpr std::uint64_t kDefaultOracleCap = 10'000'000;

namespace detail {

inline std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t out = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (base != 0 && out > UINT64_MAX / base) return UINT64_MAX;
        out *= base;
    }
    return out;
}

inline void refuse_over(std::uint64_t space, std::uint64_t cap, const std::string& what) {
    if (space > cap)
        throw OracleRefusal(what + ": search space " + (space == UINT64_MAX ? std::string("> 2^64") : std::to_string(space)) +
                            " exceeds the oracle cap " + std::to_string(cap));
}

} // namespace detail

// ---- queens ----

inline bool queens_ok(const std::vector<Value>& q) {
    const auto n = static_cast<Value>(q.size());
    for (Value i = 0; i < n; ++i) {
        if (q[static_cast<std::size_t>(i)] < 1 || q[static_cast<std::size_t>(i)] > n) return false;
        for (Value j = i + 1; j < n; ++j) {
            Value d = q[static_cast<std::size_t>(i)] - q[static_cast<std::size_t>(j)];
            if (d == 0 || d == j - i || d == i - j) return false;
        }
    }
    return true;
}

/// All placements (row i holds column q[i]) over the n^n grid, odometer
/// order with the first row fastest.
inline std::vector<std::vector<Value>> queens_solutions(int n, std::uint64_t cap = kDefaultOracleCap) {
    if (n < 1) throw StructuralError("queens needs n >= 1");
    detail::refuse_over(detail::saturating_pow(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(n)), cap,
                        "queens");
    std::vector<std::vector<Value>> out;
    std::vector<Value> q(static_cast<std::size_t>(n), 1);
    for (;;) {
        if (queens_ok(q)) out.push_back(q);
        std::size_t i = 0;
        while (i < q.size() && ++q[i] > n) q[i++] = 1;
        if (i == q.size()) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// The same set from permutations in lexicographic order (n! candidates).
inline std::vector<std::vector<Value>> queens_solutions_perm(int n, std::uint64_t cap = kDefaultOracleCap) {
    if (n < 1) throw StructuralError("queens needs n >= 1");
    std::uint64_t space = 1;
    for (int i = 2; i <= n; ++i) space = space > UINT64_MAX / static_cast<std::uint64_t>(i) ? UINT64_MAX : space * static_cast<std::uint64_t>(i);
    detail::refuse_over(space, cap, "queens");
    std::vector<std::vector<Value>> out;
    std::vector<Value> q(static_cast<std::size_t>(n));
    std::iota(q.begin(), q.end(), 1);
    do {
        if (queens_ok(q)) out.push_back(q);
    } while (std::next_permutation(q.begin(), q.end()));
    return out;
}

// ---- colouring ----

inline bool coloring_ok(const GraphInstance& g, const std::vector<Value>& c) {
    if (static_cast<int>(c.size()) != g.n) return false;
    for (Value x : c)
        if (x < 1 || x > g.k) return false;
    for (auto [u, v] : g.edges)
        if (c[static_cast<std::size_t>(u - 1)] == c[static_cast<std::size_t>(v - 1)]) return false;
    return true;
}

/// Number of proper colourings; scans all k^n maps.
inline std::uint64_t coloring_count(const GraphInstance& g, std::uint64_t cap = kDefaultOracleCap) {
    validate(g);
    detail::refuse_over(detail::saturating_pow(static_cast<std::uint64_t>(g.k), static_cast<std::uint64_t>(g.n)), cap,
                        "coloring");
    // edges grouped by their larger endpoint, checked when it is coloured
    std::vector<std::vector<int>> back(static_cast<std::size_t>(g.n + 1));
    for (auto [u, v] : g.edges) back[static_cast<std::size_t>(v)].push_back(u);
    std::vector<int> c(static_cast<std::size_t>(g.n + 1), 0);
    std::uint64_t count = 0;
    auto rec = [&](auto&& self, int v) -> void {
        if (v > g.n) {
            ++count;
            return;
        }
        for (int x = 1; x <= g.k; ++x) {
            bool ok = true;
            for (int u : back[static_cast<std::size_t>(v)])
                if (c[static_cast<std::size_t>(u)] == x) ok = false;
            if (!ok) continue;
            c[static_cast<std::size_t>(v)] = x;
            self(self, v + 1);
        }
    };
    rec(rec, 1);
    return count;
}

// ---- scheduling ----

/// First violated requirement of a schedule, or nullopt.
inline std::optional<std::string> schedule_violation(const ScheduleInstance& s, const std::vector<Value>& starts) {
    const auto jobs = maintenances(s);
    if (starts.size() != jobs.size()) return "wrong number of starts";
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        const auto& m = jobs[j];
        const std::string name = "maintenance " + std::to_string(j + 1);
        if (starts[j] < 1 || starts[j] + m.duration - 1 > s.weeks) return name + " leaves the horizon";
        for (Value w = starts[j]; w < starts[j] + m.duration; ++w)
            if (s.prohibited.count({m.unit, static_cast<int>(w)})) return name + " uses a prohibited week";
        for (const auto& f : s.fixed)
            if (f.unit == m.unit && f.index == m.index && f.start != starts[j]) return name + " ignores its fixed start";
        if (j > 0 && jobs[j - 1].unit == m.unit && starts[j] < starts[j - 1] + jobs[j - 1].duration)
            return name + " overlaps the previous maintenance of its unit";
    }
    for (int w = 1; w <= s.weeks; ++w) {
        std::map<int, Value> plant, area;
        for (std::size_t j = 0; j < jobs.size(); ++j)
            if (starts[j] <= w && w < starts[j] + jobs[j].duration) {
                ++plant[jobs[j].plant];
                area[jobs[j].area] += jobs[j].capacity;
            }
        for (auto [p, n] : plant)
            if (n > s.plant_limit.at(p)) return "plant " + std::to_string(p) + " over its limit in week " + std::to_string(w);
        for (auto [a, c] : area)
            if (c > s.area_limit.at(a)) return "area " + std::to_string(a) + " over its limit in week " + std::to_string(w);
    }
    return std::nullopt;
}

struct ScheduleOracle {
    std::uint64_t feasible = 0;
    std::optional<Value> best;
    std::vector<Value> best_starts;
};

/// Scans every start combination (jobs in order, all weeks of the horizon);
/// combinations are rejected by schedule_violation-equivalent checks.
inline ScheduleOracle schedule_oracle(const ScheduleInstance& s, std::uint64_t cap = kDefaultOracleCap) {
    validate(s);
    const auto jobs = maintenances(s);
    // Horizon, prohibitions and fixed starts bound each job's scan range.
    std::vector<std::vector<Value>> cand;
    std::uint64_t scan = 1;
    for (const auto& j : jobs) {
        std::vector<Value> c;
        for (Value st = 1; st + j.duration - 1 <= s.weeks; ++st) {
            bool ok = true;
            for (Value w = st; w < st + j.duration; ++w)
                if (s.prohibited.count({j.unit, static_cast<int>(w)})) ok = false;
            for (const auto& f : s.fixed)
                if (f.unit == j.unit && f.index == j.index && f.start != st) ok = false;
            if (ok) c.push_back(st);
        }
        auto n = static_cast<std::uint64_t>(std::max<std::size_t>(c.size(), 1));
        scan = scan > UINT64_MAX / n ? UINT64_MAX : scan * n;
        cand.push_back(std::move(c));
    }
    detail::refuse_over(scan, cap, "schedule");
    const auto W = static_cast<std::size_t>(s.weeks + 1);
    std::map<int, std::vector<Value>> plant, area;
    for (const auto& j : jobs) {
        plant[j.plant].assign(W, 0);
        area[j.area].assign(W, 0);
    }
    std::vector<Value> out(W, 0);  // capacity out per week
    std::vector<Value> starts(jobs.size(), 0);
    ScheduleOracle res;
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == jobs.size()) {
            ++res.feasible;
            const Value total = total_capacity(s);
            Value v = INT64_MAX;
            for (std::size_t w = 1; w < W; ++w) v = std::min(v, total - out[w] - s.peaks[w - 1]);
            if (!res.best || v > *res.best) {
                res.best = v;
                res.best_starts = starts;
            }
            return;
        }
        const auto& j = jobs[i];
        for (Value st : cand[i]) {
            if (i > 0 && jobs[i - 1].unit == j.unit && st < starts[i - 1] + jobs[i - 1].duration) continue;
            bool ok = true;
            for (Value w = st; w < st + j.duration; ++w) {
                auto ws = static_cast<std::size_t>(w);
                if (plant[j.plant][ws] + 1 > s.plant_limit.at(j.plant) ||
                    area[j.area][ws] + j.capacity > s.area_limit.at(j.area))
                    ok = false;
            }
            if (!ok) continue;
            for (Value w = st; w < st + j.duration; ++w) {
                auto ws = static_cast<std::size_t>(w);
                ++plant[j.plant][ws];
                area[j.area][ws] += j.capacity;
                out[ws] += j.capacity;
            }
            starts[i] = st;
            self(self, i + 1);
            for (Value w = st; w < st + j.duration; ++w) {
                auto ws = static_cast<std::size_t>(w);
                --plant[j.plant][ws];
                area[j.area][ws] -= j.capacity;
                out[ws] -= j.capacity;
            }
        }
    };
    rec(rec, 0);
    return res;
}

// ---- ground programs ----

/// Stable-model test on the ground program itself: choice heads in the
/// candidate support themselves in the reduct, weight bodies use the reduct
/// that fixes negative literals to their candidate value. in[a] for atom
/// ids 1..n (index 0 unused).
inline bool is_stable_direct(const ground::GroundProgram& gp, const std::vector<char>& in) {
    using ground::AtomId;
    auto at = [&](AtomId a) { return in[static_cast<std::size_t>(a)] != 0; };
    auto body = [&](const std::vector<AtomId>& pos, const std::vector<AtomId>& neg) {
        return std::all_of(pos.begin(), pos.end(), at) && std::none_of(neg.begin(), neg.end(), at);
    };
    for (const auto& r : gp.rules) {
        if (auto c = std::get_if<ground::ConstraintRule>(&r); c && body(c->pos, c->neg)) return false;
        if (auto c = std::get_if<ground::ChoiceRule>(&r); c && body(c->pos, c->neg)) {
            Value k = 0;
            for (AtomId h : c->heads) k += at(h);
            if (k < c->lower || k > c->upper) return false;
        }
        if (auto w = std::get_if<ground::WeightRule>(&r); w && !w->head) {
            Value s = 0;
            for (const auto& e : w->elements)
                if (at(e.atom) == e.positive) s += e.weight;
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
            return std::none_of(neg.begin(), neg.end(), at) &&
                   std::all_of(pos.begin(), pos.end(), [&](AtomId a) { return lm[static_cast<std::size_t>(a)] != 0; });
        };
        for (const auto& r : gp.rules) {
            if (auto n = std::get_if<ground::NormalRule>(&r)) {
                if (reduct_body(n->pos, n->neg)) derive(n->head);
            } else if (auto c = std::get_if<ground::ChoiceRule>(&r)) {
                if (reduct_body(c->pos, c->neg))
                    for (AtomId h : c->heads)
                        if (at(h)) derive(h);
            } else if (auto w = std::get_if<ground::WeightRule>(&r); w && w->head) {
                Value s = 0;
                for (const auto& e : w->elements) {
                    if (e.positive && lm[static_cast<std::size_t>(e.atom)]) s += e.weight;
                    if (!e.positive && !at(e.atom)) s += e.weight;
                }
                if (s >= w->lower) derive(*w->head);
            }
        }
    }
    return lm == in;
}

/// All stable models (ascending atom ids) by testing every subset of the
/// atom table.
inline std::set<std::vector<ground::AtomId>> stable_models_brute(const ground::GroundProgram& gp,
                                                                  std::uint64_t cap = std::uint64_t{1} << 20) {
    const std::size_t n = gp.atoms.size();
    detail::refuse_over(detail::saturating_pow(2, n), cap, "stable models");
    std::set<std::vector<ground::AtomId>> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<char> in(n + 1, 0);
        std::vector<ground::AtomId> m;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) {
                in[i + 1] = 1;
                m.push_back(static_cast<ground::AtomId>(i + 1));
            }
        if (is_stable_direct(gp, in)) out.insert(m);
    }
    return out;
}

// ---- .dl specifications ----

struct DeclarOracle {
    std::uint64_t models = 0;
    std::optional<Value> best;
};

/// Scans every interpretation (all function tables, all open-atom sets)
/// with the direct evaluator.
inline DeclarOracle declar_oracle(const declar::Spec& spec, std::uint64_t cap = kDefaultOracleCap) {
    using namespace declar;
    struct Slot {
        std::string name;
        std::vector<Value> args;
        std::vector<Value> values;
        bool atom;
    };
    std::vector<Slot> slots;
    auto tuples = [&](const std::vector<std::string>& sorts) {
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
    };
    std::uint64_t space = 1;
    auto grow = [&](std::uint64_t n) { space = (n != 0 && space > UINT64_MAX / n) ? UINT64_MAX : space * n; };
    for (const auto& f : spec.functions)
        for (const auto& t : tuples(f.args)) {
            slots.push_back({f.name, t, sort_values(spec.sort(f.range)), false});
            grow(slots.back().values.size());
        }
    for (const auto& p : spec.preds)
        if (p.open)
            for (const auto& t : tuples(p.sorts)) {
                slots.push_back({p.name, t, {0, 1}, true});
                grow(2);
            }
    detail::refuse_over(space, cap, "specification");
    Defined defined(spec);
    DeclarOracle res;
    std::vector<std::size_t> pick(slots.size(), 0);
    for (;;) {
        Interpretation in;
        for (const auto& p : spec.preds)
            if (p.open) in.open[p.name];
        for (std::size_t i = 0; i < slots.size(); ++i) {
            const Slot& s = slots[i];
            Value v = s.values[pick[i]];
            if (s.atom) {
                if (v) in.open[s.name].insert(s.args);
            } else {
                in.functions[s.name][s.args] = v;
            }
        }
        if (!first_violation(spec, defined, in)) {
            ++res.models;
            if (spec.objective) {
                Value v = *objective_value(spec, in);
                if (!res.best || v > *res.best) res.best = v;
            }
        }
        std::size_t i = 0;
        while (i < slots.size() && ++pick[i] == slots[i].values.size()) pick[i++] = 0;
        if (i == slots.size()) break;
    }
    return res;
}

} // namespace lpcsp::bench

#endif // LPCSP_BENCH_ORACLE_HPP
