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
// Stable-model search over the normal form. Each node runs forward and
// backward propagation on the weight rules:
//
//   - a rule whose body holds makes its head true (falsity: conflict);
//   - an atom with no rule left whose body can still hold is false;
//   - a rule with a false head (or none) falsifies every open literal that
//     alone would complete its body;
//   - the only remaining support of a true atom must hold, so every open
//     literal it cannot do without is made true.
//
// On programs with positive loops an unfounded-set pass additionally
// falsifies atoms outside the least set derivable from atoms not yet false.
// Every leaf is confirmed with check_stable before it is reported.

#ifndef LPCSP_STABLE_SOLVER_HPP
#define LPCSP_STABLE_SOLVER_HPP

#include <lpcsp/stable/normalize.hpp>

#include <functional>
#include <optional>

namespace lpcsp::stable {

using Model = std::vector<AtomId>;  // true original atoms, ascending

struct SolverStats {
    std::uint64_t nodes = 0;
    std::uint64_t backtracks = 0;
    std::uint64_t propagations = 0;
    std::uint64_t rejected = 0;  // leaves that failed check_stable
    double wall_ms = 0;
};

struct SolverOptions {
    Deadline deadline;
    std::uint64_t poll_interval = 256;
};

class StableSolver {
public:
    explicit StableSolver(const GroundProgram& gp, SolverOptions options = {})
        : np_(normalize(gp)), options_(options) {
        build();
    }

    std::optional<Model> solve_first() {
        std::optional<Model> found;
        enumerate([&](const Model& m) {
            found = m;
            return false;
        });
        if (found) status_ = SearchStatus::complete;
        return found;
    }

    std::vector<Model> solve_all(std::optional<std::size_t> limit = std::nullopt) {
        std::vector<Model> out;
        enumerate(
            [&](const Model& m) {
                out.push_back(m);
                return true;
            },
            limit);
        return out;
    }

    std::size_t count(std::optional<std::size_t> limit = std::nullopt) {
        return enumerate([](const Model&) { return true; }, limit);
    }

    /// Visit models until the visitor returns false or `limit` is hit.
    std::size_t enumerate(const std::function<bool(const Model&)>& visit,
                          std::optional<std::size_t> limit = std::nullopt) {
        std::size_t found = 0;
        bool limited = false;
        run([&](const Model& m) {
            ++found;
            bool more = visit(m);
            if (limit && found >= *limit) {
                limited = true;
                return false;
            }
            return more;
        });
        if (limited && status_ == SearchStatus::complete) status_ = SearchStatus::limit_reached;
        return found;
    }

    /// Propagation fixpoint under the given decisions: per original atom
    /// (index = id) 1 true, -1 false, 0 open; absent on conflict.
    std::optional<std::vector<int>> consequences(const std::vector<std::pair<AtomId, bool>>& decisions) {
        undo_to(0);
        for (std::uint32_t r = 0; r < np_.rules.size(); ++r) rule_queue_.push_back(r);
        for (AtomId a = 1; static_cast<std::size_t>(a) <= np_.atom_count; ++a) atom_queue_.push_back(a);
        bool ok = propagate();
        for (const auto& [a, truth] : decisions) {
            if (!ok) break;
            if (a < 1 || static_cast<std::size_t>(a) > np_.original_atoms) throw StructuralError("decision on unknown atom");
            assign(a, truth);
            ok = propagate();
        }
        std::optional<std::vector<int>> out;
        if (ok) out.emplace(value_.begin(), value_.begin() + static_cast<std::ptrdiff_t>(np_.original_atoms + 1));
        undo_to(0);
        return out;
    }

    const SolverStats& stats() const noexcept { return stats_; }
    SearchStatus status() const noexcept { return status_; }
    const NormalizedProgram& normalized() const noexcept { return np_; }

private:
    struct Occ {
        std::uint32_t rule;
        Value weight;
        bool positive;
    };

    enum : signed char { kFalse = -1, kOpen = 0, kTrue = 1 };

    NormalizedProgram np_;
    SolverOptions options_;
    SolverStats stats_;
    SearchStatus status_ = SearchStatus::complete;

    std::vector<std::vector<Occ>> occ_;
    std::vector<std::vector<std::uint32_t>> heads_;
    std::vector<signed char> value_;
    std::vector<Value> sum_true_, sum_false_;
    std::vector<std::uint32_t> support_;
    std::vector<AtomId> trail_;
    std::vector<std::uint32_t> rule_queue_;
    std::vector<AtomId> atom_queue_;
    bool conflict_ = false;

    void build() {
        const std::size_t n = np_.atom_count + 1;
        occ_.assign(n, {});
        heads_.assign(n, {});
        value_.assign(n, kOpen);
        support_.assign(n, 0);
        sum_true_.assign(np_.rules.size(), 0);
        sum_false_.assign(np_.rules.size(), 0);
        for (std::uint32_t r = 0; r < np_.rules.size(); ++r) {
            const NRule& rule = np_.rules[r];
            for (const auto& l : rule.lits) occ_[static_cast<std::size_t>(l.atom)].push_back({r, l.weight, l.positive});
            if (rule.head) {
                heads_[static_cast<std::size_t>(rule.head)].push_back(r);
                if (rule.total >= rule.lower) ++support_[static_cast<std::size_t>(rule.head)];
            }
        }
    }

    bool body_true(std::uint32_t r) const { return sum_true_[r] >= np_.rules[r].lower; }
    bool body_false(std::uint32_t r) const { return np_.rules[r].total - sum_false_[r] < np_.rules[r].lower; }

    void assign(AtomId a, bool truth) {
        const auto ai = static_cast<std::size_t>(a);
        if (value_[ai] != kOpen) {
            if ((value_[ai] == kTrue) != truth) conflict_ = true;
            return;
        }
        value_[ai] = truth ? kTrue : kFalse;
        trail_.push_back(a);
        ++stats_.propagations;
        for (const Occ& o : occ_[ai]) {
            if (o.positive == truth) {
                sum_true_[o.rule] += o.weight;
            } else {
                const bool was_false = body_false(o.rule);
                sum_false_[o.rule] += o.weight;
                const AtomId h = np_.rules[o.rule].head;
                if (!was_false && body_false(o.rule) && h) {
                    --support_[static_cast<std::size_t>(h)];
                    atom_queue_.push_back(h);
                }
            }
            rule_queue_.push_back(o.rule);
        }
        for (std::uint32_t r : heads_[ai]) rule_queue_.push_back(r);
        atom_queue_.push_back(a);
    }

    void undo_to(std::size_t size) {
        while (trail_.size() > size) {
            const AtomId a = trail_.back();
            trail_.pop_back();
            const auto ai = static_cast<std::size_t>(a);
            const bool truth = value_[ai] == kTrue;
            for (const Occ& o : occ_[ai]) {
                if (o.positive == truth) {
                    sum_true_[o.rule] -= o.weight;
                } else {
                    const bool was_false = body_false(o.rule);
                    sum_false_[o.rule] -= o.weight;
                    const AtomId h = np_.rules[o.rule].head;
                    if (was_false && !body_false(o.rule) && h) ++support_[static_cast<std::size_t>(h)];
                }
            }
            value_[ai] = kOpen;
        }
        rule_queue_.clear();
        atom_queue_.clear();
        conflict_ = false;
    }

    void force_literal(const NLit& l, bool truth) { assign(l.atom, l.positive == truth); }

    void examine_rule(std::uint32_t r) {
        const NRule& rule = np_.rules[r];
        const signed char hv = rule.head ? value_[static_cast<std::size_t>(rule.head)] : static_cast<signed char>(kFalse);
        if (body_true(r)) {
            if (hv == kFalse) conflict_ = true;
            else if (hv == kOpen) assign(rule.head, true);
            return;
        }
        if (hv == kFalse) {
            if (body_false(r)) return;
            for (const NLit& l : rule.lits) {
                if (value_[static_cast<std::size_t>(l.atom)] != kOpen) continue;
                if (sum_true_[r] + l.weight >= rule.lower) force_literal(l, false);
                if (conflict_) return;
            }
        } else if (hv == kTrue) {
            const auto h = static_cast<std::size_t>(rule.head);
            if (support_[h] == 1 && !body_false(r)) force_support(r);
        }
    }

    void force_support(std::uint32_t r) {
        const NRule& rule = np_.rules[r];
        for (const NLit& l : rule.lits) {
            if (value_[static_cast<std::size_t>(l.atom)] != kOpen) continue;
            if (rule.total - sum_false_[r] - l.weight < rule.lower) force_literal(l, true);
            if (conflict_) return;
        }
    }

    void examine_atom(AtomId a) {
        const auto ai = static_cast<std::size_t>(a);
        if (support_[ai] == 0) {
            if (value_[ai] == kTrue) conflict_ = true;
            else if (value_[ai] == kOpen) assign(a, false);
        } else if (support_[ai] == 1 && value_[ai] == kTrue) {
            for (std::uint32_t r : heads_[ai]) {
                if (!body_false(r)) {
                    force_support(r);
                    return;
                }
            }
        }
    }

    // Falsifies open atoms that no derivation can reach from the current
    // assignment.
    void unfounded() {
        const std::size_t n = np_.atom_count + 1;
        std::vector<Value> have(np_.rules.size(), 0);
        std::vector<char> possible(n, 0);
        std::vector<AtomId> queue;
        auto fire = [&](std::uint32_t r) {
            const AtomId h = np_.rules[r].head;
            if (!h || possible[static_cast<std::size_t>(h)] || value_[static_cast<std::size_t>(h)] == kFalse) return;
            possible[static_cast<std::size_t>(h)] = 1;
            queue.push_back(h);
        };
        for (std::uint32_t r = 0; r < np_.rules.size(); ++r) {
            for (const NLit& l : np_.rules[r].lits)
                if (!l.positive && value_[static_cast<std::size_t>(l.atom)] != kTrue) have[r] += l.weight;
            if (have[r] >= np_.rules[r].lower) fire(r);
        }
        while (!queue.empty()) {
            const AtomId a = queue.back();
            queue.pop_back();
            for (const Occ& o : occ_[static_cast<std::size_t>(a)]) {
                if (!o.positive) continue;
                const bool before = have[o.rule] >= np_.rules[o.rule].lower;
                have[o.rule] += o.weight;
                if (!before && have[o.rule] >= np_.rules[o.rule].lower) fire(o.rule);
            }
        }
        for (std::size_t a = 1; a < n && !conflict_; ++a)
            if (!possible[a] && value_[a] != kFalse) assign(static_cast<AtomId>(a), false);
    }

    bool propagate() {
        while (!conflict_) {
            if (!rule_queue_.empty()) {
                const std::uint32_t r = rule_queue_.back();
                rule_queue_.pop_back();
                examine_rule(r);
            } else if (!atom_queue_.empty()) {
                const AtomId a = atom_queue_.back();
                atom_queue_.pop_back();
                examine_atom(a);
            } else if (!np_.tight) {
                const std::size_t before = trail_.size();
                unfounded();
                if (trail_.size() == before) break;
            } else {
                break;
            }
        }
        return !conflict_;
    }

    template <class OnModel>
    void run(OnModel&& on_model) {
        stats_ = {};
        status_ = SearchStatus::complete;
        Stopwatch clock;
        undo_to(0);
        for (std::uint32_t r = 0; r < np_.rules.size(); ++r) rule_queue_.push_back(r);
        for (AtomId a = 1; static_cast<std::size_t>(a) <= np_.atom_count; ++a) atom_queue_.push_back(a);

        struct Frame {
            std::size_t trail_size;
            AtomId atom;
            bool second;
        };
        std::vector<Frame> frames;
        AtomId cursor = 1;
        bool ok = propagate();
        while (true) {
            if (ok) {
                while (static_cast<std::size_t>(cursor) <= np_.atom_count &&
                       value_[static_cast<std::size_t>(cursor)] != kOpen)
                    ++cursor;
                if (static_cast<std::size_t>(cursor) > np_.atom_count) {
                    Model m;
                    for (AtomId a = 1; static_cast<std::size_t>(a) <= np_.original_atoms; ++a)
                        if (value_[static_cast<std::size_t>(a)] == kTrue) m.push_back(a);
                    if (!check_stable(np_, m)) {
                        ++stats_.rejected;
                    } else if (!on_model(m)) {
                        break;
                    }
                    ok = false;
                } else {
                    ++stats_.nodes;
                    if (options_.deadline.bounded() && stats_.nodes % options_.poll_interval == 0 &&
                        options_.deadline.expired()) {
                        status_ = SearchStatus::timeout;
                        break;
                    }
                    frames.push_back({trail_.size(), cursor, false});
                    assign(cursor, true);
                    ok = propagate();
                    if (!ok) ++stats_.backtracks;
                    continue;
                }
            }
            while (!frames.empty() && frames.back().second) frames.pop_back();
            if (frames.empty()) break;
            Frame& f = frames.back();
            undo_to(f.trail_size);
            f.second = true;
            cursor = f.atom;
            assign(f.atom, false);
            ok = propagate();
            if (!ok) ++stats_.backtracks;
        }
        undo_to(0);
        stats_.wall_ms = clock.elapsed_ms();
    }
};

inline std::vector<std::string> model_names(const GroundProgram& gp, const Model& m) {
    std::vector<std::string> out;
    for (AtomId a : m) out.push_back(gp.atoms.name(a));
    return out;
}

struct StableIncumbent {
    Value value;
    double elapsed_ms;
    std::size_t calls;
};

struct IteratedResult {
    std::optional<std::vector<std::string>> model;  // atom names of the best model
    std::vector<ground::GroundAtom> atoms;           // the same atoms, structured
    std::optional<Value> value;
    std::size_t solver_calls = 0;
    std::vector<StableIncumbent> incumbents;
    SearchStatus status = SearchStatus::complete;
    SolverStats stats;  // summed over calls
};

/// Maximization by repeated solving. `build(bound)` returns the ground
/// program restricted to models of value at least `bound` (no restriction
/// when absent) and `value_of` reads a model's value. Each incumbent v
/// triggers a new call with bound v + step; the first unsatisfiable call
/// proves the last incumbent optimal.
inline IteratedResult optimize_iterated(
    const std::function<GroundProgram(std::optional<Value>)>& build,
    const std::function<Value(const GroundProgram&, const Model&)>& value_of, Value step = 1,
    Deadline deadline = Deadline::none()) {
    if (step < 1) throw StructuralError("optimization step must be positive");
    IteratedResult res;
    Stopwatch clock;
    std::optional<Value> bound;
    while (true) {
        if (deadline.expired()) {
            res.status = SearchStatus::timeout;
            break;
        }
        GroundProgram gp = build(bound);
        StableSolver solver(gp, SolverOptions{deadline});
        auto m = solver.solve_first();
        ++res.solver_calls;
        res.stats.nodes += solver.stats().nodes;
        res.stats.backtracks += solver.stats().backtracks;
        res.stats.propagations += solver.stats().propagations;
        res.stats.rejected += solver.stats().rejected;
        if (!m) {
            if (solver.status() == SearchStatus::timeout) res.status = SearchStatus::timeout;
            break;
        }
        const Value v = value_of(gp, *m);
        if (bound && v < *bound) throw StructuralError("model below the requested bound");
        res.model = model_names(gp, *m);
        res.atoms.clear();
        for (AtomId a : *m) res.atoms.push_back(gp.atoms.atom(a));
        res.value = v;
        res.incumbents.push_back({v, clock.elapsed_ms(), res.solver_calls});
        bound = checked::add(v, step);
    }
    res.stats.wall_ms = clock.elapsed_ms();
    return res;
}

} // namespace lpcsp::stable

#endif // LPCSP_STABLE_SOLVER_HPP
