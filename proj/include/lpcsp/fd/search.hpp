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
// Depth-first labelling interleaved with propagation.
//
// Variable order is first-fail: smallest current domain, then the highest
// constraint degree, then the lowest id. Variables in the problem's
// branching list are exhausted before any other open variable is chosen.
// Values are tried in ascending order.

#ifndef LPCSP_FD_SEARCH_HPP
#define LPCSP_FD_SEARCH_HPP

#include <lpcsp/fd/propagate.hpp>

#include <functional>

namespace lpcsp::fd {

struct SearchStats {
    std::uint64_t nodes = 0;
    std::uint64_t backtracks = 0;
    std::uint64_t propagations = 0;
    double wall_ms = 0;
};

struct SearchOptions {
    Deadline deadline;
    /// Deadline is polled every `poll_interval` nodes.
    std::uint64_t poll_interval = 256;
};

struct Incumbent {
    Value value;
    double elapsed_ms;
    std::uint64_t nodes;
};

struct Optimum {
    Assignment assignment;
    Value value;
};

class Solver {
public:
    explicit Solver(const Problem& problem, SearchOptions options = {})
        : problem_(problem), options_(options), propagator_(problem_) {
        in_branching_.assign(problem.size(), 0);
        for (VarId v : problem.branching()) in_branching_[static_cast<std::size_t>(v)] = 1;
    }

    std::optional<Assignment> solve_first() {
        std::optional<Assignment> found;
        run([&](const Assignment& a) {
            found = a;
            return false;
        });
        if (found) status_ = SearchStatus::complete;
        return found;
    }

    std::vector<Assignment> solve_all(std::optional<std::size_t> limit = std::nullopt) {
        std::vector<Assignment> out;
        enumerate(
            [&](const Assignment& a) {
                out.push_back(a);
                return true;
            },
            limit);
        return out;
    }

    /// Visit solutions until the visitor returns false or `limit` is hit.
    /// Returns the number of solutions visited.
    std::size_t enumerate(const std::function<bool(const Assignment&)>& visit,
                          std::optional<std::size_t> limit = std::nullopt) {
        std::size_t count = 0;
        bool limited = false;
        run([&](const Assignment& a) {
            ++count;
            bool more = visit(a);
            if (limit && count >= *limit) {
                limited = true;
                return false;
            }
            return more;
        });
        if (limited && status_ == SearchStatus::complete) status_ = SearchStatus::limit_reached;
        return count;
    }

    /// Branch and bound on the problem objective. After each incumbent of
    /// value v the search continues under objective >= v + 1.
    std::optional<Optimum> maximize(const std::function<void(const Incumbent&)>& on_incumbent = {}) {
        if (!problem_.objective()) throw StructuralError("maximize requires an objective variable");
        const VarId obj = *problem_.objective();
        std::optional<Optimum> best;
        bound_ = std::nullopt;
        run([&](const Assignment& a) {
            Value v = a[static_cast<std::size_t>(obj)];
            best = Optimum{a, v};
            incumbents_.push_back({v, clock_.elapsed_ms(), stats_.nodes});
            if (on_incumbent) on_incumbent(incumbents_.back());
            if (v == INT64_MAX) return false;
            bound_ = v + 1;
            return true;
        });
        bound_ = std::nullopt;
        return best;
    }

    const SearchStats& stats() const noexcept { return stats_; }
    SearchStatus status() const noexcept { return status_; }
    const std::vector<Incumbent>& incumbents() const noexcept { return incumbents_; }

private:
    template <class OnSolution>
    void run(OnSolution&& on_solution) {
        stats_ = {};
        incumbents_.clear();
        status_ = SearchStatus::complete;
        clock_ = Stopwatch();
        const std::uint64_t props_before = propagator_.steps();
        State root = problem_.initial_state();
        stopped_ = false;
        dfs(root, nullptr, 0, on_solution);
        stats_.propagations = propagator_.steps() - props_before;
        stats_.wall_ms = clock_.elapsed_ms();
    }

    template <class OnSolution>
    void dfs(State& state, const std::vector<VarId>* changed, std::size_t depth, OnSolution& on_solution) {
        if (stopped_) return;
        ++stats_.nodes;
        if (options_.deadline.bounded() && stats_.nodes % options_.poll_interval == 0 &&
            options_.deadline.expired()) {
            status_ = SearchStatus::timeout;
            stopped_ = true;
            return;
        }
        std::vector<VarId> objective_change;
        if (bound_) {
            const VarId obj = *problem_.objective();
            Domain& d = state[static_cast<std::size_t>(obj)];
            if (d.restrict_min(*bound_)) {
                if (d.empty()) {
                    if (depth > 0) ++stats_.backtracks;
                    return;
                }
                if (changed) {
                    objective_change = *changed;
                    objective_change.push_back(obj);
                    changed = &objective_change;
                }
            }
        }
        if (propagator_.run(state, changed) == PropagationOutcome::failure) {
            if (depth > 0) ++stats_.backtracks;
            return;
        }
        std::optional<VarId> pick = select(state);
        if (!pick) {
            Assignment a(state.size());
            for (std::size_t i = 0; i < state.size(); ++i) a[i] = state[i].value();
            if (!on_solution(a)) stopped_ = true;
            return;
        }
        const VarId v = *pick;
        const std::vector<Value> values = state[static_cast<std::size_t>(v)].values();
        std::vector<VarId> child_change{v};
        for (Value val : values) {
            if (stopped_) return;
            if (bound_ && v == *problem_.objective() && val < *bound_) continue;
            State child = state;
            child[static_cast<std::size_t>(v)].assign(val);
            dfs(child, &child_change, depth + 1, on_solution);
        }
    }

    std::optional<VarId> select(const State& state) const {
        std::optional<VarId> best;
        bool best_in_list = false;
        for (std::size_t i = 0; i < state.size(); ++i) {
            const Domain& d = state[i];
            if (d.fixed()) continue;
            const bool in_list = in_branching_[i] != 0;
            if (best) {
                const std::size_t b = static_cast<std::size_t>(*best);
                if (best_in_list && !in_list) continue;
                if (in_list == best_in_list) {
                    const std::uint64_t ds = d.size(), bs = state[b].size();
                    if (ds > bs) continue;
                    if (ds == bs && problem_.vars()[i].degree <= problem_.vars()[b].degree) continue;
                }
            }
            best = static_cast<VarId>(i);
            best_in_list = in_list;
        }
        return best;
    }

    Problem problem_;
    SearchOptions options_;
    Propagator propagator_;
    std::vector<char> in_branching_;
    SearchStats stats_;
    SearchStatus status_ = SearchStatus::complete;
    std::vector<Incumbent> incumbents_;
    std::optional<Value> bound_;
    Stopwatch clock_;
    bool stopped_ = false;
};

} // namespace lpcsp::fd

#endif // LPCSP_FD_SEARCH_HPP
