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
// Constraint propagation to a fixpoint.
//
// Strength per variant:
//   NotEqual, NotEqualOffset   arc consistency
//   OccupancyChannel           arc consistency, both directions
//   Linear (<=, =)             bounds consistency
//   Linear (!=)                forward checking (prunes when one var is open)
//   MinOf                      bounds consistency
//   AllDifferent               pairwise != on fixed values plus a pigeonhole
//                              check over the union of the domains

#ifndef LPCSP_FD_PROPAGATE_HPP
#define LPCSP_FD_PROPAGATE_HPP

#include <lpcsp/fd/problem.hpp>

#include <deque>

namespace lpcsp::fd {

enum class PropagationOutcome { fixpoint, failure };

namespace detail {

class Filter {
public:
    Filter(State& s, std::vector<VarId>& changed) : s_(s), changed_(changed) {}

    // Each returns false on failure (some domain emptied).
    bool operator()(const NotEqual& c) { return not_equal(c.x, c.y); }

    bool operator()(const NotEqualOffset& c) {
        if (c.offset < 0) return true;
        if (c.offset == 0) return not_equal(c.x, c.y);
        return offset_side(c.x, c.y, c.offset) && offset_side(c.y, c.x, c.offset);
    }

    bool operator()(const Linear& c) {
        switch (c.rel) {
        case Relation::le: return linear_le(c.terms, c.bound, false);
        case Relation::eq:
            return linear_le(c.terms, c.bound, false) && linear_le(c.terms, checked::neg(c.bound), true);
        case Relation::ne: return linear_ne(c);
        }
        return true;
    }

    bool operator()(const AllDifferent& c) {
        // Forward-check fixed values until nothing changes.
        bool again = true;
        while (again) {
            again = false;
            for (VarId v : c.vars) {
                if (!dom(v).fixed()) continue;
                Value val = dom(v).value();
                for (VarId w : c.vars) {
                    if (w == v) continue;
                    if (dom(w).remove(val)) {
                        touch(w);
                        if (dom(w).empty()) return false;
                        if (dom(w).fixed()) again = true;
                    }
                }
            }
        }
        // Pigeonhole: fewer candidate values than variables.
        std::vector<VarId> ids = c.vars;
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        std::vector<Domain::Range> ranges;
        for (VarId v : ids)
            for (const auto& r : dom(v).ranges()) ranges.push_back(r);
        std::sort(ranges.begin(), ranges.end(),
                  [](const Domain::Range& a, const Domain::Range& b) { return a.lo < b.lo; });
        std::uint64_t union_size = 0;
        Value cur_lo = 0, cur_hi = 0;
        bool open = false;
        for (const auto& r : ranges) {
            if (open && r.lo <= cur_hi + 1) {
                cur_hi = std::max(cur_hi, r.hi);
                continue;
            }
            if (open) union_size += static_cast<std::uint64_t>(cur_hi - cur_lo) + 1;
            cur_lo = r.lo;
            cur_hi = r.hi;
            open = true;
        }
        if (open) union_size += static_cast<std::uint64_t>(cur_hi - cur_lo) + 1;
        return union_size >= ids.size();
    }

    bool operator()(const OccupancyChannel& c) {
        const std::size_t n = c.occ.size();
        Domain& start = dom(c.start);
        auto slot = [&](std::size_t i) { return c.first_slot + static_cast<Value>(i); };
        // Prefix counts of slots whose occupancy cannot be 1 (resp. 0).
        std::vector<int> prefix_no1(n + 1, 0), prefix_no0(n + 1, 0);
        for (std::size_t i = 0; i < n; ++i) {
            const Domain& o = dom(c.occ[i]);
            prefix_no1[i + 1] = prefix_no1[i] + (o.contains(1) ? 0 : 1);
            prefix_no0[i + 1] = prefix_no0[i] + (o.contains(0) ? 0 : 1);
        }
        auto count = [](const std::vector<int>& pre, Value lo, Value hi) {
            // over slot indices [lo, hi) clipped to [0, n)
            Value n_ = static_cast<Value>(pre.size() - 1);
            lo = std::clamp<Value>(lo, 0, n_);
            hi = std::clamp<Value>(hi, 0, n_);
            return hi > lo ? pre[static_cast<std::size_t>(hi)] - pre[static_cast<std::size_t>(lo)] : 0;
        };
        bool changed = start.remove_if([&](Value s) {
            Value lo = checked::sub(s, c.first_slot);
            Value hi = checked::add(lo, c.duration);
            if (count(prefix_no1, lo, hi) > 0) return true;
            return count(prefix_no0, 0, lo) + count(prefix_no0, hi, static_cast<Value>(n)) > 0;
        });
        if (changed) {
            touch(c.start);
            if (start.empty()) return false;
        }
        for (std::size_t i = 0; i < n; ++i) {
            Value w = slot(i);
            Value cover_lo = checked::add(checked::sub(w, c.duration), 1);
            auto first = start.next_at_least(cover_lo);
            bool can1 = first && *first <= w;
            bool can0 = start.min() < cover_lo || start.max() > w;
            Domain& o = dom(c.occ[i]);
            bool ch = false;
            if (!can1) ch |= o.remove(1);
            if (!can0) ch |= o.remove(0);
            if (ch) {
                touch(c.occ[i]);
                if (o.empty()) return false;
            }
        }
        return true;
    }

    bool operator()(const MinOf& c) {
        for (int round = 0; round < 4; ++round) {
            bool any = false;
            Value lo = INT64_MAX, hi = INT64_MAX;
            for (VarId a : c.args) {
                lo = std::min(lo, dom(a).min());
                hi = std::min(hi, dom(a).max());
            }
            if (!narrow(c.result, lo, hi, any)) return false;
            Value rlo = dom(c.result).min();
            Value rhi = dom(c.result).max();
            std::size_t candidates = 0;
            VarId last = -1;
            for (VarId a : c.args) {
                if (!narrow(a, rlo, INT64_MAX, any)) return false;
                if (dom(a).min() <= rhi) {
                    ++candidates;
                    last = a;
                }
            }
            if (candidates == 0) return false;
            if (candidates == 1 && !narrow(last, INT64_MIN, rhi, any)) return false;
            if (!any) break;
        }
        return true;
    }

private:
    Domain& dom(VarId v) { return s_[static_cast<std::size_t>(v)]; }
    void touch(VarId v) { changed_.push_back(v); }

    bool narrow(VarId v, Value lo, Value hi, bool& any) {
        Domain& d = dom(v);
        bool ch = d.restrict_min(lo);
        ch |= d.restrict_max(hi);
        if (ch) {
            touch(v);
            any = true;
        }
        return !d.empty();
    }

    bool not_equal(VarId x, VarId y) {
        if (x == y) return false;
        if (dom(x).fixed() && dom(y).remove(dom(x).value())) {
            touch(y);
            if (dom(y).empty()) return false;
        }
        if (dom(y).fixed() && dom(x).remove(dom(y).value())) {
            touch(x);
            if (dom(x).empty()) return false;
        }
        return true;
    }

    // Remove values a of x whose every partner b in D(y) has |a - b| = c.
    bool offset_side(VarId x, VarId y, Value c) {
        const Domain& dy = dom(y);
        if (dy.size() > 2) return true;
        std::vector<Value> partners = dy.values();
        bool changed = dom(x).remove_if([&](Value a) {
            for (Value b : partners)
                if (checked::abs(checked::sub(a, b)) != c) return false;
            return true;
        });
        if (changed) {
            touch(x);
            if (dom(x).empty()) return false;
        }
        return true;
    }

    Value term_min(const LinearTerm& t, bool negate) {
        Value c = negate ? checked::neg(t.coeff) : t.coeff;
        const Domain& d = dom(t.var);
        return c >= 0 ? checked::mul(c, d.min()) : checked::mul(c, d.max());
    }

    bool linear_le(const std::vector<LinearTerm>& terms, Value bound, bool negate) {
        Value min_sum = 0;
        for (const auto& t : terms) min_sum = checked::add(min_sum, term_min(t, negate));
        if (min_sum > bound) return false;
        for (const auto& t : terms) {
            Value c = negate ? checked::neg(t.coeff) : t.coeff;
            if (c == 0) continue;
            Value slack = checked::sub(bound, checked::sub(min_sum, term_min(t, negate)));
            Domain& d = dom(t.var);
            // Trimming the far bound leaves this term's minimum contribution
            // intact, so min_sum stays valid across the loop.
            bool ch = c > 0 ? d.restrict_max(floor_div(slack, c)) : d.restrict_min(ceil_div(slack, c));
            if (ch) {
                touch(t.var);
                if (d.empty()) return false;
            }
        }
        return true;
    }

    bool linear_ne(const Linear& c) {
        Value fixed_sum = 0;
        const LinearTerm* open = nullptr;
        std::size_t open_count = 0;
        for (const auto& t : c.terms) {
            const Domain& d = dom(t.var);
            if (t.coeff == 0) continue;
            if (d.fixed()) {
                fixed_sum = checked::add(fixed_sum, checked::mul(t.coeff, d.value()));
            } else {
                ++open_count;
                open = &t;
            }
        }
        if (open_count == 0) return fixed_sum != c.bound;
        if (open_count == 1) {
            // Repeated occurrences of the same var would need a merged
            // coefficient; Linear terms are expected to be distinct vars.
            Value rest = checked::sub(c.bound, fixed_sum);
            if (rest % open->coeff == 0) {
                Domain& d = dom(open->var);
                if (d.remove(rest / open->coeff)) {
                    touch(open->var);
                    if (d.empty()) return false;
                }
            }
        }
        return true;
    }

    State& s_;
    std::vector<VarId>& changed_;
};

} // namespace detail

/// Queue-driven propagation engine bound to one problem. Cheap to build;
/// holds per-variable watch lists.
class Propagator {
public:
    explicit Propagator(const Problem& p) : problem_(p), watches_(p.size()) {
        const auto& cs = p.constraints();
        for (std::size_t i = 0; i < cs.size(); ++i) {
            std::vector<VarId> ids = scope(cs[i]);
            std::sort(ids.begin(), ids.end());
            ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
            for (VarId v : ids) watches_[static_cast<std::size_t>(v)].push_back(i);
        }
    }

    /// Propagate everything (root) or only constraints watching `changed`.
    PropagationOutcome run(State& state, const std::vector<VarId>* changed = nullptr) {
        if (state.size() != problem_.size())
            throw StructuralError("state size does not match the problem");
        for (const auto& d : state)
            if (d.empty()) return PropagationOutcome::failure;
        const auto& cs = problem_.constraints();
        std::vector<char> queued(cs.size(), 0);
        std::deque<std::size_t> queue;
        auto enqueue_var = [&](VarId v) {
            for (std::size_t ci : watches_[static_cast<std::size_t>(v)])
                if (!queued[ci]) {
                    queued[ci] = 1;
                    queue.push_back(ci);
                }
        };
        if (changed) {
            for (VarId v : *changed) enqueue_var(v);
        } else {
            for (std::size_t i = 0; i < cs.size(); ++i) {
                queued[i] = 1;
                queue.push_back(i);
            }
        }
        std::vector<VarId> touched;
        while (!queue.empty()) {
            std::size_t ci = queue.front();
            queue.pop_front();
            queued[ci] = 0;
            ++steps_;
            touched.clear();
            detail::Filter filter(state, touched);
            if (!std::visit(filter, cs[ci])) return PropagationOutcome::failure;
            for (VarId v : touched) enqueue_var(v);
        }
        return PropagationOutcome::fixpoint;
    }

    std::uint64_t steps() const noexcept { return steps_; }

private:
    const Problem& problem_;
    std::vector<std::vector<std::size_t>> watches_;
    std::uint64_t steps_ = 0;
};

/// Propagate all constraints of `problem` over `state` to a fixpoint.
inline PropagationOutcome propagate(const Problem& problem, State& state) {
    Propagator prop(problem);
    return prop.run(state);
}

} // namespace lpcsp::fd

#endif // LPCSP_FD_PROPAGATE_HPP
