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

#ifndef LPCSP_FD_EVALUATE_HPP
#define LPCSP_FD_EVALUATE_HPP

#include <lpcsp/fd/problem.hpp>

#include <set>

namespace lpcsp::fd {

/// Straight-line check of one constraint under a total assignment.
inline bool satisfies(const Constraint& c, const Assignment& a) {
    auto at = [&](VarId id) { return a.at(static_cast<std::size_t>(id)); };
    return std::visit(
        [&](const auto& k) -> bool {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, NotEqual>) {
                return at(k.x) != at(k.y);
            } else if constexpr (std::is_same_v<K, NotEqualOffset>) {
                return checked::abs(checked::sub(at(k.x), at(k.y))) != k.offset;
            } else if constexpr (std::is_same_v<K, Linear>) {
                Value sum = 0;
                for (const auto& t : k.terms) sum = checked::add(sum, checked::mul(t.coeff, at(t.var)));
                switch (k.rel) {
                case Relation::le: return sum <= k.bound;
                case Relation::eq: return sum == k.bound;
                case Relation::ne: return sum != k.bound;
                }
                return false;
            } else if constexpr (std::is_same_v<K, AllDifferent>) {
                std::set<Value> seen;
                for (VarId v : k.vars)
                    if (!seen.insert(at(v)).second) return false;
                return true;
            } else if constexpr (std::is_same_v<K, OccupancyChannel>) {
                Value s = at(k.start);
                for (std::size_t i = 0; i < k.occ.size(); ++i) {
                    Value slot = k.first_slot + static_cast<Value>(i);
                    Value want = (s <= slot && slot < s + k.duration) ? 1 : 0;
                    if (at(k.occ[i]) != want) return false;
                }
                return true;
            } else {
                Value m = at(k.args.front());
                for (VarId v : k.args) m = std::min(m, at(v));
                return at(k.result) == m;
            }
        },
        c);
}

/// True iff the assignment is total, within the original domains and
/// satisfies every constraint.
inline bool satisfies(const Problem& p, const Assignment& a) {
    if (a.size() != p.size()) return false;
    for (const auto& v : p.vars())
        if (!v.domain.contains(a[static_cast<std::size_t>(v.id)])) return false;
    for (const auto& c : p.constraints())
        if (!satisfies(c, a)) return false;
    return true;
}

} // namespace lpcsp::fd

#endif // LPCSP_FD_EVALUATE_HPP
