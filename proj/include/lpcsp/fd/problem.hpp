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
// Finite-domain problem model: variables with integer domains and a fixed
// set of constraint variants.

#ifndef LPCSP_FD_PROBLEM_HPP
#define LPCSP_FD_PROBLEM_HPP

#include <lpcsp/fd/domain.hpp>

#include <algorithm>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace lpcsp::fd {

using VarId = std::int32_t;

/// x != y
struct NotEqual {
    VarId x;
    VarId y;
    friend bool operator==(const NotEqual&, const NotEqual&) = default;
};

/// |x - y| != offset
struct NotEqualOffset {
    VarId x;
    VarId y;
    Value offset;
    friend bool operator==(const NotEqualOffset&, const NotEqualOffset&) = default;
};

enum class Relation { le, eq, ne };

struct LinearTerm {
    Value coeff;
    VarId var;
    friend bool operator==(const LinearTerm&, const LinearTerm&) = default;
};

/// sum(coeff * var) rel bound
struct Linear {
    std::vector<LinearTerm> terms;
    Relation rel = Relation::le;
    Value bound = 0;
    friend bool operator==(const Linear&, const Linear&) = default;
};

struct AllDifferent {
    std::vector<VarId> vars;
    friend bool operator==(const AllDifferent&, const AllDifferent&) = default;
};

/// occ[i] = 1 <=> start <= first_slot + i < start + duration
struct OccupancyChannel {
    VarId start;
    Value duration;
    std::vector<VarId> occ;
    Value first_slot = 0;
    friend bool operator==(const OccupancyChannel&, const OccupancyChannel&) = default;
};

/// result = min(args)
struct MinOf {
    VarId result;
    std::vector<VarId> args;
    friend bool operator==(const MinOf&, const MinOf&) = default;
};

using Constraint = std::variant<NotEqual, NotEqualOffset, Linear, AllDifferent, OccupancyChannel, MinOf>;

inline std::vector<VarId> scope(const Constraint& c) {
    return std::visit(
        [](const auto& k) -> std::vector<VarId> {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, NotEqual> || std::is_same_v<K, NotEqualOffset>) {
                return {k.x, k.y};
            } else if constexpr (std::is_same_v<K, Linear>) {
                std::vector<VarId> out;
                for (const auto& t : k.terms) out.push_back(t.var);
                return out;
            } else if constexpr (std::is_same_v<K, AllDifferent>) {
                return k.vars;
            } else if constexpr (std::is_same_v<K, OccupancyChannel>) {
                std::vector<VarId> out{k.start};
                out.insert(out.end(), k.occ.begin(), k.occ.end());
                return out;
            } else {
                std::vector<VarId> out{k.result};
                out.insert(out.end(), k.args.begin(), k.args.end());
                return out;
            }
        },
        c);
}

struct Var {
    VarId id;
    Domain domain;
    std::size_t degree = 0;
    std::string name;
};

using State = std::vector<Domain>;
using Assignment = std::vector<Value>;

class Problem {
public:
    VarId add_var(Domain domain, std::string name = {}) {
        if (domain.empty()) throw StructuralError("variable '" + name + "' has an empty domain");
        VarId id = static_cast<VarId>(vars_.size());
        vars_.push_back(Var{id, std::move(domain), 0, std::move(name)});
        return id;
    }

    VarId add_var(Value lo, Value hi, std::string name = {}) {
        return add_var(Domain::interval(lo, hi), std::move(name));
    }

    /// Validates the constraint against this problem and records it.
    void post(Constraint c) {
        validate(c);
        if (auto* all = std::get_if<AllDifferent>(&c)) {
            std::vector<VarId> seen;
            for (VarId v : all->vars)
                if (std::find(seen.begin(), seen.end(), v) == seen.end()) seen.push_back(v);
            all->vars = std::move(seen);
        }
        std::vector<VarId> ids = scope(c);
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        for (VarId id : ids) ++vars_[static_cast<std::size_t>(id)].degree;
        constraints_.push_back(std::move(c));
    }

    /// Narrow a variable's initial domain (compile-time unary constraints).
    void restrict(VarId id, const Domain& allowed) {
        check_id(id);
        Domain& d = vars_[static_cast<std::size_t>(id)].domain;
        Domain next;
        std::vector<Value> kept;
        d.for_each([&](Value v) {
            if (allowed.contains(v)) kept.push_back(v);
        });
        next = Domain::of(std::move(kept));
        d = std::move(next);
    }

    void remove_value(VarId id, Value v) {
        check_id(id);
        vars_[static_cast<std::size_t>(id)].domain.remove(v);
    }

    void set_objective(VarId id) {
        check_id(id);
        objective_ = id;
    }

    /// Variables labelled first (the CLP labelling list). Remaining
    /// variables are labelled afterwards if propagation leaves them open.
    void set_branching(std::vector<VarId> vars) {
        for (VarId id : vars) check_id(id);
        branching_ = std::move(vars);
    }

    std::size_t size() const noexcept { return vars_.size(); }
    const std::vector<Var>& vars() const noexcept { return vars_; }
    const Var& var(VarId id) const {
        check_id(id);
        return vars_[static_cast<std::size_t>(id)];
    }
    const std::vector<Constraint>& constraints() const noexcept { return constraints_; }
    std::optional<VarId> objective() const noexcept { return objective_; }
    const std::vector<VarId>& branching() const noexcept { return branching_; }

    State initial_state() const {
        State s;
        s.reserve(vars_.size());
        for (const auto& v : vars_) s.push_back(v.domain);
        return s;
    }

    void check_id(VarId id) const {
        if (id < 0 || static_cast<std::size_t>(id) >= vars_.size())
            throw StructuralError("dangling variable id " + std::to_string(id));
    }

private:
    void validate(const Constraint& c) const {
        for (VarId id : scope(c)) check_id(id);
        if (const auto* occ = std::get_if<OccupancyChannel>(&c)) {
            if (occ->duration < 1) throw StructuralError("occupancy duration must be positive");
            for (VarId o : occ->occ) {
                const Domain& d = vars_[static_cast<std::size_t>(o)].domain;
                if (d.min() < 0 || d.max() > 1)
                    throw StructuralError("occupancy variable " + std::to_string(o) + " is not 0/1");
            }
        } else if (const auto* m = std::get_if<MinOf>(&c)) {
            if (m->args.empty()) throw StructuralError("min over an empty argument list");
        }
    }

    std::vector<Var> vars_;
    std::vector<Constraint> constraints_;
    std::optional<VarId> objective_;
    std::vector<VarId> branching_;
};

} // namespace lpcsp::fd

#endif // LPCSP_FD_PROBLEM_HPP
