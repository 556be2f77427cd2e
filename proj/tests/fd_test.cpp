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

#include <lpcsp/fd/evaluate.hpp>
#include <lpcsp/fd/search.hpp>

#include "support/fd_oracle.hpp"

#include <catch_amalgamated.hpp>

#include <set>

using namespace lpcsp;
using namespace lpcsp::fd;

TEST_CASE("domain operations keep values sorted and unique", "[fd][domain]") {
    Domain d = Domain::of({5, 1, 3, 3, 2});
    REQUIRE(d.values() == std::vector<Value>{1, 2, 3, 5});
    REQUIRE(d.size() == 4);
    REQUIRE(d.remove(2));
    REQUIRE_FALSE(d.remove(4));
    REQUIRE(d.values() == std::vector<Value>{1, 3, 5});
    REQUIRE(d.restrict_min(2));
    REQUIRE(d.min() == 3);
    REQUIRE(d.restrict_max(4));
    REQUIRE(d.fixed());
    REQUIRE(d.value() == 3);
    REQUIRE(d.assign(7));
    REQUIRE(d.empty());

    Domain wide = Domain::interval(-1000000, 1000000);
    REQUIRE(wide.size() == 2000001);
    wide.remove(0);
    REQUIRE(wide.ranges().size() == 2);
    REQUIRE(wide.next_at_least(0) == 1);
    REQUIRE(wide.prev_at_most(0) == -1);
}

TEST_CASE("propagate: documented examples", "[fd][propagate]") {
    SECTION("not-equal with one side fixed leaves the only support") {
        Problem p;
        VarId x = p.add_var(Domain::of({1}));
        VarId y = p.add_var(1, 2);
        p.post(NotEqual{x, y});
        State s = p.initial_state();
        REQUIRE(propagate(p, s) == PropagationOutcome::fixpoint);
        REQUIRE(s[1].values() == std::vector<Value>{2});
    }
    SECTION("offset disequality removes the two diagonal values") {
        Problem p;
        VarId x = p.add_var(Domain::of({3}));
        VarId y = p.add_var(1, 5);
        p.post(NotEqualOffset{x, y, 2});
        State s = p.initial_state();
        REQUIRE(propagate(p, s) == PropagationOutcome::fixpoint);
        // Enumerating y in 1..5 and dropping |3 - y| = 2 leaves {2, 3, 4}.
        std::vector<Value> expected;
        for (Value v = 1; v <= 5; ++v)
            if (std::llabs(3 - v) != 2) expected.push_back(v);
        REQUIRE(s[1].values() == expected);
        REQUIRE(expected == std::vector<Value>{2, 3, 4});
    }
    SECTION("all-different over three vars and two values fails") {
        Problem p;
        std::vector<VarId> vs;
        for (int i = 0; i < 3; ++i) vs.push_back(p.add_var(1, 2));
        p.post(AllDifferent{vs});
        // Pigeonhole: none of the 8 assignments is injective.
        REQUIRE(oracle::all_solutions(p).empty());
        State s = p.initial_state();
        REQUIRE(propagate(p, s) == PropagationOutcome::failure);
    }
}

TEST_CASE("propagate: structural errors are distinct from failure", "[fd][propagate]") {
    Problem p;
    VarId x = p.add_var(1, 3);
    REQUIRE_THROWS_AS(p.post(NotEqual{x, 7}), StructuralError);
    REQUIRE_THROWS_AS(p.post(MinOf{x, {}}), StructuralError);
    VarId big = p.add_var(0, 5);
    REQUIRE_THROWS_AS(p.post(OccupancyChannel{x, 2, {big}, 0}), StructuralError);
    State wrong(5, Domain::interval(0, 1));
    REQUIRE_THROWS_AS(propagate(p, wrong), StructuralError);
}

TEST_CASE("propagate: linear overflow is a structural error", "[fd][propagate]") {
    Problem p;
    VarId x = p.add_var(0, INT64_MAX / 2);
    VarId y = p.add_var(0, INT64_MAX / 2);
    p.post(Linear{{{4, x}, {4, y}}, Relation::le, 10});
    State s = p.initial_state();
    // Minimum contributions are zero; tightening succeeds without overflow.
    REQUIRE(propagate(p, s) == PropagationOutcome::fixpoint);
    Problem q;
    VarId a = q.add_var(INT64_MAX / 2, INT64_MAX / 2 + 1);
    VarId b = q.add_var(INT64_MAX / 2, INT64_MAX / 2 + 1);
    q.post(Linear{{{2, a}, {2, b}}, Relation::le, 0});
    State t = q.initial_state();
    REQUIRE_THROWS_AS(propagate(q, t), StructuralError);
}

TEST_CASE("propagate: occupancy channel works in both directions", "[fd][propagate]") {
    Problem p;
    VarId start = p.add_var(1, 4);
    std::vector<VarId> occ;
    for (int w = 1; w <= 5; ++w) occ.push_back(p.add_var(0, 1));
    p.post(OccupancyChannel{start, 2, occ, 1});
    State s = p.initial_state();
    s[static_cast<std::size_t>(occ[0])].assign(1);  // week 1 occupied -> start = 1
    REQUIRE(propagate(p, s) == PropagationOutcome::fixpoint);
    REQUIRE(s[0].fixed());
    REQUIRE(s[0].value() == 1);
    std::vector<Value> weeks;
    for (VarId o : occ) weeks.push_back(s[static_cast<std::size_t>(o)].value());
    REQUIRE(weeks == std::vector<Value>{1, 1, 0, 0, 0});
}

TEST_CASE("propagate: min channel bounds", "[fd][propagate]") {
    Problem p;
    VarId r = p.add_var(0, 100);
    VarId a = p.add_var(10, 20);
    VarId b = p.add_var(15, 30);
    p.post(MinOf{r, {a, b}});
    State s = p.initial_state();
    REQUIRE(propagate(p, s) == PropagationOutcome::fixpoint);
    REQUIRE(s[0].min() == 10);
    REQUIRE(s[0].max() == 20);
    s[0].restrict_min(18);
    std::vector<VarId> changed{r};
    Propagator prop(p);
    REQUIRE(prop.run(s, &changed) == PropagationOutcome::fixpoint);
    REQUIRE(s[1].min() == 18);
    REQUIRE(s[2].min() == 18);
}

TEST_CASE("solve_first: documented examples", "[fd][search]") {
    SECTION("4-queens returns one of the two brute-force solutions") {
        Problem p = oracle::queens(4);
        auto brute = oracle::all_solutions(p);
        REQUIRE(brute.size() == 2);
        std::set<std::vector<Value>> expected(brute.begin(), brute.end());
        REQUIRE(expected == std::set<std::vector<Value>>{{2, 4, 1, 3}, {3, 1, 4, 2}});
        Solver solver(p);
        auto a = solver.solve_first();
        REQUIRE(a);
        REQUIRE(expected.count(*a) == 1);
        REQUIRE(satisfies(p, *a));
    }
    SECTION("single fixed variable") {
        Problem p;
        p.add_var(Domain::of({5}));
        Solver solver(p);
        auto a = solver.solve_first();
        REQUIRE(a == Assignment{5});
        REQUIRE(solver.stats().nodes >= 1);
        REQUIRE(solver.stats().backtracks == 0);
    }
    SECTION("conflicting singletons have no solution") {
        Problem p;
        VarId x = p.add_var(Domain::of({1}));
        VarId y = p.add_var(Domain::of({1}));
        p.post(NotEqual{x, y});
        Solver solver(p);
        REQUIRE_FALSE(solver.solve_first());
        REQUIRE(solver.status() == SearchStatus::complete);
        REQUIRE(solver.stats().backtracks == 0);
    }
}

TEST_CASE("solve_all: documented examples", "[fd][search]") {
    SECTION("4-queens") {
        Solver s(oracle::queens(4));
        REQUIRE(s.solve_all().size() == 2);
        REQUIRE(s.stats().nodes >= 2);
    }
    SECTION("6-queens") {
        Problem p = oracle::queens(6);
        REQUIRE(oracle::all_solutions(p).size() == 4);
        Solver s(p);
        REQUIRE(s.solve_all().size() == 4);
    }
    SECTION("unconstrained product") {
        Problem p;
        p.add_var(1, 2);
        p.add_var(1, 2);
        Solver s(p);
        auto all = s.solve_all();
        REQUIRE(all.size() == 4);
        REQUIRE(std::set<Assignment>(all.begin(), all.end()).size() == 4);
    }
    SECTION("limit stops enumeration") {
        Solver s(oracle::queens(6));
        REQUIRE(s.solve_all(3).size() == 3);
        REQUIRE(s.status() == SearchStatus::limit_reached);
    }
}

TEST_CASE("maximize: documented examples", "[fd][optimize]") {
    SECTION("x in 1..5, x != 5") {
        Problem p;
        VarId x = p.add_var(1, 5);
        p.post(Linear{{{1, x}}, Relation::ne, 5});
        p.set_objective(x);
        Solver s(p);
        auto best = s.maximize();
        REQUIRE(best);
        REQUIRE(best->value == 4);
    }
    SECTION("two-unit, two-week reserve toy") {
        // Capacities 10 and 20, peak 5 in both weeks; unit 1 is maintained
        // for exactly one week, unit 2 never.
        const Value total = 30, peak = 5, cap1 = 10;
        // Oracle: enumerate both placements of unit 1's maintenance week.
        Value oracle_best = INT64_MIN;
        for (int week = 1; week <= 2; ++week) {
            Value worst = INT64_MAX;
            for (int w = 1; w <= 2; ++w) worst = std::min(worst, total - (w == week ? cap1 : 0) - peak);
            oracle_best = std::max(oracle_best, worst);
        }
        REQUIRE(oracle_best == 15);

        Problem p;
        VarId start = p.add_var(1, 2);
        VarId o1 = p.add_var(0, 1), o2 = p.add_var(0, 1);
        p.post(OccupancyChannel{start, 1, {o1, o2}, 1});
        VarId r1 = p.add_var(-100, 100), r2 = p.add_var(-100, 100);
        p.post(Linear{{{cap1, o1}, {1, r1}}, Relation::eq, total - peak});
        p.post(Linear{{{cap1, o2}, {1, r2}}, Relation::eq, total - peak});
        VarId obj = p.add_var(-100, 100);
        p.post(MinOf{obj, {r1, r2}});
        p.set_objective(obj);
        p.set_branching({start});
        Solver s(p);
        auto best = s.maximize();
        REQUIRE(best);
        REQUIRE(best->value == oracle_best);
        REQUIRE(oracle::best_objective(p) == oracle_best);
    }
    SECTION("infeasible") {
        Problem p;
        VarId x = p.add_var(Domain::of({1}));
        VarId y = p.add_var(Domain::of({1}));
        p.post(NotEqual{x, y});
        p.set_objective(x);
        Solver s(p);
        REQUIRE_FALSE(s.maximize());
    }
    SECTION("missing objective is a structural error") {
        Problem p;
        p.add_var(1, 2);
        Solver s(p);
        REQUIRE_THROWS_AS(s.maximize(), StructuralError);
    }
}

TEST_CASE("maximize logs strictly improving incumbents", "[fd][optimize]") {
    Problem p;
    std::vector<VarId> xs;
    for (int i = 0; i < 4; ++i) xs.push_back(p.add_var(0, 3));
    p.post(AllDifferent{xs});
    VarId obj = p.add_var(-20, 20);
    p.post(Linear{{{2, xs[0]}, {-1, xs[1]}, {1, xs[3]}, {-1, obj}}, Relation::eq, 0});
    p.set_objective(obj);
    Solver s(p);
    auto best = s.maximize();
    REQUIRE(best);
    REQUIRE(best->value == oracle::best_objective(p));
    const auto& inc = s.incumbents();
    REQUIRE_FALSE(inc.empty());
    for (std::size_t i = 1; i < inc.size(); ++i) REQUIRE(inc[i].value > inc[i - 1].value);
}

namespace {

Problem random_problem(std::mt19937_64& rng, bool with_objective) {
    Problem p;
    std::uniform_int_distribution<int> nvars(2, 5);
    int n = nvars(rng);
    for (int i = 0; i < n; ++i) p.add_var(oracle::random_domain(rng, 0, 4, 0.7));
    std::uniform_int_distribution<int> ncons(1, 5), kind(0, 3), var(0, n - 1), small(-3, 3);
    int m = ncons(rng);
    for (int i = 0; i < m; ++i) {
        VarId a = var(rng), b = var(rng);
        if (a == b) b = (a + 1) % n;
        switch (kind(rng)) {
        case 0: p.post(NotEqual{a, b}); break;
        case 1: p.post(NotEqualOffset{a, b, std::abs(small(rng))}); break;
        case 2: {
            Value ca = small(rng), cb = small(rng);
            p.post(Linear{{{ca == 0 ? 1 : ca, a}, {cb == 0 ? -1 : cb, b}},
                          static_cast<Relation>(std::abs(small(rng)) % 3), small(rng) + 2});
            break;
        }
        default: p.post(AllDifferent{{a, b, var(rng)}}); break;
        }
    }
    if (with_objective) {
        VarId r = p.add_var(0, 4);
        p.post(MinOf{r, {0, static_cast<VarId>(n - 1)}});
        p.set_objective(r);
    }
    return p;
}

} // namespace

TEST_CASE("property: solve_all agrees with brute force", "[fd][property]") {
    std::mt19937_64 rng(20260101);
    for (int iter = 0; iter < 300; ++iter) {
        Problem p = random_problem(rng, false);
        auto brute = oracle::all_solutions(p);
        Solver s(p);
        auto got = s.solve_all();
        for (const auto& a : got) REQUIRE(satisfies(p, a));
        std::set<Assignment> got_set(got.begin(), got.end());
        REQUIRE(got_set.size() == got.size());
        REQUIRE(got_set == std::set<Assignment>(brute.begin(), brute.end()));
        // Determinism: same input, same nodes and order.
        Solver again(p);
        REQUIRE(again.solve_all() == got);
        REQUIRE(again.stats().nodes == s.stats().nodes);
    }
}

TEST_CASE("property: maximize matches brute-force optimum", "[fd][property]") {
    std::mt19937_64 rng(77);
    for (int iter = 0; iter < 200; ++iter) {
        Problem p = random_problem(rng, true);
        auto expected = oracle::best_objective(p);
        Solver s(p);
        auto got = s.maximize();
        REQUIRE(got.has_value() == expected.has_value());
        if (got) {
            REQUIRE(got->value == *expected);
            REQUIRE(satisfies(p, got->assignment));
        }
    }
}

TEST_CASE("property: propagation only removes unsupported values", "[fd][property]") {
    std::mt19937_64 rng(4242);
    for (std::size_t variant = 0; variant < 6; ++variant) {
        for (int iter = 0; iter < 150; ++iter) {
            auto c = oracle::random_case(rng, variant);
            INFO(oracle::variant_name(variant) << " case " << iter);
            REQUIRE(oracle::audit_propagation(c.constraint, c.domains) == "");
        }
    }
}

TEST_CASE("deadline stops search with a timeout status", "[fd][search]") {
    Problem p = oracle::queens(12);
    SearchOptions opt;
    opt.deadline = Deadline::after(0.0);
    opt.poll_interval = 1;
    Solver s(p, opt);
    s.solve_all();
    REQUIRE(s.status() == SearchStatus::timeout);
}
