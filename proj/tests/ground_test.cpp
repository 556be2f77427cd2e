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

#include <catch_amalgamated.hpp>

#include <lpcsp/ground/grounder.hpp>
#include <lpcsp/ground/text.hpp>
#include <lpcsp/lp/parser.hpp>
#include <lpcsp/stable/solver.hpp>

#include "support/naive_grounder.hpp"
#include "support/random_programs.hpp"
#include "support/stable_oracle.hpp"

using namespace lpcsp;
using namespace lpcsp::ground;

namespace {

GroundResult ground_text(const std::string& src) { return ground::ground(lp::parse_program(src)); }

std::set<std::set<std::string>> models_by_name(const GroundProgram& gp) {
    std::set<std::set<std::string>> out;
    for (const auto& m : stable::StableSolver(gp).solve_all()) {
        auto names = stable::model_names(gp, m);
        out.insert({names.begin(), names.end()});
    }
    return out;
}

template <class R>
std::size_t count_kind(const GroundProgram& gp) {
    std::size_t n = 0;
    for (const auto& r : gp.rules) n += std::holds_alternative<R>(r);
    return n;
}

// Quadruples (X1, X2, Y1, Y2) over 1..n with X1 < X2 and X2 - X1 = |Y1 - Y2|.
std::size_t diagonal_instances(int n) {
    std::size_t count = 0;
    for (int x1 = 1; x1 <= n; ++x1)
        for (int x2 = 1; x2 <= n; ++x2)
            for (int y1 = 1; y1 <= n; ++y1)
                for (int y2 = 1; y2 <= n; ++y2) count += x1 < x2 && x2 - x1 == std::abs(y1 - y2);
    return count;
}

} // namespace

TEST_CASE("ground: facts from a domain rule", "[ground]") {
    GroundResult r = ground_text("d(1..2). q(X) :- d(X).");
    const GroundProgram& gp = r.program;
    REQUIRE(gp.atoms.find({"q", {1}}));
    REQUIRE(gp.atoms.find({"q", {2}}));
    CHECK(gp.facts.count(*gp.atoms.find({"q", {1}})));
    CHECK(gp.facts.count(*gp.atoms.find({"q", {2}})));
    CHECK(gp.rules.empty());
    std::string text = write_ground(gp);
    CHECK(text.find("\nq(1).\n") != std::string::npos);
    CHECK(text.find("\nq(2).\n") != std::string::npos);
}

TEST_CASE("ground: choice expansion over a guard", "[ground]") {
    GroundResult r = ground_text("d(1..2). 1 {pos(1,Y):d(Y)} 1.");
    const GroundProgram& gp = r.program;
    REQUIRE(gp.rules.size() == 1);
    const auto& c = std::get<ChoiceRule>(gp.rules[0]);
    CHECK(c.lower == 1);
    CHECK(c.upper == 1);
    std::vector<std::string> heads;
    for (AtomId h : c.heads) heads.push_back(gp.atoms.name(h));
    CHECK(heads == std::vector<std::string>{"pos(1,1)", "pos(1,2)"});
    CHECK(rule_text(gp, gp.rules[0]) == "#choice 1 {pos(1,1); pos(1,2)} 1.");
}

TEST_CASE("ground: queens diagonal constraint instances", "[ground]") {
    GroundResult r = ground_text(R"(
d(1..4).
1 {pos(X,Y):d(Y)} 1 :- d(X).
1 {pos(X,Y):d(X)} 1 :- d(Y).
:- d(X1), d(Y1), d(X2), d(Y2), pos(X1,Y1), pos(X2,Y2),
   X1 < X2, X2 - X1 = abs(Y1 - Y2).
)");
    const GroundProgram& gp = r.program;
    CHECK(diagonal_instances(4) == 28);
    CHECK(count_kind<ConstraintRule>(gp) == diagonal_instances(4));
    CHECK(count_kind<ChoiceRule>(gp) == 8);
    CHECK(gp.atoms.size() == 4 + 16);
    CHECK(gp.facts.size() == 4);
    CHECK(r.stats.rules == gp.rules.size());
    CHECK(r.stats.atoms == gp.atoms.size());
    CHECK(r.warnings.empty());
}

TEST_CASE("ground: eval_builtin", "[ground]") {
    using lp::Term;
    CHECK(eval_builtin(lp::Rel::eq, Term::sub(Term::num(2), Term::num(1)), Term::abs(Term::sub(Term::num(1), Term::num(2)))));
    CHECK(!eval_builtin(lp::Rel::lt, Term::num(3), Term::num(3)));
    CHECK(!eval_builtin(lp::Rel::ne, Term::abs(Term::sub(Term::num(1), Term::num(4))), Term::num(3)));
    CHECK(eval_builtin(lp::Rel::le, Term::var("X"), Term::num(3), {{"X", 3}}));
    CHECK_THROWS_AS(eval_builtin(lp::Rel::lt, Term::var("X"), Term::num(3)), StructuralError);
}

TEST_CASE("ground: empty domain extension warns and drops rules", "[ground]") {
    GroundResult r = ground_text("d(1..2). e(X) :- d(X), 5 < X. p(X) :- e(X). q :- not r.");
    CHECK(r.warnings.size() == 1);
    CHECK(r.warnings[0].find("e") != std::string::npos);
    CHECK(!r.program.atoms.find({"p", {1}}));
    CHECK(r.program.rules.size() == 1);
}

TEST_CASE("ground: arithmetic overflow is a structural error", "[ground]") {
    CHECK_THROWS_AS(ground_text("d(9223372036854775807..9223372036854775807). p(X + 1) :- d(X)."), StructuralError);
}

TEST_CASE("ground: fact absorption", "[ground]") {
    GroundResult r = ground_text("d(1..2). a. b :- a, not c. c :- d(X), b.");
    const GroundProgram& gp = r.program;
    for (const auto& rule : gp.rules)
        if (auto n = std::get_if<NormalRule>(&rule))
            for (AtomId a : n->pos) CHECK(!gp.facts.count(a));
    CHECK(models_by_name(gp) == std::set<std::set<std::string>>{});
    GroundResult s = ground_text("a. b :- a, not c.");
    CHECK(models_by_name(s.program) == std::set<std::set<std::string>>{{"a", "b"}});
}

TEST_CASE("ground: aggregates become weight rules", "[ground]") {
    GroundResult r = ground_text("d(1..3). {p(X)} :- d(X). :- #count{ p(X) : d(X) } >= 2. h :- #sum{ p(X) = X : d(X) } <= 1.");
    const GroundProgram& gp = r.program;
    CHECK(count_kind<WeightRule>(gp) == 2);
    auto models = models_by_name(gp);
    CHECK(models == std::set<std::set<std::string>>{{"d(1)", "d(2)", "d(3)", "h"},
                                                    {"d(1)", "d(2)", "d(3)", "h", "p(1)"},
                                                    {"d(1)", "d(2)", "d(3)", "p(2)"},
                                                    {"d(1)", "d(2)", "d(3)", "p(3)"}});
}

TEST_CASE("ground: text format round trip", "[ground]") {
    GroundResult r = ground_text(R"(
d(1..3).
{p(X)} :- d(X).
q(X) :- d(X), not p(X).
:- p(1), p(2).
h :- #sum{ p(X) = X : d(X); not q(3) = 2 } >= 3.
)");
    const std::string text = write_ground(r.program);
    GroundProgram back = read_ground(text);
    CHECK(write_ground(back) == text);
    CHECK(models_by_name(back) == models_by_name(r.program));
    CHECK_THROWS_AS(read_ground("#atoms\n2 a\n"), ParseError);
    CHECK_THROWS_AS(read_ground("#atoms\n1 a\n#rules\nb :- a.\n"), ParseError);
    CHECK_THROWS_AS(read_ground("a."), ParseError);
}

TEST_CASE("property: grounding is deterministic", "[ground][property]") {
    std::mt19937_64 rng(2718);
    for (int iter = 0; iter < 100; ++iter) {
        std::string src = oracle::random_lp_program(rng);
        lp::Program p;
        try {
            p = lp::parse_program(src);
        } catch (const ParseError&) {
            continue;
        }
        CHECK(write_ground(ground::ground(p).program) == write_ground(ground::ground(lp::parse_program(src)).program));
    }
}

TEST_CASE("property: production and naive grounders agree", "[ground][property]") {
    std::mt19937_64 rng(161803);
    int checked = 0;
    for (int iter = 0; iter < 400 && checked < 150; ++iter) {
        std::string src = oracle::random_lp_program(rng);
        lp::Program p;
        try {
            p = lp::parse_program(src);
        } catch (const ParseError&) {
            continue;
        }
        ++checked;
        INFO(src);
        GroundProgram fast = ground::ground(p).program;
        GroundProgram slow = oracle::naive_ground(p);
        auto expected = models_by_name(slow);
        REQUIRE(models_by_name(fast) == expected);
        if (fast.atoms.size() <= 14) {
            std::set<std::set<std::string>> brute;
            for (const auto& m : oracle::stable_models(fast)) {
                auto names = stable::model_names(fast, m);
                brute.insert({names.begin(), names.end()});
            }
            CHECK(brute == expected);
        }
    }
    CHECK(checked >= 100);
}
