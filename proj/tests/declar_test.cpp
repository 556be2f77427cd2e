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

#include <lpcsp/declar/compile.hpp>
#include <lpcsp/declar/parser.hpp>
#include <lpcsp/fd/evaluate.hpp>
#include <lpcsp/fd/search.hpp>
#include <lpcsp/ground/grounder.hpp>
#include <lpcsp/lp/parser.hpp>
#include <lpcsp/stable/solver.hpp>

#include "support/brute.hpp"

#include <random>

using namespace lpcsp;
using namespace lpcsp::declar;

namespace {

std::string n_str(int n) { return std::to_string(n); }

std::string modelgen_queens(int n) {
    return "sort d = 1.." + n_str(n) +
           ";\nfunc pos: d -> d bijective;\ncon abs(pos(X1) - pos(X2)) != X2 - X1 <- X1 < X2;\n";
}

std::string modelgen_queens_split(int n) {
    return "sort d = 1.." + n_str(n) +
           ";\nfunc pos: d -> d bijective;\n"
           "con pos(X1) != pos(X2) + (X2 - X1), pos(X1) != pos(X2) - (X2 - X1) <- X1 < X2;\n";
}

std::string abductive_queens(int n) {
    return "sort d = 1.." + n_str(n) +
           ";\nopen_function pos(d, d);\n"
           "con Y1 != Y2, X2 - X1 != Y2 - Y1, X2 - X1 != Y1 - Y2 <- pos(X1, Y1), pos(X2, Y2), X1 < X2;\n";
}

std::string stable_queens(int n) {
    return "d(1.." + n_str(n) +
           ").\n1 {pos(X,Y):d(Y)} 1 :- d(X).\n1 {pos(X,Y):d(X)} 1 :- d(Y).\n"
           ":- d(X1), d(Y1), d(X2), d(Y2), pos(X1,Y1), pos(X2,Y2), X1 < X2, X2 - X1 = abs(Y1 - Y2).\n";
}

template <class K>
std::size_t count_kind(const fd::Problem& p) {
    return static_cast<std::size_t>(std::count_if(p.constraints().begin(), p.constraints().end(),
                                                  [](const fd::Constraint& c) { return std::holds_alternative<K>(c); }));
}

ParseError::Kind error_kind(const std::string& src) {
    try {
        Spec s = parse_spec(src);
        compile(s);
    } catch (const ParseError& e) {
        return e.kind();
    }
    FAIL("no error for:\n" << src);
    return ParseError::Kind::syntax;
}

std::vector<Interpretation> models(const Spec& spec, CompileOptions opt = {}) {
    Compiled c = compile(spec, opt);
    fd::Solver solver(c.problem);
    std::vector<Interpretation> out;
    for (const auto& a : solver.solve_all()) out.push_back(c.decompile(a));
    return out;
}

std::set<std::vector<Value>> tables(const std::vector<Interpretation>& ms, const std::string& f) {
    std::set<std::vector<Value>> out;
    for (const auto& m : ms) out.insert(m.table(f));
    return out;
}

std::set<std::vector<long>> as_long(const std::set<std::vector<Value>>& in) {
    std::set<std::vector<long>> out;
    for (const auto& t : in) out.insert({t.begin(), t.end()});
    return out;
}

// Random specification over d = 1..k, e = 1..m with a function f: d -> e,
// an open predicate p(d), a fact base r(d, d) and a channel.
std::string random_spec(std::mt19937_64& rng, bool with_objective) {
    auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    const int k = uni(2, 3), m = uni(2, 3);
    std::string s = "sort d = 1.." + n_str(k) + ";\nsort e = 1.." + n_str(m) + ";\n";
    const char* props[] = {"", " injective", " bijective"};
    s += std::string(uni(0, 1) ? "func f: d -> e" : "open_function f(d, e)") + props[uni(0, 2)] + ";\n";
    s += "open p(d);\npred r(d, d);\npred q(d);\n";
    s += "table dur(d) =";
    for (int i = 1; i <= k; ++i) s += (i > 1 ? ", " : " ") + n_str(uni(0, 2));
    s += ";\nchannel occ(X, V) = f(X) for dur(X);\n";
    for (int a = 1; a <= k; ++a)
        for (int b = 1; b <= k; ++b)
            if (uni(0, 2) == 0) s += "r(" + n_str(a) + ", " + n_str(b) + ");\n";
    s += "q(X) <- r(X, Y), not r(Y, X);\n";
    const int count = uni(1, 4);
    for (int i = 0; i < count; ++i) {
        const std::string c = n_str(uni(0, 3));
        switch (uni(0, 13)) {
        case 0: s += "con f(X) != f(Y) <- r(X, Y), X != Y;\n"; break;
        case 1: s += "con f(X) + 1 <= f(Y) + " + c + " <- r(X, Y);\n"; break;
        case 2: s += "<- p(X), f(X, V), V = " + c + ";\n"; break;
        case 3: s += "con #count{ X in d : p(X) } <= " + c + ";\n"; break;
        case 4: s += "con #sum{ X, X in d : p(X) } >= " + c + ";\n"; break;
        case 5: s += "<- p(X), p(Y), X < Y, r(X, Y);\n"; break;
        case 6: s += "<- p(X), not q(X);\n"; break;
        case 7: s += "con f(X) * f(Y) != " + c + " <- X < Y;\n"; break;
        case 8: s += "con abs(f(X) - f(Y)) != " + c + " <- X < Y;\n"; break;
        case 9: s += "<- f(X, V), f(Y, W), p(Z), X < Y, V = W, Z != X;\n"; break;
        case 10: s += "con #count{ X in d : occ(X, V) } <= " + n_str(uni(1, 2)) + ";\n"; break;
        case 11: s += "<- occ(X, V), p(X), V > " + c + ";\n"; break;
        case 12: s += "con f(X) - 1 = " + c + " * 0 + 1 <- q(X);\n"; break;
        default: s += "con abs(f(X) - f(Y) + 1) != " + c + " <- r(X, Y);\n"; break;
        }
    }
    if (with_objective) {
        s += "maximize min V in e : ";
        s += uni(0, 1) ? "#count{ X in d : occ(X, V) } + #sum{ dur(X), X in d : p(X) }" : "f(1) - #count{ X in d : occ(X, V) }";
        s += ";\n";
    }
    return s;
}

// All interpretations of f and p, as (table of f, extension of p) keys.
using Key = std::pair<std::vector<Value>, std::set<std::vector<Value>>>;

std::set<Key> brute_models(const Spec& spec, std::optional<Value>* best = nullptr) {
    const SortDecl& d = spec.sort("d");
    const SortDecl& e = spec.sort("e");
    const auto dv = sort_values(d), ev = sort_values(e);
    std::set<Key> out;
    Defined defined(spec);
    std::vector<Value> f(dv.size(), e.low);
    for (;;) {
        for (std::uint32_t mask = 0; mask < (1u << dv.size()); ++mask) {
            Interpretation in;
            for (std::size_t i = 0; i < dv.size(); ++i) in.functions["f"][{dv[i]}] = f[i];
            auto& ext = in.open["p"];
            for (std::size_t i = 0; i < dv.size(); ++i)
                if (mask >> i & 1) ext.insert({dv[i]});
            if (first_violation(spec, defined, in)) continue;
            out.insert({f, ext});
            if (best) {
                Value v = *objective_value(spec, in);
                if (!*best || v > **best) *best = v;
            }
        }
        std::size_t i = 0;
        while (i < f.size() && ++f[i] > e.high) f[i++] = e.low;
        if (i == f.size()) break;
    }
    return out;
}

std::set<Key> keys(const std::vector<Interpretation>& ms) {
    std::set<Key> out;
    for (const auto& m : ms) out.insert({m.table("f"), m.open.at("p")});
    return out;
}

} // namespace

TEST_CASE("declar: parse errors", "[declar]") {
    using K = ParseError::Kind;
    CHECK(error_kind("sort d = 1..3;\ncon f(X) != 1;") == K::semantic);  // undeclared function
    CHECK(error_kind("sort d = 1..3;\nfunc f: d -> d;\ncon f(X, X) != 1;") == K::arity);
    CHECK(error_kind("sort d = 1..3;\ncon X != 1;") == K::semantic);  // untyped
    CHECK(error_kind("sort d = 1..3;\nsort e = 1..2;\nfunc f: d -> d;\ntable t(e) = 1, 2;\n"
                     "con f(X) != t(X);") == K::semantic);  // two sorts for X
    CHECK(error_kind("sort d = 1..3;\nopen p(d);\n<- not p(X);") == K::semantic);
    CHECK(error_kind("sort d = 1..3;\npred a(d);\npred b(d);\na(X) <- not b(X);\nb(X) <- a(X);") == K::semantic);
    CHECK(error_kind("sort d = 1..3;\ntable t(d) = 1, 2;") == K::semantic);
    CHECK(error_kind("sort d = 3..1;") == K::semantic);
    CHECK(error_kind("sort d = 1..3;\nsort d = 1..2;") == K::semantic);
    CHECK(error_kind("sort d = 1..3\nfunc f: d -> d;") == K::syntax);
    CHECK(error_kind("sort d = 1..3;\nfunc f: d -> d;\ncon #count{ X in d : f(X, Y), f(Y, X) } <= 1;") == K::semantic);
    CHECK(error_kind("sort d = 1..2;\nsort r = 1..3;\nfunc f: d -> r bijective;") == K::semantic);
    CHECK(error_kind("sort d = 1..3;\npred e(d, d);\ne(1, 4);") == K::semantic);
    CHECK(error_kind("sort d = 1..3;\nopen p(d);\npred a(d);\na(X) <- p(X);") == K::semantic);
    CHECK(error_kind("sort d = 1..3;\nopen p(d);\ncon #count{ X in d : p(X) } <= X;") == K::semantic);
    try {
        parse_spec("sort d = 1..3;\ncon Y != 1;");
    } catch (const ParseError& e) {
        CHECK(e.variable() == "Y");
        CHECK(e.position().line == 2);
    }
}

TEST_CASE("declar: eval_defined on the attack rules", "[declar]") {
    Spec s = parse_spec(R"(
sort d = 1..4;
pred attack(d, d, d, d);
attack(X1, Y1, X2, Y2) <- Y1 = Y2;
attack(X1, Y1, X2, Y2) <- Y1 + X1 = Y2 + X2;
attack(X1, Y1, X2, Y2) <- Y1 - X1 = Y2 - X2;
)");
    CHECK(eval_defined(s, "attack", {1, 1, 2, 2}));
    CHECK(!eval_defined(s, "attack", {1, 1, 2, 3}));
    CHECK(eval_defined(s, "attack", {1, 2, 3, 2}));
    // Oracle: direct formula over the whole grid.
    Defined d(s);
    for (Value a = 1; a <= 4; ++a)
        for (Value b = 1; b <= 4; ++b)
            for (Value c = 1; c <= 4; ++c)
                for (Value e = 1; e <= 4; ++e)
                    CHECK(d.holds("attack", {a, b, c, e}) == (b == e || b + a == e + c || b - a == e - c));
    CHECK_THROWS_AS(eval_defined(s, "attack", {0, 1, 1, 1}), StructuralError);
}

TEST_CASE("declar: stratified negation", "[declar]") {
    Spec s = parse_spec(R"(
sort d = 1..5;
pred edge(d, d);
pred reach(d);
pred unreach(d);
edge(1, 2); edge(2, 3); edge(4, 5);
reach(1);
reach(Y) <- reach(X), edge(X, Y);
unreach(X) <- not reach(X);
)");
    Defined d(s);
    CHECK(d.extension("reach") == std::set<std::vector<Value>>{{1}, {2}, {3}});
    CHECK(d.extension("unreach") == std::set<std::vector<Value>>{{4}, {5}});
}

TEST_CASE("declar: compiled queens shapes", "[declar]") {
    SECTION("abs form gives one offset constraint per row pair") {
        Compiled c = compile(parse_spec(modelgen_queens(4)));
        CHECK(c.cells.size() == 4);
        for (const auto& cell : c.cells) CHECK(c.problem.var(cell.var).domain.values() == std::vector<Value>{1, 2, 3, 4});
        CHECK(count_kind<fd::AllDifferent>(c.problem) == 1);
        CHECK(count_kind<fd::NotEqualOffset>(c.problem) == 6);
        CHECK(c.problem.constraints().size() == 7);
        fd::Solver solver(c.problem);
        CHECK(solver.solve_all().size() == 2);
    }
    SECTION("two one-sided conjuncts give two linear constraints per row pair") {
        Compiled c = compile(parse_spec(modelgen_queens_split(4)));
        CHECK(count_kind<fd::Linear>(c.problem) == 12);
        for (const auto& k : c.problem.constraints())
            if (auto l = std::get_if<fd::Linear>(&k)) CHECK(l->rel == fd::Relation::ne);
        fd::Solver solver(c.problem);
        CHECK(solver.solve_all().size() == 2);
    }
    SECTION("abductive form folds forbidden pairs into != and offset constraints") {
        Compiled c = compile(parse_spec(abductive_queens(4)));
        CHECK(c.cells.size() == 4);
        CHECK(count_kind<fd::NotEqual>(c.problem) == 6);
        CHECK(count_kind<fd::NotEqualOffset>(c.problem) == 6);
        CHECK(c.problem.constraints().size() == 12);
    }
    SECTION("static guards drop instances") {
        Compiled c = compile(parse_spec(modelgen_queens(5)));
        CHECK(c.instances == 10);
    }
}

TEST_CASE("declar: aggregate compiles to a linear sum of indicators", "[declar]") {
    Compiled c = compile(parse_spec(R"(
sort unit = 1..3;
sort week = 1..1;
open maint(unit, week);
con #count{ U in unit : maint(U, W) } <= 2;
)"));
    REQUIRE(c.problem.constraints().size() == 1);
    const auto& l = std::get<fd::Linear>(c.problem.constraints()[0]);
    CHECK(l.rel == fd::Relation::le);
    CHECK(l.bound == 2);
    REQUIRE(l.terms.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(l.terms[i].coeff == 1);
        CHECK(l.terms[i].var == c.atoms[i].var);
        CHECK(c.problem.var(l.terms[i].var).domain.values() == std::vector<Value>{0, 1});
    }
    fd::Solver solver(c.problem);
    CHECK(solver.solve_all().size() == 7);
}

TEST_CASE("declar: decompile", "[declar]") {
    Spec queens = parse_spec(modelgen_queens(4));
    Compiled c = compile(queens);
    fd::Assignment a(c.problem.size(), 0);
    const Value sol[] = {2, 4, 1, 3};
    for (std::size_t i = 0; i < 4; ++i) a[static_cast<std::size_t>(c.cells[i].var)] = sol[i];
    Interpretation in = c.decompile(a);
    CHECK(in.table("pos") == std::vector<Value>{2, 4, 1, 3});
    CHECK(in.delta.empty());
    CHECK(satisfies(queens, in));
    CHECK(fd::satisfies(c.problem, a));

    Compiled open = compile(parse_spec("sort u = 1..3;\nsort w = 1..2;\nopen m(u, w);\n"));
    Interpretation none = open.decompile(fd::Assignment(open.problem.size(), 0));
    CHECK(none.delta.empty());
    CHECK(none.open.at("m").empty());

    Compiled ident = compile(parse_spec("sort d = 1..5;\nfunc f: d -> d bijective;\n"));
    fd::Assignment id;
    for (Value v = 1; v <= 5; ++v) id.push_back(v);
    CHECK(ident.decompile(id).table("f") == std::vector<Value>{1, 2, 3, 4, 5});

    CHECK_THROWS_AS(c.decompile(fd::Assignment(2, 1)), StructuralError);

    Compiled abd = compile(parse_spec(abductive_queens(4)));
    fd::Solver s(abd.problem);
    auto first = s.solve_first();
    REQUIRE(first);
    Interpretation m = abd.decompile(*first);
    CHECK(m.delta.size() == 4);
    for (const auto& atom : m.delta) CHECK(atom.rfind("pos(", 0) == 0);
}

TEST_CASE("declar: queens counts agree with brute force and stable models", "[declar]") {
    for (int n = 4; n <= 8; ++n) {
        auto perm = oracle::queens_by_permutation(n);
        REQUIRE(perm == oracle::queens_by_rows(n));
        auto mg = models(parse_spec(modelgen_queens(n)));
        auto ab = models(parse_spec(abductive_queens(n)));
        CHECK(as_long(tables(mg, "pos")) == perm);
        CHECK(as_long(tables(ab, "pos")) == perm);
        CHECK(mg.size() == perm.size());
        CHECK(ab.size() == perm.size());
        auto gp = ground::ground(lp::parse_program(stable_queens(n))).program;
        stable::StableSolver st(gp);
        CHECK(st.count() == perm.size());
    }
}

TEST_CASE("declar: cell and indicator encodings have identical solutions", "[declar]") {
    for (int n = 1; n <= 6; ++n) {
        for (const auto& src : {modelgen_queens(n), abductive_queens(n), modelgen_queens_split(n)}) {
            Spec s = parse_spec(src);
            auto cells = tables(models(s), "pos");
            auto inds = tables(models(s, {FunctionEncoding::indicators}), "pos");
            CHECK(cells == inds);
        }
    }
}

TEST_CASE("declar: function properties hold on every model", "[declar]") {
    std::mt19937_64 rng(404);
    for (int round = 0; round < 40; ++round) {
        const int k = std::uniform_int_distribution<int>(1, 4)(rng);
        const int m = std::uniform_int_distribution<int>(k, 4)(rng);
        for (const char* prop : {"injective", "bijective"}) {
            std::string src = "sort d = 1.." + n_str(k) + ";\nsort r = 1.." + n_str(m) + ";\nfunc f: d -> r " + prop + ";\n";
            if (std::string(prop) == "bijective" && k != m) {
                CHECK(error_kind(src) == ParseError::Kind::semantic);
                continue;
            }
            auto ms = models(parse_spec(src));
            std::uint64_t expect = 1;
            for (int i = 0; i < k; ++i) expect *= static_cast<std::uint64_t>(m - i);
            CHECK(ms.size() == expect);
            for (const auto& in : ms) {
                auto t = in.table("f");
                CHECK(std::set<Value>(t.begin(), t.end()).size() == t.size());
                if (std::string(prop) == "bijective") CHECK(std::set<Value>(t.begin(), t.end()).size() == static_cast<std::size_t>(m));
            }
        }
    }
}

TEST_CASE("declar: compiled models equal brute-force models of random specs", "[declar][property]") {
    std::mt19937_64 rng(7001);
    int checked = 0;
    for (int round = 0; round < 300; ++round) {
        const std::string src = random_spec(rng, false);
        INFO(src);
        Spec spec = parse_spec(src);
        const FuncDecl& f = spec.function("f");
        if (f.prop == FuncProp::bijective && spec.sort("d").high != spec.sort("e").high) {
            CHECK_THROWS_AS(compile(spec), ParseError);
            continue;
        }
        auto expect = brute_models(spec);
        auto ms = models(spec);
        Defined defined(spec);
        for (const auto& m : ms) CHECK(!first_violation(spec, defined, m));
        CHECK(keys(ms) == expect);
        CHECK(ms.size() == expect.size());
        CHECK(keys(models(spec, {FunctionEncoding::indicators})) == expect);
        ++checked;
    }
    CHECK(checked >= 150);
}

TEST_CASE("declar: maximize matches brute-force optimum", "[declar][property]") {
    std::mt19937_64 rng(7002);
    for (int round = 0; round < 150; ++round) {
        const std::string src = random_spec(rng, true);
        INFO(src);
        Spec spec = parse_spec(src);
        const FuncDecl& f = spec.function("f");
        if (f.prop == FuncProp::bijective && spec.sort("d").high != spec.sort("e").high) continue;
        std::optional<Value> best;
        brute_models(spec, &best);
        Compiled c = compile(spec);
        fd::Solver solver(c.problem);
        auto opt = solver.maximize();
        REQUIRE(opt.has_value() == best.has_value());
        if (!opt) continue;
        CHECK(opt->value == *best);
        Interpretation in = c.decompile(opt->assignment);
        CHECK(satisfies(spec, in));
        CHECK(objective_value(spec, in) == best);
    }
}

TEST_CASE("declar: scheduling-shaped specification", "[declar]") {
    Spec spec = parse_spec(R"(
% two units, four weeks
sort maint = 1..2;
sort week = 1..4;
table dur(maint) = 2, 1;
table cap(maint) = 10, 20;
pred allowed(maint, week);
allowed(1, 1); allowed(1, 2); allowed(1, 3);
allowed(2, 2); allowed(2, 3); allowed(2, 4);
open_function start(maint, week);
channel inmaint(M, W) = start(M) for dur(M);
<- start(M, S), not allowed(M, S);
con #count{ M in maint : inmaint(M, W) } <= 1;
maximize min W in week : 30 - #sum{ cap(M), M in maint : inmaint(M, W) } - 5;
)");
    Compiled c = compile(spec);
    fd::Solver all(c.problem);
    auto sols = all.solve_all();
    // unit 1 occupies weeks s, s+1 (s in 1..3); unit 2 one free week in 2..4
    std::set<std::vector<Value>> expect;
    for (Value s1 = 1; s1 <= 3; ++s1)
        for (Value s2 = 2; s2 <= 4; ++s2)
            if (s2 < s1 || s2 > s1 + 1) expect.insert({s1, s2});
    std::set<std::vector<Value>> got;
    for (const auto& a : sols) got.insert(c.decompile(a).table("start"));
    CHECK(got == expect);
    fd::Solver opt(c.problem);
    auto best = opt.maximize();
    REQUIRE(best);
    CHECK(best->value == 5);
    CHECK(objective_value(spec, c.decompile(best->assignment)) == 5);
}
