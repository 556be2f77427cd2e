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

#include <catch_amalgamated.hpp>

#include <lpcsp/bench/harness.hpp>

#include "support/brute.hpp"

#include <filesystem>
#include <sstream>

using namespace lpcsp;
using namespace lpcsp::bench;

namespace {

ScheduleInstance toy_schedule() {
    ScheduleInstance s;
    s.id = "toy";
    s.weeks = 2;
    s.units = {Unit{1, 1, 1, 10, {1}}, Unit{2, 1, 1, 20, {}}};
    s.plant_limit = {{1, 2}};
    s.area_limit = {{1, 100}};
    s.peaks = {5, 5};
    return s;
}

GraphInstance graph(int n, std::vector<std::pair<int, int>> edges, int k) {
    GraphInstance g;
    g.n = n;
    g.edges = std::move(edges);
    g.k = k;
    g.id = "g";
    return g;
}

std::vector<std::pair<int, int>> as_int_edges(const GraphInstance& g) { return {g.edges.begin(), g.edges.end()}; }

Suite small_suite(int threads) {
    std::istringstream cfg(R"(
[suite]
name = small
seed = 11
threads = )" + std::to_string(threads) + R"(
[queens]
sizes = 4..6
modes = first all
[coloring]
sizes = 5 7
instances = 2
p = 0.3
k = 3
modes = all
[schedule]
profile = scaled
instances = 2
paradigms = fd stable abductive modelgen
modes = optimize first
)");
    return parse_suite(cfg);
}

} // namespace

TEST_CASE("bench: splitmix reference values", "[bench]") {
    SplitMix64 r(1234567);
    const std::uint64_t expect[] = {6457827717110365317ULL, 3203168211198807973ULL, 9817491932198370423ULL,
                                    4593380528125082431ULL, 16408922859458223821ULL};
    for (auto e : expect) CHECK(r.next() == e);
    SplitMix64 u(5);
    for (int i = 0; i < 1000; ++i) {
        double x = u.uniform();
        CHECK((x >= 0.0 && x < 1.0));
        Value v = u.range(-3, 4);
        CHECK((v >= -3 && v <= 4));
    }
}

TEST_CASE("bench: gen_graph", "[bench]") {
    CHECK(gen_graph(3, 0.0, 9).edges.empty());
    CHECK(gen_graph(3, 1.0, 9).edges.size() == 3);
    CHECK(gen_graph(10, 0.2, 42).edges == gen_graph(10, 0.2, 42).edges);
    CHECK(gen_graph(10, 0.2, 42).edges != gen_graph(10, 0.2, 43).edges);
    CHECK_THROWS_AS(gen_graph(0, 0.2, 1), StructuralError);
    CHECK_THROWS_AS(gen_graph(3, 1.5, 1), StructuralError);
    // Independent re-derivation of the pair order and threshold.
    SplitMix64 r(42);
    std::vector<std::pair<int, int>> expect;
    for (int i = 1; i <= 10; ++i)
        for (int j = i + 1; j <= 10; ++j)
            if (static_cast<double>(r.next() >> 11) / 9007199254740992.0 < 0.2) expect.push_back({i, j});
    CHECK(as_int_edges(gen_graph(10, 0.2, 42)) == expect);
}

TEST_CASE("bench: DIMACS format", "[bench]") {
    std::istringstream in("c a comment\np edge 4 3\ne 1 2\ne 3 2\ne 2 1\n");
    CHECK(as_int_edges(read_dimacs(in)) == std::vector<std::pair<int, int>>{{1, 2}, {2, 3}});  // 3 lines, 2 edges
    std::istringstream ok("c square\np edge 4 4\ne 1 2\ne 2 3\ne 3 4\ne 4 1\n");
    GraphInstance g = read_dimacs(ok, 2, "square");
    CHECK(g.n == 4);
    CHECK(as_int_edges(g) == std::vector<std::pair<int, int>>{{1, 2}, {1, 4}, {2, 3}, {3, 4}});
    std::ostringstream out;
    write_dimacs(out, g);
    std::istringstream back(out.str());
    CHECK(read_dimacs(back, 2, "square").edges == g.edges);
    for (const char* bad : {"p edge 2 1\ne 1 3\n", "p edge 2 1\ne 1 1\n", "e 1 2\n", "p edge 2 2\ne 1 2\n",
                            "p cnf 2 1\ne 1 2\n", "p edge 2 1\ne 1 x\n", "p edge 2 1\ne 1 2 3\n"}) {
        std::istringstream b(bad);
        CHECK_THROWS(read_dimacs(b));
    }
}

TEST_CASE("bench: schedule text format round trip", "[bench]") {
    for (auto profile : {ScheduleProfile::scaled, ScheduleProfile::full}) {
        ScheduleInstance s = gen_schedule(profile, 3);
        std::ostringstream out;
        write_schedule(out, s);
        std::istringstream in(out.str());
        CHECK(read_schedule(in) == s);
    }
    ScheduleInstance toy = toy_schedule();
    std::ostringstream out;
    write_schedule(out, toy);
    std::istringstream in(out.str());
    CHECK(read_schedule(in) == toy);
    for (const char* bad : {"WEEKS 2\nUNITS\n1 1 1 10 3\nLIMITS\nplant 1 1\narea 1 5\nPEAKS\n1 0\n2 0\n",
                            "WEEKS 1\nUNITS\n1 1 1 10 1\nPEAKS\n1 0\n",
                            "WEEKS 1\n1 1 1 10 1\n", "WEEKS 1\nUNITS\n1 1 1 10 1\nLIMITS\nzone 1 1\n",
                            "WEEKS 2\nUNITS\n1 1 1 10 1\nLIMITS\nplant 1 1\narea 1 5\nPEAKS\n2 0\n"}) {
        std::istringstream b(bad);
        CHECK_THROWS_AS(read_schedule(b), Error);
    }
}

TEST_CASE("bench: gen_schedule profiles", "[bench]") {
    ScheduleInstance full = gen_schedule(ScheduleProfile::full, 1);
    CHECK(maintenances(full).size() == 56);
    CHECK(full.weeks == 52);
    CHECK(full == gen_schedule(ScheduleProfile::full, 1));
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        ScheduleInstance s = gen_schedule(ScheduleProfile::scaled, seed);
        CHECK(s.units.size() == 8);
        CHECK(s.weeks == 12);
        CHECK(s.seed == seed);
        CHECK(s == gen_schedule(ScheduleProfile::scaled, seed));
        ScheduleOracle o = schedule_oracle(s);
        CHECK(o.feasible >= 1);
        REQUIRE(o.best);
        CHECK(!schedule_violation(s, o.best_starts));
        CHECK(min_reserve(s, o.best_starts) == *o.best);
    }
}

TEST_CASE("bench: toy schedule optimum in every applicable paradigm", "[bench]") {
    // Unit 1 (10 MW) out in week 1 or 2: reserves {15, 25} either way.
    ScheduleInstance s = toy_schedule();
    ScheduleOracle o = schedule_oracle(s);
    CHECK(o.feasible == 2);
    CHECK(o.best == 15);
    for (Paradigm p : {Paradigm::fd, Paradigm::stable, Paradigm::abductive}) {
        BenchResult r = run_cell(s, p, Mode::optimize);
        INFO(to_string(p));
        CHECK(r.outcome == Outcome::optimum);
        CHECK(r.value == 15);
        CHECK(r.verified);
        BenchResult all = run_cell(s, p, Mode::all);
        CHECK(all.value == 2);
    }
    CHECK_THROWS_AS(run_cell(s, Paradigm::modelgen, Mode::optimize), Unsupported);
    CHECK_THROWS_AS(run_cell(Queens{4}, Paradigm::fd, Mode::optimize), Unsupported);
}

TEST_CASE("bench: colouring examples", "[bench]") {
    const GraphInstance triangle = graph(3, {{1, 2}, {1, 3}, {2, 3}}, 2);
    const GraphInstance edge = graph(2, {{1, 2}}, 2);
    const GraphInstance empty = graph(3, {}, 4);
    CHECK(coloring_count(triangle) == 0);
    CHECK(coloring_count(edge) == 2);
    CHECK(coloring_count(empty) == 64);
    for (Paradigm p : kParadigms) {
        INFO(to_string(p));
        CHECK(run_cell(triangle, p, Mode::first).outcome == Outcome::unsat);
        CHECK(run_cell(triangle, p, Mode::all).value == 0);
        CHECK(run_cell(edge, p, Mode::all).value == 2);
        CHECK(run_cell(empty, p, Mode::all).value == 64);
        BenchResult first = run_cell(edge, p, Mode::first);
        CHECK(first.outcome == Outcome::sat);
        CHECK(!first.value);
        CHECK(first.verified);
    }
}

TEST_CASE("bench: encodings", "[bench]") {
    fd::Problem q = fd_queens(4);
    CHECK(q.size() == 4);
    CHECK(q.constraints().size() == 12);
    CHECK(lp_queens(8).rfind("d(1..8).\n", 0) == 0);
    const GraphInstance g = graph(3, {{1, 2}, {2, 3}}, 3);
    CHECK(lp_coloring(g) ==
          "vtx(1..3).\ncol(1..3).\n1 {color(V,C):col(C)} 1 :- vtx(V).\n"
          ":- col(C), color(1,C), color(2,C).\n:- col(C), color(2,C), color(3,C).\n");
    CHECK_THROWS_AS(dl_queens(4, Paradigm::fd), Unsupported);
    CHECK(!supports(toy_schedule(), Paradigm::modelgen));
    CHECK(supports(toy_schedule(), Paradigm::abductive));
    CHECK(instance_id(Queens{5}) == "queens/5");
    CHECK(kind_of_id(instance_id(g)) == "coloring");
}

TEST_CASE("bench: queens counts across paradigms", "[bench]") {
    for (int n = 4; n <= 7; ++n) {
        const auto expect = oracle::queens_by_permutation(n).size();
        CHECK(queens_solutions(n).size() == expect);
        for (Paradigm p : kParadigms) {
            BenchResult r = run_cell(Queens{n}, p, Mode::all);
            INFO(n << " " << to_string(p));
            CHECK(r.outcome == Outcome::sat);
            CHECK(r.value == static_cast<Value>(expect));
            CHECK(r.verified);
            CHECK(r.setup_ms >= 0);
            CHECK(r.solve_ms >= 0);
        }
    }
}

TEST_CASE("bench: random colourings agree across paradigms and oracles", "[bench][property]") {
    for (std::uint64_t seed = 500; seed < 520; ++seed) {
        const int n = 3 + static_cast<int>(seed % 6);
        const int k = 2 + static_cast<int>(seed % 3);
        GraphInstance g = gen_graph(n, 0.35, seed, k);
        const auto expect = oracle::colorings(n, as_int_edges(g), k);
        CHECK(coloring_count(g) == expect);
        for (Paradigm p : kParadigms) {
            BenchResult r = run_cell(g, p, Mode::all);
            INFO(g.id << " " << to_string(p));
            CHECK(r.value == static_cast<Value>(expect));
            CHECK(r.outcome == (expect ? Outcome::sat : Outcome::unsat));
            CHECK(r.verified);
        }
    }
}

TEST_CASE("bench: scaled schedules match the oracle optimum", "[bench][property]") {
    for (std::uint64_t seed = 900; seed < 904; ++seed) {
        ScheduleInstance s = gen_schedule(ScheduleProfile::scaled, seed);
        ScheduleOracle o = schedule_oracle(s);
        for (Paradigm p : {Paradigm::fd, Paradigm::stable, Paradigm::abductive}) {
            BenchResult r = run_cell(s, p, Mode::optimize);
            INFO(s.id << " " << to_string(p));
            CHECK(r.outcome == Outcome::optimum);
            CHECK(r.value == o.best);
            CHECK(r.verified);
            REQUIRE(!r.incumbents.empty());
            for (std::size_t i = 1; i < r.incumbents.size(); ++i)
                CHECK(r.incumbents[i].value > r.incumbents[i - 1].value);
            CHECK(r.incumbents.back().value == *r.value);
        }
    }
}

TEST_CASE("bench: limits and timeouts", "[bench]") {
    BenchResult lim = run_cell(Queens{8}, Paradigm::fd, Mode::all, CellOptions{std::nullopt, 5, 0});
    CHECK(lim.outcome == Outcome::limit);
    CHECK(lim.value == 5);
    BenchResult t = run_cell(Queens{40}, Paradigm::fd, Mode::all, CellOptions{0.2, std::nullopt, 0});
    CHECK(t.outcome == Outcome::timeout);
    CHECK(t.solve_ms < 2000);
    BenchResult ts = run_cell(Queens{14}, Paradigm::stable, Mode::all, CellOptions{0.2, std::nullopt, 0});
    CHECK(ts.outcome == Outcome::timeout);
}

TEST_CASE("bench: CSV round trip", "[bench]") {
    Suite s = small_suite(1);
    auto rows = run_suite(s);
    std::ostringstream out;
    write_csv(out, rows);
    std::istringstream in(out.str());
    auto back = read_csv(in);
    REQUIRE(back.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) CHECK(back[i].same_row(rows[i]));
    CHECK(out.str().rfind(std::string(kCsvHeader) + "\n", 0) == 0);
    std::istringstream bad_header("paradigm,problem\n");
    CHECK_THROWS_AS(read_csv(bad_header), Error);
    std::istringstream bad_row(std::string(kCsvHeader) + "\nfd,queens/4,4,all,sat,2,0.1,0.2,3\n");
    CHECK_THROWS_AS(read_csv(bad_row), Error);
}

TEST_CASE("bench: suites are reproducible", "[bench]") {
    auto a = run_suite(small_suite(1));
    auto b = run_suite(small_suite(1));
    auto c = run_suite(small_suite(4));
    REQUIRE(a.size() == b.size());
    REQUIRE(a.size() == c.size());
    // 3 queens x 2 modes x 4 + 4 graphs x 4 + 2 schedules x 2 modes x 3
    CHECK(a.size() == 24 + 16 + 12);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].same_result(b[i]));
        CHECK(a[i].same_result(c[i]));
        CHECK(a[i].verified);
    }
    CHECK_THROWS_AS(parse_suite(*std::make_unique<std::istringstream>("[nope]\n")), Error);
    CHECK_THROWS_AS(parse_suite(*std::make_unique<std::istringstream>("[queens]\nsizes = x\n")), Error);
    CHECK_THROWS_AS(parse_suite(*std::make_unique<std::istringstream>("[queens]\nmodes = some\n")), Error);
}

TEST_CASE("bench: plot data", "[bench]") {
    std::istringstream cfg("[queens]\nsizes = 4 5\nmodes = all\n");
    auto rows = run_suite(parse_suite(cfg));
    const auto dir = std::filesystem::temp_directory_path() / "lpcsp_plot_test";
    std::filesystem::remove_all(dir);
    auto files = write_plot_data(dir, rows);
    REQUIRE(files.size() == 1);
    CHECK(files[0].filename() == "queens_all.dat");
    std::ifstream in(files[0]);
    std::string header, l4, l5, extra;
    std::getline(in, header);
    std::getline(in, l4);
    std::getline(in, l5);
    CHECK(header == "# size fd stable modelgen abductive");
    CHECK(l4.rfind("4 ", 0) == 0);
    CHECK(l5.rfind("5 ", 0) == 0);
    CHECK(!std::getline(in, extra));
    std::filesystem::remove_all(dir);
}
