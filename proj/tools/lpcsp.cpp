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
//
// lpcsp command-line tool: solve, ground, bench, verify, generate, encode.

#include <lpcsp/bench/harness.hpp>
#include <lpcsp/ground/text.hpp>

#include <CLI11.hpp>

#include <iostream>

using namespace lpcsp;

namespace {

constexpr int kExitError = 1;
constexpr int kExitMismatch = 2;
constexpr int kExitRefused = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string extension(const std::string& path) { return std::filesystem::path(path).extension().string(); }

/// "queens:N", a DIMACS .col file or a .sched file.
std::optional<bench::Instance> load_instance(const std::string& path, int colors) {
    if (path.rfind("queens:", 0) == 0) {
        try {
            return bench::Queens{std::stoi(path.substr(7))};
        } catch (const std::logic_error&) {
            throw Error("expected queens:N");
        }
    }
    const std::string ext = extension(path);
    if (ext == ".col") {
        std::ifstream in(path);
        if (!in) throw Error("cannot read " + path);
        return bench::read_dimacs(in, colors, std::filesystem::path(path).stem().string());
    }
    if (ext == ".sched") {
        std::ifstream in(path);
        if (!in) throw Error("cannot read " + path);
        return bench::read_schedule(in);
    }
    if (ext == ".lp" || ext == ".dl") return std::nullopt;
    throw Error("unknown input type '" + path + "' (expected .lp, .dl, .col, .sched or queens:N)");
}

void print_values(const std::string& label, const std::vector<Value>& v) {
    std::cout << label << ":";
    for (Value x : v) std::cout << ' ' << x;
    std::cout << '\n';
}

void print_stats(double setup_ms, double solve_ms, std::uint64_t nodes, std::uint64_t backtracks) {
    std::cout << "setup_ms " << bench::format_ms(setup_ms) << " solve_ms " << bench::format_ms(solve_ms) << " nodes "
              << nodes << " backtracks " << backtracks << '\n';
}

void print_model(const ground::GroundProgram& gp, const stable::Model& m) {
    auto names = stable::model_names(gp, m);
    std::sort(names.begin(), names.end());
    for (std::size_t i = 0; i < names.size(); ++i) std::cout << (i ? " " : "") << names[i];
    std::cout << '\n';
}

void print_interpretation(const declar::Interpretation& in) {
    for (const auto& [f, table] : in.functions)
        for (const auto& [args, v] : table) {
            std::cout << f << '(';
            for (std::size_t i = 0; i < args.size(); ++i) std::cout << (i ? "," : "") << args[i];
            std::cout << ") = " << v << '\n';
        }
    for (const auto& [p, ext] : in.open)
        for (const auto& args : ext) {
            std::cout << p << '(';
            for (std::size_t i = 0; i < args.size(); ++i) std::cout << (i ? "," : "") << args[i];
            std::cout << ")\n";
        }
}

std::string status_word(bool found, SearchStatus st, bench::Mode mode) {
    if (st == SearchStatus::timeout) return "TIMEOUT";
    if (st == SearchStatus::limit_reached) return "LIMIT";
    if (!found) return "UNSATISFIABLE";
    return mode == bench::Mode::optimize ? "OPTIMUM" : "SATISFIABLE";
}

struct SolveArgs {
    std::string file;
    std::string paradigm;
    std::string mode = "first";
    std::optional<std::size_t> limit;
    std::optional<double> budget;
    std::uint64_t seed = 0;
    int colors = 4;
    bool models = false;
};

Deadline deadline_of(const std::optional<double>& budget) {
    return budget ? Deadline::after(*budget) : Deadline::none();
}

int solve_lp(const SolveArgs& a, bench::Mode mode) {
    if (!a.paradigm.empty() && a.paradigm != "stable") throw Error("rule programs are solved with --paradigm stable");
    if (mode == bench::Mode::optimize) throw Error("rule programs carry no objective; optimize a .sched instance instead");
    Stopwatch setup;
    auto gr = ground::ground(lp::parse_program(read_file(a.file)));
    for (const auto& w : gr.warnings) std::cerr << "warning: " << w << '\n';
    const double setup_ms = setup.elapsed_ms();
    Stopwatch clock;
    stable::StableSolver solver(gr.program, stable::SolverOptions{deadline_of(a.budget)});
    std::size_t found = 0;
    if (mode == bench::Mode::first) {
        auto m = solver.solve_first();
        if (m) {
            std::cout << "Answer: ";
            print_model(gr.program, *m);
            found = 1;
        }
    } else {
        found = solver.enumerate(
            [&](const stable::Model& m) {
                if (a.models) {
                    std::cout << "Answer: ";
                    print_model(gr.program, m);
                }
                return true;
            },
            a.limit);
        std::cout << "Models: " << found << '\n';
    }
    std::cout << status_word(found > 0, solver.status(), mode) << '\n';
    print_stats(setup_ms, clock.elapsed_ms(), solver.stats().nodes, solver.stats().backtracks);
    return 0;
}

int solve_dl(const SolveArgs& a, bench::Mode mode) {
    if (!a.paradigm.empty() && a.paradigm != "modelgen" && a.paradigm != "abductive")
        throw Error("specifications are solved with --paradigm modelgen or abductive");
    Stopwatch setup;
    declar::Spec spec = declar::parse_spec(read_file(a.file));
    declar::Compiled c = declar::compile(spec);
    const double setup_ms = setup.elapsed_ms();
    Stopwatch clock;
    fd::Solver solver(c.problem, fd::SearchOptions{deadline_of(a.budget)});
    bool found = false;
    if (mode == bench::Mode::first) {
        auto sol = solver.solve_first();
        if (sol) print_interpretation(c.decompile(*sol));
        found = sol.has_value();
    } else if (mode == bench::Mode::all) {
        std::size_t n = solver.enumerate(
            [&](const fd::Assignment& x) {
                if (a.models) {
                    std::cout << "Answer:\n";
                    print_interpretation(c.decompile(x));
                }
                return true;
            },
            a.limit);
        std::cout << "Models: " << n << '\n';
        found = n > 0;
    } else {
        if (!spec.objective) throw Error("the specification has no maximize statement");
        auto best = solver.maximize([](const fd::Incumbent& inc) {
            std::cout << "Incumbent: " << inc.value << " at " << bench::format_ms(inc.elapsed_ms) << " ms\n";
        });
        if (best) {
            print_interpretation(c.decompile(best->assignment));
            std::cout << "Optimization: " << best->value << '\n';
        }
        found = best.has_value();
    }
    std::cout << status_word(found, solver.status(), mode) << '\n';
    print_stats(setup_ms, clock.elapsed_ms(), solver.stats().nodes, solver.stats().backtracks);
    return 0;
}

int solve_instance(const SolveArgs& a, const bench::Instance& inst, bench::Mode mode) {
    const bench::Paradigm p = a.paradigm.empty() ? bench::Paradigm::fd : bench::parse_paradigm(a.paradigm);
    bench::BenchResult r = bench::run_cell(inst, p, mode, bench::CellOptions{a.budget, a.limit, a.seed});
    for (const auto& inc : r.incumbents)
        std::cout << "Incumbent: " << inc.value << " at " << bench::format_ms(inc.ms) << " ms\n";
    if (!r.solution.empty())
        print_values(std::holds_alternative<bench::Queens>(inst)          ? "Columns"
                     : std::holds_alternative<bench::GraphInstance>(inst) ? "Colours"
                                                                          : "Starts",
                     r.solution);
    if (mode == bench::Mode::all && r.value) std::cout << "Models: " << *r.value << '\n';
    if (mode == bench::Mode::optimize && r.value) std::cout << "Optimization: " << *r.value << '\n';
    std::cout << bench::to_string(r.outcome) << '\n';
    print_stats(r.setup_ms, r.solve_ms, r.nodes, r.backtracks);
    if (!r.verified) {
        std::cerr << "error: reported solution failed re-verification: " << r.note << '\n';
        return kExitMismatch;
    }
    return 0;
}

int run_solve(const SolveArgs& a) {
    const bench::Mode mode = bench::parse_mode(a.mode);
    if (auto inst = load_instance(a.file, a.colors)) return solve_instance(a, *inst, mode);
    return extension(a.file) == ".lp" ? solve_lp(a, mode) : solve_dl(a, mode);
}

int run_ground(const std::string& file, bool stats) {
    auto gr = ground::ground(lp::parse_program(read_file(file)));
    for (const auto& w : gr.warnings) std::cerr << "warning: " << w << '\n';
    std::cout << ground::write_ground(gr.program);
    if (stats)
        std::cerr << "atoms " << gr.stats.atoms << " rules " << gr.stats.rules << " facts " << gr.stats.facts
                  << " substitutions " << gr.stats.substitutions << " ms " << bench::format_ms(gr.stats.ms) << '\n';
    return 0;
}

struct BenchArgs {
    std::string suite;
    std::string out;
    std::string plot_dir;
    std::optional<std::uint64_t> seed;
    std::optional<double> budget;
    std::optional<int> threads;
};

int run_bench(const BenchArgs& a) {
    bench::Suite suite = bench::load_suite(a.suite);
    if (a.seed) suite.seed = *a.seed;
    if (a.budget) suite.budget = *a.budget;
    if (a.threads) suite.threads = *a.threads;
    {
        std::ofstream probe(a.out);
        if (!probe) throw Error("cannot write " + a.out);
    }
    bool all_verified = true;
    auto rows = bench::run_suite(suite, [&](const bench::BenchResult& r) {
        std::cerr << bench::csv_row(r) << '\n';
        all_verified = all_verified && r.verified;
    });
    bench::write_csv(a.out, rows);
    std::cerr << rows.size() << " rows written to " << a.out << '\n';
    if (!a.plot_dir.empty())
        for (const auto& f : bench::write_plot_data(a.plot_dir, rows)) std::cerr << "plot data: " << f.string() << '\n';
    if (!all_verified) {
        std::cerr << "error: some reported solutions failed re-verification\n";
        return kExitMismatch;
    }
    return 0;
}

struct VerifyArgs {
    std::string file;
    bool oracle = false;
    std::uint64_t cap = bench::kDefaultOracleCap;
    int colors = 4;
    std::uint64_t seed = 0;
};

int report(bool ok, const std::string& what) {
    std::cout << (ok ? "agree: " : "MISMATCH: ") << what << '\n';
    return ok ? 0 : kExitMismatch;
}

int verify_lp(const VerifyArgs& a) {
    auto gp = ground::ground(lp::parse_program(read_file(a.file))).program;
    stable::StableSolver solver(gp);
    std::set<stable::Model> got;
    bool direct = true;
    for (auto& m : solver.solve_all()) {
        std::vector<char> in(gp.atoms.size() + 1, 0);
        for (auto x : m) in[static_cast<std::size_t>(x)] = 1;
        direct = direct && bench::is_stable_direct(gp, in);
        got.insert(m);
    }
    int rc = report(direct, std::to_string(got.size()) + " models pass the direct stability check");
    if (!a.oracle) return rc;
    auto expect = bench::stable_models_brute(gp, a.cap);
    return std::max(rc, report(expect == got, "solver " + std::to_string(got.size()) + " models, subset oracle " +
                                                  std::to_string(expect.size())));
}

int verify_dl(const VerifyArgs& a) {
    declar::Spec spec = declar::parse_spec(read_file(a.file));
    declar::Compiled c = declar::compile(spec);
    fd::Solver solver(c.problem);
    declar::Defined defined(spec);
    std::size_t count = 0;
    bool direct = true;
    solver.enumerate([&](const fd::Assignment& x) {
        ++count;
        direct = direct && !declar::first_violation(spec, defined, c.decompile(x));
        return true;
    });
    int rc = report(direct, std::to_string(count) + " models pass the direct evaluator");
    std::optional<Value> best;
    if (spec.objective) {
        fd::Solver opt(c.problem);
        if (auto b = opt.maximize()) best = b->value;
        std::cout << "optimum: " << (best ? std::to_string(*best) : "none") << '\n';
    }
    if (!a.oracle) return rc;
    auto o = bench::declar_oracle(spec, a.cap);
    rc = std::max(rc, report(o.models == count, "compiled " + std::to_string(count) + " models, oracle " +
                                                    std::to_string(o.models)));
    if (spec.objective) rc = std::max(rc, report(o.best == best, "optimum matches the oracle"));
    return rc;
}

int verify_instance(const VerifyArgs& a, const bench::Instance& inst) {
    int rc = 0;
    const bool sched = std::holds_alternative<bench::ScheduleInstance>(inst);
    std::optional<Value> count, best;
    if (a.oracle) {
        if (auto q = std::get_if<bench::Queens>(&inst)) count = static_cast<Value>(bench::queens_solutions(q->n, a.cap).size());
        else if (auto g = std::get_if<bench::GraphInstance>(&inst)) count = static_cast<Value>(bench::coloring_count(*g, a.cap));
        else {
            auto o = bench::schedule_oracle(std::get<bench::ScheduleInstance>(inst), a.cap);
            count = static_cast<Value>(o.feasible);
            best = o.best;
        }
        std::cout << "oracle: " << *count << " solutions";
        if (sched) std::cout << ", optimum " << (best ? std::to_string(*best) : "none");
        std::cout << '\n';
    }
    std::optional<Value> first_count, first_best;
    for (bench::Paradigm p : bench::kParadigms) {
        if (!bench::supports(inst, p)) continue;
        const std::string name = bench::to_string(p);
        auto all = bench::run_cell(inst, p, bench::Mode::all, {std::nullopt, std::nullopt, a.seed});
        rc = std::max(rc, report(all.verified, name + ": every solution re-verified"));
        if (!first_count) first_count = all.value;
        rc = std::max(rc, report(all.value == (count ? count : first_count),
                                 name + ": " + std::to_string(all.value.value_or(0)) + " solutions"));
        if (sched) {
            auto opt = bench::run_cell(inst, p, bench::Mode::optimize, {std::nullopt, std::nullopt, a.seed});
            if (!first_best) first_best = opt.value;
            rc = std::max(rc, report(opt.value == (a.oracle ? best : first_best) && opt.verified,
                                     name + ": optimum " + (opt.value ? std::to_string(*opt.value) : "none")));
        }
    }
    return rc;
}

int run_verify(const VerifyArgs& a) {
    if (auto inst = load_instance(a.file, a.colors)) return verify_instance(a, *inst);
    return extension(a.file) == ".lp" ? verify_lp(a) : verify_dl(a);
}

int run_encode(const std::string& file, const std::string& paradigm, int colors, std::optional<Value> bound) {
    auto inst = load_instance(file, colors);
    if (!inst) throw Error("encode takes queens:N, a .col or a .sched instance");
    const bench::Paradigm p = bench::parse_paradigm(paradigm);
    bench::check_supported(*inst, p);
    if (p == bench::Paradigm::stable) {
        if (auto q = std::get_if<bench::Queens>(&*inst)) std::cout << bench::lp_queens(q->n);
        else if (auto g = std::get_if<bench::GraphInstance>(&*inst)) std::cout << bench::lp_coloring(*g);
        else std::cout << bench::lp_schedule(std::get<bench::ScheduleInstance>(*inst), bound);
    } else if (p == bench::Paradigm::fd) {
        throw Error("the fd encoding is built in memory; use solve --paradigm fd");
    } else {
        if (auto q = std::get_if<bench::Queens>(&*inst)) std::cout << bench::dl_queens(q->n, p);
        else if (auto g = std::get_if<bench::GraphInstance>(&*inst)) std::cout << bench::dl_coloring(*g, p);
        else std::cout << bench::dl_schedule(std::get<bench::ScheduleInstance>(*inst));
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"lpcsp: finite-domain, stable-model and specification solvers with a benchmark harness"};
    app.require_subcommand(1);

    SolveArgs solve;
    auto* s = app.add_subcommand("solve", "Solve a .lp, .dl, .col or .sched file, or queens:N");
    s->add_option("file", solve.file, "Input file")->required();
    s->add_option("--paradigm", solve.paradigm, "fd, stable, modelgen or abductive")
        ->check(CLI::IsMember({"fd", "stable", "modelgen", "abductive"}));
    s->add_option("--mode", solve.mode, "first, all or optimize")->check(CLI::IsMember({"first", "all", "optimize"}));
    s->add_option("--limit", solve.limit, "Stop after N solutions (mode all)")->check(CLI::PositiveNumber);
    s->add_option("--budget", solve.budget, "Solve time budget in seconds")->check(CLI::PositiveNumber);
    s->add_option("--seed", solve.seed, "Seed recorded with the run");
    s->add_option("--colors", solve.colors, "Colour count for .col graphs")->check(CLI::PositiveNumber);
    s->add_flag("--models", solve.models, "Print every model in mode all");

    std::string ground_file;
    bool ground_stats = false;
    std::uint64_t ground_seed = 0;
    auto* g = app.add_subcommand("ground", "Print the ground program of a .lp file");
    g->add_option("file", ground_file, "Input .lp file")->required();
    g->add_flag("--stats", ground_stats, "Print grounding statistics to stderr");
    g->add_option("--seed", ground_seed, "Accepted for uniformity; grounding is deterministic");

    BenchArgs bench_args;
    auto* b = app.add_subcommand("bench", "Run a benchmark suite");
    b->add_option("suite", bench_args.suite, "Suite config file")->required();
    b->add_option("--out", bench_args.out, "Results CSV")->required();
    b->add_option("--plot-data", bench_args.plot_dir, "Directory for plot data files");
    b->add_option("--seed", bench_args.seed, "Override the suite seed");
    b->add_option("--budget", bench_args.budget, "Override the per-cell budget (seconds)")->check(CLI::PositiveNumber);
    b->add_option("--threads", bench_args.threads, "Override the worker count")->check(CLI::PositiveNumber);

    VerifyArgs verify;
    auto* v = app.add_subcommand("verify", "Re-check solver output, optionally against exhaustive oracles");
    v->add_option("file", verify.file, "Input file")->required();
    v->add_flag("--oracle", verify.oracle, "Compare with exhaustive enumeration");
    v->add_option("--cap", verify.cap, "Oracle search-space cap");
    v->add_option("--colors", verify.colors, "Colour count for .col graphs")->check(CLI::PositiveNumber);
    v->add_option("--seed", verify.seed, "Seed recorded with the runs");

    auto* gen = app.add_subcommand("generate", "Write a generated instance to stdout");
    gen->require_subcommand(1);
    int gn = 10, gk = 4;
    double gp = 0.2;
    std::uint64_t gseed = 0;
    auto* gg = gen->add_subcommand("graph", "G(n, p) graph in DIMACS format");
    gg->add_option("--n", gn, "Vertices")->check(CLI::PositiveNumber);
    gg->add_option("--p", gp, "Edge probability")->check(CLI::Range(0.0, 1.0));
    gg->add_option("--colors", gk, "Colour count (recorded in the comment line)");
    gg->add_option("--seed", gseed, "Generator seed");
    std::string profile = "scaled";
    auto* gs = gen->add_subcommand("schedule", "Maintenance scheduling instance");
    gs->add_option("--profile", profile, "scaled or full")->check(CLI::IsMember({"scaled", "full"}));
    gs->add_option("--seed", gseed, "Generator seed");

    std::string enc_file, enc_paradigm = "stable";
    int enc_colors = 4;
    std::optional<Value> enc_bound;
    std::uint64_t enc_seed = 0;
    auto* e = app.add_subcommand("encode", "Print the rule program or specification of an instance");
    e->add_option("file", enc_file, "queens:N, .col or .sched")->required();
    e->add_option("--paradigm", enc_paradigm, "stable, modelgen or abductive")
        ->check(CLI::IsMember({"stable", "modelgen", "abductive"}));
    e->add_option("--colors", enc_colors, "Colour count for .col graphs")->check(CLI::PositiveNumber);
    e->add_option("--min-reserve", enc_bound, "Scheduling: keep only schedules with at least this reserve");
    e->add_option("--seed", enc_seed, "Accepted for uniformity; encodings are deterministic");

    CLI11_PARSE(app, argc, argv);

    try {
        if (s->parsed()) return run_solve(solve);
        if (g->parsed()) return run_ground(ground_file, ground_stats);
        if (b->parsed()) return run_bench(bench_args);
        if (v->parsed()) return run_verify(verify);
        if (e->parsed()) return run_encode(enc_file, enc_paradigm, enc_colors, enc_bound);
        if (gg->parsed()) {
            auto graph = bench::gen_graph(gn, gp, gseed, gk);
            bench::write_dimacs(std::cout, graph);
            return 0;
        }
        if (gs->parsed()) {
            bench::write_schedule(std::cout, bench::gen_schedule(profile == "full" ? bench::ScheduleProfile::full
                                                                                    : bench::ScheduleProfile::scaled,
                                                                 gseed));
            return 0;
        }
    } catch (const bench::OracleRefusal& e) {
        std::cerr << "oracle refused: " << e.what() << '\n';
        return kExitRefused;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return 0;
}
