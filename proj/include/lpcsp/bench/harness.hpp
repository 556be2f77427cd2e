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
// Benchmark harness: runs (instance, paradigm, mode) cells with a setup /
// solve time split, re-verifies every reported solution with the direct
// checkers, and reads suite configs and writes CSV and plot data.

#ifndef LPCSP_BENCH_HARNESS_HPP
#define LPCSP_BENCH_HARNESS_HPP

#include <lpcsp/bench/encode.hpp>
#include <lpcsp/bench/oracle.hpp>
#include <lpcsp/declar/compile.hpp>
#include <lpcsp/declar/parser.hpp>
#include <lpcsp/fd/search.hpp>
#include <lpcsp/ground/grounder.hpp>
#include <lpcsp/lp/parser.hpp>
#include <lpcsp/stable/solver.hpp>

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <mutex>
#include <thread>

namespace lpcsp::bench {

enum class Outcome { sat, unsat, optimum, timeout, limit };

inline std::string to_string(Outcome o) {
    switch (o) {
    case Outcome::sat: return "sat";
    case Outcome::unsat: return "unsat";
    case Outcome::optimum: return "optimum";
    case Outcome::timeout: return "timeout";
    case Outcome::limit: return "limit";
    }
    return "?";
}

inline Outcome parse_outcome(const std::string& s) {
    for (Outcome o : {Outcome::sat, Outcome::unsat, Outcome::optimum, Outcome::timeout, Outcome::limit})
        if (to_string(o) == s) return o;
    throw Error("unknown outcome '" + s + "'");
}

struct IncumbentLog {
    double ms;
    Value value;
};

struct BenchResult {
    Paradigm paradigm = Paradigm::fd;
    std::string problem;          // instance id
    int size = 0;
    Mode mode = Mode::first;
    Outcome outcome = Outcome::sat;
    std::optional<Value> value;   // model count (all) or objective (optimize)
    double setup_ms = 0;
    double solve_ms = 0;
    std::uint64_t nodes = 0;
    std::uint64_t backtracks = 0;
    std::uint64_t seed = 0;
    // Not part of the CSV.
    std::vector<IncumbentLog> incumbents;
    std::vector<Value> solution;  // first or best solution, decoded
    bool verified = true;         // every reported solution passed the checker
    std::string note;

    /// Equality over the CSV columns.
    bool same_row(const BenchResult& o) const {
        return paradigm == o.paradigm && problem == o.problem && size == o.size && mode == o.mode &&
               outcome == o.outcome && value == o.value && setup_ms == o.setup_ms && solve_ms == o.solve_ms &&
               nodes == o.nodes && backtracks == o.backtracks && seed == o.seed;
    }
    /// Equality ignoring the timing columns.
    bool same_result(const BenchResult& o) const {
        BenchResult a = *this;
        a.setup_ms = o.setup_ms;
        a.solve_ms = o.solve_ms;
        return a.same_row(o);
    }
};

inline double round_ms(double ms) { return std::round(ms * 1000.0) / 1000.0; }

struct CellOptions {
    std::optional<double> budget;        // seconds of solve time
    std::optional<std::size_t> limit;    // solutions in mode all
    std::uint64_t seed = 0;
};

// ---- checking ----

/// Empty when the decoded solution is valid for the instance.
inline std::optional<std::string> check_solution(const Instance& inst, const std::vector<Value>& sol) {
    if (auto q = std::get_if<Queens>(&inst)) {
        if (static_cast<int>(sol.size()) != q->n) return "wrong number of rows";
        for (Value c : sol)
            if (c < 1 || c > q->n) return "column out of range";
        return queens_ok(sol) ? std::nullopt : std::optional<std::string>("queens attack each other");
    }
    if (auto g = std::get_if<GraphInstance>(&inst)) {
        if (static_cast<int>(sol.size()) != g->n) return "wrong number of vertices";
        for (Value c : sol)
            if (c < 1 || c > g->k) return "colour out of range";
        return coloring_ok(*g, sol) ? std::nullopt : std::optional<std::string>("adjacent vertices share a colour");
    }
    return schedule_violation(std::get<ScheduleInstance>(inst), sol);
}

namespace detail {

/// Models per cell also checked against the specification evaluator (the
/// instance checker sees every model).
inline constexpr std::size_t kSpecChecks = 256;

class Cell {
public:
    Cell(const Instance& inst, Paradigm p, Mode m, const CellOptions& opt) : inst_(inst), opt_(opt) {
        r_.paradigm = p;
        r_.mode = m;
        r_.problem = instance_id(inst);
        r_.size = instance_size(inst);
        r_.seed = opt.seed;
    }

    BenchResult run() {
        check_supported(inst_, r_.paradigm);
        if (r_.mode == Mode::optimize && !std::holds_alternative<ScheduleInstance>(inst_))
            throw Unsupported(problem_kind(inst_) + " has no objective");
        if (r_.paradigm == Paradigm::fd) run_fd();
        else if (r_.paradigm == Paradigm::stable) run_stable();
        else run_declar();
        r_.setup_ms = round_ms(r_.setup_ms);
        r_.solve_ms = round_ms(r_.solve_ms);
        return r_;
    }

private:
    Deadline deadline() const { return opt_.budget ? Deadline::after(*opt_.budget) : Deadline::none(); }

    void accept(const std::vector<Value>& sol) {
        if (auto why = check_solution(inst_, sol)) {
            r_.verified = false;
            if (r_.note.empty()) r_.note = *why;
        }
        if (r_.solution.empty()) r_.solution = sol;
    }

    void set_search_outcome(bool found, SearchStatus status) {
        if (r_.mode == Mode::first) {
            r_.outcome = found ? Outcome::sat : status == SearchStatus::timeout ? Outcome::timeout : Outcome::unsat;
        } else if (r_.mode == Mode::all) {
            r_.outcome = status == SearchStatus::timeout         ? Outcome::timeout
                         : status == SearchStatus::limit_reached ? Outcome::limit
                         : found                                 ? Outcome::sat
                                                                 : Outcome::unsat;
        } else {
            r_.outcome = status == SearchStatus::timeout ? Outcome::timeout : found ? Outcome::optimum : Outcome::unsat;
        }
    }

    void check_objective(Value reported) {
        const auto& s = std::get<ScheduleInstance>(inst_);
        if (!r_.solution.empty() && !check_solution(inst_, r_.solution) && min_reserve(s, r_.solution) != reported) {
            r_.verified = false;
            r_.note = "objective differs from the recomputed reserve";
        }
    }

    /// Shared by fd and the compiled specifications.
    void solve_fd(const fd::Problem& problem, const std::function<std::vector<Value>(const fd::Assignment&)>& decode) {
        Stopwatch clock;
        fd::Solver solver(problem, fd::SearchOptions{deadline()});
        bool found = false;
        if (r_.mode == Mode::first) {
            auto a = solver.solve_first();
            if (a) accept(decode(*a));
            found = a.has_value();
        } else if (r_.mode == Mode::all) {
            std::size_t n = solver.enumerate(
                [&](const fd::Assignment& a) {
                    accept(decode(a));
                    return true;
                },
                opt_.limit);
            r_.value = static_cast<Value>(n);
            found = n > 0;
        } else {
            auto best = solver.maximize();
            if (best) {
                r_.solution.clear();
                accept(decode(best->assignment));
                r_.value = best->value;
                check_objective(best->value);
            }
            for (const auto& inc : solver.incumbents()) r_.incumbents.push_back({inc.elapsed_ms, inc.value});
            found = best.has_value();
        }
        r_.solve_ms = clock.elapsed_ms();
        r_.nodes = solver.stats().nodes;
        r_.backtracks = solver.stats().backtracks;
        set_search_outcome(found, solver.status());
    }

    void run_fd() {
        Stopwatch setup;
        fd::Problem problem;
        std::vector<fd::VarId> vars;
        if (auto q = std::get_if<Queens>(&inst_)) {
            problem = fd_queens(q->n);
        } else if (auto g = std::get_if<GraphInstance>(&inst_)) {
            problem = fd_coloring(*g);
        } else {
            FdSchedule fs = fd_schedule(std::get<ScheduleInstance>(inst_));
            problem = std::move(fs.problem);
            vars = std::move(fs.starts);
        }
        if (vars.empty())
            for (std::size_t i = 0; i < problem.size(); ++i) vars.push_back(static_cast<fd::VarId>(i));
        r_.setup_ms = setup.elapsed_ms();
        solve_fd(problem, [&](const fd::Assignment& a) {
            std::vector<Value> out;
            for (fd::VarId v : vars) out.push_back(a[static_cast<std::size_t>(v)]);
            return out;
        });
    }

    std::string rule_text(std::optional<Value> bound) const {
        if (auto q = std::get_if<Queens>(&inst_)) return lp_queens(q->n);
        if (auto g = std::get_if<GraphInstance>(&inst_)) return lp_coloring(*g);
        return lp_schedule(std::get<ScheduleInstance>(inst_), bound);
    }

    std::vector<Value> decode_model(const ground::GroundProgram& gp, const stable::Model& m) const {
        std::vector<ground::GroundAtom> atoms;
        for (ground::AtomId a : m) atoms.push_back(gp.atoms.atom(a));
        return decode_atoms(inst_, atoms);
    }

    void run_stable() {
        Stopwatch setup;
        ground::GroundProgram gp = ground::ground(lp::parse_program(rule_text(std::nullopt))).program;
        r_.setup_ms = setup.elapsed_ms();
        Stopwatch clock;
        if (r_.mode == Mode::optimize) {
            const auto& s = std::get<ScheduleInstance>(inst_);
            auto res = stable::optimize_iterated(
                [&](std::optional<Value> bound) {
                    if (!bound) return gp;
                    return ground::ground(lp::parse_program(rule_text(bound))).program;
                },
                [&](const ground::GroundProgram& g, const stable::Model& m) {
                    return min_reserve(s, decode_model(g, m));
                },
                1, deadline());
            if (res.value) {
                accept(decode_atoms(inst_, res.atoms));
                r_.value = res.value;
                check_objective(*res.value);
            }
            for (const auto& inc : res.incumbents) r_.incumbents.push_back({inc.elapsed_ms, inc.value});
            r_.nodes = res.stats.nodes;
            r_.backtracks = res.stats.backtracks;
            r_.solve_ms = clock.elapsed_ms();
            set_search_outcome(res.value.has_value(), res.status);
            return;
        }
        stable::StableSolver solver(gp, stable::SolverOptions{deadline()});
        bool found = false;
        if (r_.mode == Mode::first) {
            auto m = solver.solve_first();
            if (m) accept(decode_model(gp, *m));
            found = m.has_value();
        } else {
            std::size_t n = solver.enumerate(
                [&](const stable::Model& m) {
                    accept(decode_model(gp, m));
                    return true;
                },
                opt_.limit);
            r_.value = static_cast<Value>(n);
            found = n > 0;
        }
        r_.solve_ms = clock.elapsed_ms();
        r_.nodes = solver.stats().nodes;
        r_.backtracks = solver.stats().backtracks;
        set_search_outcome(found, solver.status());
    }

    std::string spec_text() const {
        if (auto q = std::get_if<Queens>(&inst_)) return dl_queens(q->n, r_.paradigm);
        if (auto g = std::get_if<GraphInstance>(&inst_)) return dl_coloring(*g, r_.paradigm);
        return dl_schedule(std::get<ScheduleInstance>(inst_));
    }

    void run_declar() {
        Stopwatch setup;
        declar::Spec spec = declar::parse_spec(spec_text());
        declar::Compiled c = declar::compile(spec);
        declar::Defined defined(spec);
        r_.setup_ms = setup.elapsed_ms();
        std::size_t evaluated = 0;
        solve_fd(c.problem, [&](const fd::Assignment& a) {
            declar::Interpretation in = c.decompile(a);
            if ((r_.mode == Mode::optimize || evaluated++ < kSpecChecks) && declar::first_violation(spec, defined, in)) {
                r_.verified = false;
                if (r_.note.empty()) r_.note = "interpretation violates the specification";
            }
            return decode_interpretation(inst_, in);
        });
    }

    const Instance& inst_;
    CellOptions opt_;
    BenchResult r_;
};

} // namespace detail

/// Runs one cell. Throws Unsupported for combinations without an encoding.
inline BenchResult run_cell(const Instance& inst, Paradigm p, Mode m, const CellOptions& opt = {}) {
    return detail::Cell(inst, p, m, opt).run();
}

// ---- CSV ----

inline const char* kCsvHeader =
    "paradigm,problem,size,mode,outcome,value_or_count,setup_ms,solve_ms,nodes,backtracks,seed";

inline std::string format_ms(double ms) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(3) << ms;
    return s.str();
}

inline std::string csv_row(const BenchResult& r) {
    if (r.problem.find_first_of(",\"\n") != std::string::npos)
        throw Error("problem id '" + r.problem + "' cannot be written unquoted");
    std::ostringstream s;
    s << to_string(r.paradigm) << ',' << r.problem << ',' << r.size << ',' << to_string(r.mode) << ','
      << to_string(r.outcome) << ',' << (r.value ? std::to_string(*r.value) : "") << ',' << format_ms(r.setup_ms)
      << ',' << format_ms(r.solve_ms) << ',' << r.nodes << ',' << r.backtracks << ',' << r.seed;
    return s.str();
}

inline void write_csv(std::ostream& out, const std::vector<BenchResult>& rows) {
    out << kCsvHeader << '\n';
    for (const auto& r : rows) out << csv_row(r) << '\n';
}

inline void write_csv(const std::filesystem::path& path, const std::vector<BenchResult>& rows) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    write_csv(out, rows);
    if (!out.flush()) throw Error("cannot write " + path.string());
}

inline std::vector<BenchResult> read_csv(std::istream& in) {
    std::vector<BenchResult> out;
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) throw Error("missing or unexpected CSV header");
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) f.push_back(cell);
        if (!line.empty() && line.back() == ',') f.emplace_back();
        auto fail = [&](const std::string& why) { throw Error("CSV line " + std::to_string(lineno) + ": " + why); };
        if (f.size() != 11) fail("expected 11 fields");
        try {
            BenchResult r;
            r.paradigm = parse_paradigm(f[0]);
            r.problem = f[1];
            r.size = std::stoi(f[2]);
            r.mode = parse_mode(f[3]);
            r.outcome = parse_outcome(f[4]);
            if (!f[5].empty()) r.value = std::stoll(f[5]);
            r.setup_ms = std::stod(f[6]);
            r.solve_ms = std::stod(f[7]);
            r.nodes = std::stoull(f[8]);
            r.backtracks = std::stoull(f[9]);
            r.seed = std::stoull(f[10]);
            out.push_back(std::move(r));
        } catch (const std::logic_error& e) {
            fail(std::string("bad number: ") + e.what());
        }
    }
    return out;
}

// ---- suite config ----

struct SuiteSection {
    std::vector<int> sizes;
    std::vector<Paradigm> paradigms{kParadigms.begin(), kParadigms.end()};
    std::vector<Mode> modes{Mode::all};
    double p = 0.2;
    int k = 4;
    int instances = 1;
    std::vector<std::string> files;
    ScheduleProfile profile = ScheduleProfile::scaled;
};

struct Suite {
    std::string name = "suite";
    std::uint64_t seed = 0;
    std::optional<double> budget;
    std::optional<std::size_t> limit;
    int threads = 1;
    std::filesystem::path base;  // directory for relative file paths
    std::optional<SuiteSection> queens, coloring, schedule;
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

inline std::vector<std::string> words(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

} // namespace detail

/// INI-style suite description; see README for the keys.
inline Suite parse_suite(std::istream& in, std::filesystem::path base = {}) {
    Suite s;
    s.base = std::move(base);
    std::string line, section;
    int lineno = 0;
    auto fail = [&](const std::string& why) { throw Error("suite line " + std::to_string(lineno) + ": " + why); };
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = detail::trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail("unterminated section header");
            section = detail::trim(line.substr(1, line.size() - 2));
            if (section == "queens") s.queens.emplace();
            else if (section == "coloring") s.coloring.emplace();
            else if (section == "schedule") s.schedule.emplace();
            else if (section != "suite") fail("unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail("expected key = value");
        const std::string key = detail::trim(line.substr(0, eq)), val = detail::trim(line.substr(eq + 1));
        try {
            if (section == "suite") {
                if (key == "name") s.name = val;
                else if (key == "seed") s.seed = std::stoull(val);
                else if (key == "budget") s.budget = std::stod(val);
                else if (key == "limit") s.limit = std::stoull(val);
                else if (key == "threads") s.threads = std::max(1, std::stoi(val));
                else fail("unknown key '" + key + "' in [suite]");
                continue;
            }
            SuiteSection* sec = section == "queens" ? &*s.queens : section == "coloring" ? &*s.coloring
                                : section == "schedule"                                   ? &*s.schedule
                                                                                          : nullptr;
            if (!sec) fail("key outside a section");
            if (key == "sizes") {
                sec->sizes.clear();
                for (const auto& w : detail::words(val)) {
                    if (auto dots = w.find(".."); dots != std::string::npos) {
                        int lo = std::stoi(w.substr(0, dots)), hi = std::stoi(w.substr(dots + 2));
                        for (int n = lo; n <= hi; ++n) sec->sizes.push_back(n);
                    } else {
                        sec->sizes.push_back(std::stoi(w));
                    }
                }
            } else if (key == "paradigms") {
                sec->paradigms.clear();
                for (const auto& w : detail::words(val)) sec->paradigms.push_back(parse_paradigm(w));
            } else if (key == "modes") {
                sec->modes.clear();
                for (const auto& w : detail::words(val)) sec->modes.push_back(parse_mode(w));
            } else if (key == "p" && section == "coloring") {
                sec->p = std::stod(val);
            } else if (key == "k" && section == "coloring") {
                sec->k = std::stoi(val);
            } else if (key == "instances" && section != "queens") {
                sec->instances = std::stoi(val);
            } else if (key == "files" && section != "queens") {
                sec->files = detail::words(val);
            } else if (key == "profile" && section == "schedule") {
                if (val == "scaled") sec->profile = ScheduleProfile::scaled;
                else if (val == "full") sec->profile = ScheduleProfile::full;
                else fail("profile must be scaled or full");
            } else {
                fail("unknown key '" + key + "' in [" + section + "]");
            }
        } catch (const std::logic_error&) {
            fail("bad value for '" + key + "'");
        }
    }
    return s;
}

inline Suite load_suite(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read " + path.string());
    return parse_suite(in, path.parent_path());
}

struct SuiteInstance {
    Instance instance;
    std::uint64_t seed;
    const SuiteSection* section;
};

/// Instances in suite order. Generated instances use seed + running index.
inline std::vector<SuiteInstance> suite_instances(const Suite& s) {
    std::vector<SuiteInstance> out;
    auto path = [&](const std::string& f) { return s.base.empty() ? std::filesystem::path(f) : s.base / f; };
    if (s.queens)
        for (int n : s.queens->sizes) out.push_back({Queens{n}, s.seed, &*s.queens});
    if (s.coloring) {
        std::uint64_t idx = 0;
        for (int n : s.coloring->sizes)
            for (int i = 0; i < s.coloring->instances; ++i, ++idx)
                out.push_back({gen_graph(n, s.coloring->p, s.seed + idx, s.coloring->k), s.seed + idx, &*s.coloring});
        for (const auto& f : s.coloring->files) {
            std::ifstream in(path(f));
            if (!in) throw Error("cannot read " + path(f).string());
            out.push_back({read_dimacs(in, s.coloring->k, std::filesystem::path(f).stem().string()), s.seed,
                           &*s.coloring});
        }
    }
    if (s.schedule) {
        for (int i = 0; i < s.schedule->instances; ++i)
            out.push_back({gen_schedule(s.schedule->profile, s.seed + static_cast<std::uint64_t>(i)),
                           s.seed + static_cast<std::uint64_t>(i), &*s.schedule});
        for (const auto& f : s.schedule->files) {
            std::ifstream in(path(f));
            if (!in) throw Error("cannot read " + path(f).string());
            ScheduleInstance inst = read_schedule(in);
            out.push_back({inst, inst.seed, &*s.schedule});
        }
    }
    return out;
}

/// Runs every supported cell; rows come out in suite order regardless of
/// the thread count. `progress` is called once per finished row.
inline std::vector<BenchResult> run_suite(const Suite& s,
                                          const std::function<void(const BenchResult&)>& progress = {}) {
    struct Job {
        const SuiteInstance* inst;
        Paradigm paradigm;
        Mode mode;
    };
    const auto instances = suite_instances(s);
    std::vector<Job> jobs;
    for (const auto& si : instances)
        for (Mode m : si.section->modes)
            for (Paradigm p : si.section->paradigms) {
                if (!supports(si.instance, p)) continue;
                if (m == Mode::optimize && !std::holds_alternative<ScheduleInstance>(si.instance)) continue;
                jobs.push_back({&si, p, m});
            }
    std::vector<std::optional<BenchResult>> rows(jobs.size());
    std::vector<std::exception_ptr> errors(jobs.size());
    std::atomic<std::size_t> next{0};
    std::mutex report;
    auto worker = [&] {
        for (std::size_t i; (i = next++) < jobs.size();) {
            try {
                rows[i] = run_cell(jobs[i].inst->instance, jobs[i].paradigm, jobs[i].mode,
                                   CellOptions{s.budget, s.limit, jobs[i].inst->seed});
                if (progress) {
                    std::lock_guard lock(report);
                    progress(*rows[i]);
                }
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const int threads = std::min<int>(s.threads, static_cast<int>(std::max<std::size_t>(jobs.size(), 1)));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    std::vector<BenchResult> out;
    for (auto& r : rows) out.push_back(std::move(*r));
    return out;
}

// ---- plot data ----

/// One whitespace-separated file per (problem kind, mode), named
/// <kind>_<mode>.dat: a header line, then one line per size with the mean
/// setup + solve time in ms for each paradigm ("nan" where absent).
/// Returns the written paths.
inline std::vector<std::filesystem::path> write_plot_data(const std::filesystem::path& dir,
                                                          const std::vector<BenchResult>& rows) {
    std::filesystem::create_directories(dir);
    std::map<std::pair<std::string, std::string>, std::map<int, std::map<Paradigm, std::pair<double, int>>>> series;
    for (const auto& r : rows) {
        auto& cell = series[{kind_of_id(r.problem), to_string(r.mode)}][r.size][r.paradigm];
        cell.first += r.setup_ms + r.solve_ms;
        ++cell.second;
    }
    std::vector<std::filesystem::path> written;
    for (const auto& [key, by_size] : series) {
        const auto path = dir / (key.first + "_" + key.second + ".dat");
        std::ofstream out(path);
        if (!out) throw Error("cannot write " + path.string());
        out << "# size";
        for (Paradigm p : kParadigms) out << ' ' << to_string(p);
        out << '\n';
        for (const auto& [size, by_p] : by_size) {
            out << size;
            for (Paradigm p : kParadigms) {
                auto it = by_p.find(p);
                if (it == by_p.end()) out << " nan";
                else out << ' ' << format_ms(it->second.first / it->second.second);
            }
            out << '\n';
        }
        if (!out.flush()) throw Error("cannot write " + path.string());
        written.push_back(path);
    }
    return written;
}

} // namespace lpcsp::bench

#endif // LPCSP_BENCH_HARNESS_HPP
