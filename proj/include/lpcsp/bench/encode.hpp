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
// Encodings of the benchmark problems for each paradigm, and decoders from
// solver output back to plain solutions (queens: column per row; colouring:
// colour per vertex; scheduling: start week per maintenance).

#ifndef LPCSP_BENCH_ENCODE_HPP
#define LPCSP_BENCH_ENCODE_HPP

#include <lpcsp/bench/graph.hpp>
#include <lpcsp/bench/schedule.hpp>
#include <lpcsp/declar/evaluate.hpp>
#include <lpcsp/fd/problem.hpp>
#include <lpcsp/ground/program.hpp>

#include <array>
#include <variant>

namespace lpcsp::bench {

enum class Paradigm { fd, stable, modelgen, abductive };
enum class Mode { first, all, optimize };

inline constexpr std::array<Paradigm, 4> kParadigms{Paradigm::fd, Paradigm::stable, Paradigm::modelgen,
                                                    Paradigm::abductive};

inline std::string to_string(Paradigm p) {
    switch (p) {
    case Paradigm::fd: return "fd";
    case Paradigm::stable: return "stable";
    case Paradigm::modelgen: return "modelgen";
    case Paradigm::abductive: return "abductive";
    }
    return "?";
}

inline std::string to_string(Mode m) {
    switch (m) {
    case Mode::first: return "first";
    case Mode::all: return "all";
    case Mode::optimize: return "optimize";
    }
    return "?";
}

inline Paradigm parse_paradigm(const std::string& s) {
    for (Paradigm p : kParadigms)
        if (to_string(p) == s) return p;
    throw Error("unknown paradigm '" + s + "' (expected fd, stable, modelgen or abductive)");
}

inline Mode parse_mode(const std::string& s) {
    for (Mode m : {Mode::first, Mode::all, Mode::optimize})
        if (to_string(m) == s) return m;
    throw Error("unknown mode '" + s + "' (expected first, all or optimize)");
}

class Unsupported : public Error {
public:
    using Error::Error;
};

struct Queens {
    int n = 8;
    friend bool operator==(const Queens&, const Queens&) = default;
};

using Instance = std::variant<Queens, GraphInstance, ScheduleInstance>;

inline std::string problem_kind(const Instance& i) {
    if (std::holds_alternative<Queens>(i)) return "queens";
    if (std::holds_alternative<GraphInstance>(i)) return "coloring";
    return "schedule";
}

/// "<kind>/<name>", e.g. "queens/8".
inline std::string instance_id(const Instance& i) {
    if (auto q = std::get_if<Queens>(&i)) return "queens/" + std::to_string(q->n);
    if (auto g = std::get_if<GraphInstance>(&i)) return "coloring/" + g->id + "-k" + std::to_string(g->k);
    return "schedule/" + std::get<ScheduleInstance>(i).id;
}

inline std::string kind_of_id(const std::string& id) { return id.substr(0, id.find('/')); }

/// Queens: n. Colouring: vertex count. Scheduling: maintenance count.
inline int instance_size(const Instance& i) {
    if (auto q = std::get_if<Queens>(&i)) return q->n;
    if (auto g = std::get_if<GraphInstance>(&i)) return g->n;
    return static_cast<int>(maintenances(std::get<ScheduleInstance>(i)).size());
}

inline bool supports(const Instance& i, Paradigm p) {
    return !(std::holds_alternative<ScheduleInstance>(i) && p == Paradigm::modelgen);
}

inline void check_supported(const Instance& i, Paradigm p) {
    if (!supports(i, p))
        throw Unsupported(problem_kind(i) + " has no " + to_string(p) + " encoding (it needs aggregates)");
}

// ---- fd ----

/// Row i holds variable i; pairwise x_i != x_j and |x_i - x_j| != j - i.
inline fd::Problem fd_queens(int n) {
    if (n < 1) throw StructuralError("queens needs n >= 1");
    fd::Problem p;
    for (int i = 0; i < n; ++i) p.add_var(1, n, "q" + std::to_string(i + 1));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            p.post(fd::NotEqual{i, j});
            p.post(fd::NotEqualOffset{i, j, j - i});
        }
    return p;
}

inline fd::Problem fd_coloring(const GraphInstance& g) {
    validate(g);
    fd::Problem p;
    for (int v = 1; v <= g.n; ++v) p.add_var(1, g.k, "c" + std::to_string(v));
    for (auto [u, v] : g.edges) p.post(fd::NotEqual{u - 1, v - 1});
    return p;
}

struct FdSchedule {
    fd::Problem problem;
    std::vector<fd::VarId> starts;  // per maintenance
    fd::VarId objective = 0;
};

inline FdSchedule fd_schedule(const ScheduleInstance& s) {
    validate(s);
    FdSchedule out;
    fd::Problem& p = out.problem;
    const auto jobs = maintenances(s);
    const std::size_t W = static_cast<std::size_t>(s.weeks);
    std::vector<std::vector<fd::VarId>> occ;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        auto allowed = allowed_starts(s, jobs[j]);
        const std::string name = "start" + std::to_string(j + 1);
        fd::VarId v;
        if (allowed.empty()) {
            v = p.add_var(1, 1, name);
            p.post(fd::Linear{{}, fd::Relation::eq, 1});
        } else {
            v = p.add_var(fd::Domain::of(allowed), name);
        }
        out.starts.push_back(v);
        std::vector<fd::VarId> o;
        for (std::size_t w = 1; w <= W; ++w)
            o.push_back(p.add_var(0, 1, "occ" + std::to_string(j + 1) + "_" + std::to_string(w)));
        p.post(fd::OccupancyChannel{v, jobs[j].duration, o, 1});
        occ.push_back(std::move(o));
    }
    for (const auto& f : s.fixed)
        for (std::size_t j = 0; j < jobs.size(); ++j)
            if (jobs[j].unit == f.unit && jobs[j].index == f.index)
                p.post(fd::Linear{{{1, out.starts[j]}}, fd::Relation::eq, f.start});
    for (std::size_t j = 1; j < jobs.size(); ++j)
        if (jobs[j].unit == jobs[j - 1].unit)
            p.post(fd::Linear{{{1, out.starts[j - 1]}, {-1, out.starts[j]}}, fd::Relation::le, -jobs[j - 1].duration});
    for (std::size_t w = 0; w < W; ++w) {
        for (const auto& [plant, limit] : s.plant_limit) {
            fd::Linear l{{}, fd::Relation::le, limit};
            for (std::size_t j = 0; j < jobs.size(); ++j)
                if (jobs[j].plant == plant) l.terms.push_back({1, occ[j][w]});
            if (static_cast<Value>(l.terms.size()) > limit) p.post(std::move(l));
        }
        for (const auto& [area, limit] : s.area_limit) {
            fd::Linear l{{}, fd::Relation::le, limit};
            Value sum = 0;
            for (std::size_t j = 0; j < jobs.size(); ++j)
                if (jobs[j].area == area) {
                    l.terms.push_back({jobs[j].capacity, occ[j][w]});
                    sum += jobs[j].capacity;
                }
            if (sum > limit) p.post(std::move(l));
        }
    }
    const Value total = total_capacity(s);
    std::vector<fd::VarId> reserves;
    Value lo_min = INT64_MAX, hi_min = INT64_MAX;
    for (std::size_t w = 0; w < W; ++w) {
        const Value top = total - s.peaks[w];
        Value out_max = 0;
        fd::Linear eq{{}, fd::Relation::eq, top};
        for (std::size_t j = 0; j < jobs.size(); ++j) {
            eq.terms.push_back({jobs[j].capacity, occ[j][w]});
            out_max += jobs[j].capacity;
        }
        fd::VarId r = p.add_var(top - out_max, top, "reserve" + std::to_string(w + 1));
        eq.terms.push_back({1, r});
        p.post(std::move(eq));
        reserves.push_back(r);
        lo_min = std::min(lo_min, top - out_max);
        hi_min = std::min(hi_min, top);
    }
    out.objective = p.add_var(lo_min, hi_min, "min_reserve");
    p.post(fd::MinOf{out.objective, reserves});
    p.set_objective(out.objective);
    p.set_branching(out.starts);
    return out;
}

// ---- rule programs ----

inline std::string lp_queens(int n) {
    if (n < 1) throw StructuralError("queens needs n >= 1");
    return "d(1.." + std::to_string(n) +
           ").\n"
           "1 {pos(X,Y):d(Y)} 1 :- d(X).\n"
           "1 {pos(X,Y):d(X)} 1 :- d(Y).\n"
           ":- d(X1), d(Y1), d(X2), d(Y2), pos(X1,Y1), pos(X2,Y2),\n"
           "   X1 < X2, X2 - X1 = abs(Y1 - Y2).\n";
}

inline std::string lp_coloring(const GraphInstance& g) {
    validate(g);
    std::string out = "vtx(1.." + std::to_string(g.n) + ").\ncol(1.." + std::to_string(g.k) + ").\n";
    out += "1 {color(V,C):col(C)} 1 :- vtx(V).\n";
    for (auto [u, v] : g.edges)
        out += ":- col(C), color(" + std::to_string(u) + ",C), color(" + std::to_string(v) + ",C).\n";
    return out;
}

/// With min_reserve set, only schedules whose weekly reserve never drops
/// below it are models.
inline std::string lp_schedule(const ScheduleInstance& s, std::optional<Value> min_reserve = std::nullopt) {
    validate(s);
    const auto jobs = maintenances(s);
    auto n = [](auto v) { return std::to_string(v); };
    std::string out;
    out += "maint(1.." + n(jobs.size()) + ").\nweek(1.." + n(s.weeks) + ").\n";
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        const std::string m = n(j + 1);
        out += "dur(" + m + "," + n(jobs[j].duration) + "). mcap(" + m + "," + n(jobs[j].capacity) + "). mplant(" +
               m + "," + n(jobs[j].plant) + "). marea(" + m + "," + n(jobs[j].area) + ").\n";
        for (Value st : allowed_starts(s, jobs[j])) out += "allowed(" + m + "," + n(st) + "). ";
        out += "\n";
        if (j > 0 && jobs[j - 1].unit == jobs[j].unit)
            out += "follows(" + n(j) + "," + m + "," + n(jobs[j - 1].duration) + ").\n";
    }
    for (const auto& [p, l] : s.plant_limit) out += "plimit(" + n(p) + "," + n(l) + ").\n";
    for (const auto& [a, l] : s.area_limit) out += "alimit(" + n(a) + "," + n(l) + ").\n";
    out += "covers(M,S,W) :- allowed(M,S), dur(M,D), week(W), S <= W, W < S + D.\n";
    out += "1 {start(M,S) : allowed(M,S)} 1 :- maint(M).\n";
    out += "occ(M,W) :- covers(M,S,W), start(M,S).\n";
    if (s.units.end() != std::find_if(s.units.begin(), s.units.end(), [](const Unit& u) { return u.durations.size() > 1; }))
        out += ":- follows(M1,M2,D), allowed(M1,S1), allowed(M2,S2), start(M1,S1), start(M2,S2), S2 < S1 + D.\n";
    out += ":- plimit(P,L), week(W), #count{ occ(M,W) : mplant(M,P) } > L.\n";
    out += ":- alimit(A,L), week(W), #sum{ occ(M,W) = C : marea(M,A) : mcap(M,C) } > L.\n";
    if (min_reserve) {
        const Value total = total_capacity(s);
        for (int w = 1; w <= s.weeks; ++w)
            out += "outlimit(" + n(w) + "," + n(total - s.peaks[static_cast<std::size_t>(w - 1)] - *min_reserve) + ").\n";
        out += ":- outlimit(W,X), #sum{ occ(M,W) = C : mcap(M,C) } > X.\n";
    }
    return out;
}

// ---- specifications ----

inline std::string dl_queens(int n, Paradigm p) {
    if (n < 1) throw StructuralError("queens needs n >= 1");
    std::string out = "sort d = 1.." + std::to_string(n) + ";\n";
    if (p == Paradigm::modelgen)
        return out + "func pos: d -> d bijective;\ncon abs(pos(X1) - pos(X2)) != X2 - X1 <- X1 < X2;\n";
    if (p == Paradigm::abductive)
        return out + "open_function pos(d, d);\n"
                     "con Y1 != Y2, X2 - X1 != Y2 - Y1, X2 - X1 != Y1 - Y2 <- pos(X1, Y1), pos(X2, Y2), X1 < X2;\n";
    throw Unsupported("no .dl encoding for paradigm " + to_string(p));
}

inline std::string dl_coloring(const GraphInstance& g, Paradigm p) {
    validate(g);
    std::string out = "sort vtx = 1.." + std::to_string(g.n) + ";\nsort col = 1.." + std::to_string(g.k) +
                      ";\npred edge(vtx, vtx);\n";
    for (auto [u, v] : g.edges) out += "edge(" + std::to_string(u) + ", " + std::to_string(v) + ");\n";
    if (p == Paradigm::modelgen) return out + "func color: vtx -> col;\ncon color(X) != color(Y) <- edge(X, Y);\n";
    if (p == Paradigm::abductive)
        return out + "open_function color(vtx, col);\ncon C1 != C2 <- color(X, C1), color(Y, C2), edge(X, Y);\n";
    throw Unsupported("no .dl encoding for paradigm " + to_string(p));
}

inline std::string dl_schedule(const ScheduleInstance& s) {
    validate(s);
    const auto jobs = maintenances(s);
    auto n = [](auto v) { return std::to_string(v); };
    auto table = [&](const std::string& name, const std::string& sort, const std::vector<Value>& vals) {
        std::string t = "table " + name + "(" + sort + ") =";
        for (std::size_t i = 0; i < vals.size(); ++i) t += (i ? ", " : " ") + n(vals[i]);
        return t + ";\n";
    };
    std::vector<Value> dur, cap, plant, area, plimit, alimit;
    for (const auto& j : jobs) {
        dur.push_back(j.duration);
        cap.push_back(j.capacity);
        plant.push_back(j.plant);
        area.push_back(j.area);
    }
    const int plants = plant_count(s), areas = area_count(s);
    for (int p = 1; p <= plants; ++p)
        plimit.push_back(s.plant_limit.count(p) ? s.plant_limit.at(p) : static_cast<Value>(jobs.size()));
    for (int a = 1; a <= areas; ++a) alimit.push_back(s.area_limit.count(a) ? s.area_limit.at(a) : total_capacity(s));
    std::string out = "sort maint = 1.." + n(jobs.size()) + ";\nsort week = 1.." + n(s.weeks) + ";\nsort plant = 1.." +
                      n(plants) + ";\nsort area = 1.." + n(areas) + ";\n";
    out += table("dur", "maint", dur) + table("cap", "maint", cap) + table("plant_of", "maint", plant) +
           table("area_of", "maint", area) + table("peak", "week", s.peaks) + table("plimit", "plant", plimit) +
           table("alimit", "area", alimit);
    out += "pred allowed(maint, week);\npred follows(maint, maint);\n";
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        for (Value st : allowed_starts(s, jobs[j])) out += "allowed(" + n(j + 1) + ", " + n(st) + "); ";
        out += "\n";
        if (j > 0 && jobs[j - 1].unit == jobs[j].unit) out += "follows(" + n(j) + ", " + n(j + 1) + ");\n";
    }
    out += "open_function start(maint, week);\n";
    out += "channel inmaint(M, W) = start(M) for dur(M);\n";
    out += "<- start(M, S), not allowed(M, S);\n";
    out += "con start(M1) + dur(M1) <= start(M2) <- follows(M1, M2);\n";
    for (const auto& f : s.fixed)
        for (std::size_t j = 0; j < jobs.size(); ++j)
            if (jobs[j].unit == f.unit && jobs[j].index == f.index) out += "con start(" + n(j + 1) + ") = " + n(f.start) + ";\n";
    out += "con #count{ M in maint : inmaint(M, W), plant_of(M) = P } <= plimit(P);\n";
    out += "con #sum{ cap(M), M in maint : inmaint(M, W), area_of(M) = A } <= alimit(A);\n";
    out += "maximize min W in week : " + n(total_capacity(s)) + " - #sum{ cap(M), M in maint : inmaint(M, W) } - peak(W);\n";
    return out;
}

// ---- decoding ----

inline std::vector<Value> decode_atoms(const Instance& inst, const std::vector<ground::GroundAtom>& atoms) {
    const std::string pred = std::holds_alternative<Queens>(inst)          ? "pos"
                             : std::holds_alternative<GraphInstance>(inst) ? "color"
                                                                           : "start";
    std::vector<Value> out(static_cast<std::size_t>(instance_size(inst)), 0);
    for (const auto& a : atoms) {
        if (a.pred != pred || a.args.size() != 2) continue;
        if (a.args[0] < 1 || a.args[0] > static_cast<Value>(out.size())) throw StructuralError("stray atom " + to_string(a));
        out[static_cast<std::size_t>(a.args[0] - 1)] = a.args[1];
    }
    return out;
}

inline std::vector<Value> decode_interpretation(const Instance& inst, const declar::Interpretation& in) {
    const std::string f = std::holds_alternative<Queens>(inst)          ? "pos"
                          : std::holds_alternative<GraphInstance>(inst) ? "color"
                                                                        : "start";
    return in.table(f);
}

} // namespace lpcsp::bench

#endif // LPCSP_BENCH_ENCODE_HPP
