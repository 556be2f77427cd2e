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
// Maintenance scheduling instances, their text format (docs/schedule-format.md)
// and a seeded generator with a planted feasible schedule.

#ifndef LPCSP_BENCH_SCHEDULE_HPP
#define LPCSP_BENCH_SCHEDULE_HPP

#include <lpcsp/bench/rng.hpp>

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace lpcsp::bench {

struct Unit {
    int id = 0;
    int plant = 1;
    int area = 1;
    Value capacity = 0;             // MW
    std::vector<Value> durations;   // weeks, one entry per maintenance, in order
    friend bool operator==(const Unit&, const Unit&) = default;
};

struct FixedStart {
    int unit = 0;
    int index = 1;  // 1-based maintenance of the unit
    Value start = 1;
    friend bool operator==(const FixedStart&, const FixedStart&) = default;
};

struct ScheduleInstance {
    std::string id = "schedule";
    int weeks = 0;
    std::vector<Unit> units;
    std::map<int, Value> plant_limit;  // units in maintenance per week
    std::map<int, Value> area_limit;   // MW in maintenance per week
    std::set<std::pair<int, int>> prohibited;  // (unit, week)
    std::vector<FixedStart> fixed;
    std::vector<Value> peaks;  // one per week
    std::uint64_t seed = 0;
    int retries = 0;
    friend bool operator==(const ScheduleInstance&, const ScheduleInstance&) = default;
};

/// One maintenance job; jobs are numbered 1.. in unit order.
struct Maintenance {
    int unit;
    int index;
    int plant;
    int area;
    Value capacity;
    Value duration;
};

inline std::vector<Maintenance> maintenances(const ScheduleInstance& s) {
    std::vector<Maintenance> out;
    for (const auto& u : s.units)
        for (std::size_t i = 0; i < u.durations.size(); ++i)
            out.push_back({u.id, static_cast<int>(i) + 1, u.plant, u.area, u.capacity, u.durations[i]});
    return out;
}

inline Value total_capacity(const ScheduleInstance& s) {
    Value t = 0;
    for (const auto& u : s.units) t = checked::add(t, u.capacity);
    return t;
}

inline int plant_count(const ScheduleInstance& s) {
    int n = 0;
    for (const auto& u : s.units) n = std::max(n, u.plant);
    return n;
}

inline int area_count(const ScheduleInstance& s) {
    int n = 0;
    for (const auto& u : s.units) n = std::max(n, u.area);
    return n;
}

/// Start weeks of job j that fit the horizon, avoid prohibited weeks and
/// agree with a fixed start.
inline std::vector<Value> allowed_starts(const ScheduleInstance& s, const Maintenance& m) {
    std::vector<Value> out;
    std::optional<Value> fixed;
    for (const auto& f : s.fixed)
        if (f.unit == m.unit && f.index == m.index) fixed = f.start;
    for (Value st = 1; st + m.duration - 1 <= s.weeks; ++st) {
        if (fixed && st != *fixed) continue;
        bool ok = true;
        for (Value w = st; w < st + m.duration; ++w)
            if (s.prohibited.count({m.unit, static_cast<int>(w)})) ok = false;
        if (ok) out.push_back(st);
    }
    return out;
}

inline void validate(const ScheduleInstance& s) {
    auto fail = [](const std::string& msg) { throw StructuralError("schedule: " + msg); };
    if (s.weeks < 1) fail("horizon must be at least one week");
    if (s.units.empty()) fail("no units");
    if (static_cast<int>(s.peaks.size()) != s.weeks) fail("need one peak per week");
    std::set<int> ids;
    for (const auto& u : s.units) {
        if (!ids.insert(u.id).second) fail("duplicate unit " + std::to_string(u.id));
        if (u.plant < 1 || u.area < 1) fail("plant and area ids start at 1");
        if (u.capacity < 0) fail("negative capacity");
        Value total = 0;
        for (Value d : u.durations) {
            if (d < 1) fail("durations must be at least one week");
            if (d > s.weeks) fail("duration exceeds the horizon");
            total += d;
        }
        if (total > s.weeks) fail("maintenances of unit " + std::to_string(u.id) + " exceed the horizon");
        if (!s.plant_limit.count(u.plant)) fail("no limit for plant " + std::to_string(u.plant));
        if (!s.area_limit.count(u.area)) fail("no limit for area " + std::to_string(u.area));
    }
    for (auto [u, w] : s.prohibited)
        if (!ids.count(u) || w < 1 || w > s.weeks) fail("prohibition outside the instance");
    std::set<std::pair<int, int>> seen;
    for (const auto& f : s.fixed) {
        auto it = std::find_if(s.units.begin(), s.units.end(), [&](const Unit& u) { return u.id == f.unit; });
        if (it == s.units.end() || f.index < 1 || f.index > static_cast<int>(it->durations.size()))
            fail("fixed start names a missing maintenance");
        if (!seen.insert({f.unit, f.index}).second) fail("maintenance fixed twice");
        Value d = it->durations[static_cast<std::size_t>(f.index - 1)];
        if (f.start < 1 || f.start + d - 1 > s.weeks) fail("fixed start outside the horizon");
        for (Value w = f.start; w < f.start + d; ++w)
            if (s.prohibited.count({f.unit, static_cast<int>(w)})) fail("fixed start hits a prohibited week");
    }
}

/// Weekly reserve minimum of a schedule (starts indexed like maintenances()).
inline Value min_reserve(const ScheduleInstance& s, const std::vector<Value>& starts) {
    const auto jobs = maintenances(s);
    const Value total = total_capacity(s);
    Value best = INT64_MAX;
    for (int w = 1; w <= s.weeks; ++w) {
        Value out = 0;
        for (std::size_t j = 0; j < jobs.size(); ++j)
            if (starts[j] <= w && w < starts[j] + jobs[j].duration) out += jobs[j].capacity;
        best = std::min(best, total - out - s.peaks[static_cast<std::size_t>(w - 1)]);
    }
    return best;
}

// ---- text format ----

inline void write_schedule(std::ostream& out, const ScheduleInstance& s) {
    out << "NAME " << s.id << "\n";
    out << "WEEKS " << s.weeks << "\n";
    out << "SEED " << s.seed << " " << s.retries << "\n";
    out << "UNITS\n# id plant area capacity durations...\n";
    for (const auto& u : s.units) {
        out << u.id << " " << u.plant << " " << u.area << " " << u.capacity;
        for (Value d : u.durations) out << " " << d;
        out << "\n";
    }
    out << "LIMITS\n";
    for (const auto& [p, l] : s.plant_limit) out << "plant " << p << " " << l << "\n";
    for (const auto& [a, l] : s.area_limit) out << "area " << a << " " << l << "\n";
    out << "PROHIBITED\n# unit week\n";
    for (auto [u, w] : s.prohibited) out << u << " " << w << "\n";
    out << "FIXED\n# unit maintenance start\n";
    for (const auto& f : s.fixed) out << f.unit << " " << f.index << " " << f.start << "\n";
    out << "PEAKS\n# week peak\n";
    for (std::size_t w = 0; w < s.peaks.size(); ++w) out << w + 1 << " " << s.peaks[w] << "\n";
}

inline ScheduleInstance read_schedule(std::istream& in) {
    ScheduleInstance s;
    std::string line, section;
    int lineno = 0;
    auto fail = [&](const std::string& msg) { throw ParseError(ParseError::Kind::syntax, {lineno, 1}, msg); };
    std::map<int, Value> peaks;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) continue;
        auto num = [&](auto& x) {
            if (!(ls >> x)) fail("expected a number");
        };
        auto done = [&] {
            std::string extra;
            if (ls >> extra) fail("trailing text '" + extra + "'");
        };
        if (head == "NAME") {
            if (!(ls >> s.id)) fail("expected a name");
            done();
            continue;
        }
        if (head == "WEEKS") {
            num(s.weeks);
            done();
            continue;
        }
        if (head == "SEED") {
            num(s.seed);
            num(s.retries);
            done();
            continue;
        }
        if (head == "UNITS" || head == "LIMITS" || head == "PROHIBITED" || head == "FIXED" || head == "PEAKS") {
            section = head;
            done();
            continue;
        }
        std::istringstream row(line);
        ls.swap(row);
        if (section == "UNITS") {
            Unit u;
            num(u.id);
            num(u.plant);
            num(u.area);
            num(u.capacity);
            Value d;
            while (ls >> d) u.durations.push_back(d);
            if (!ls.eof()) fail("bad duration");
            s.units.push_back(std::move(u));
        } else if (section == "LIMITS") {
            std::string kind;
            int id = 0;
            Value l = 0;
            ls >> kind;
            num(id);
            num(l);
            done();
            if (kind == "plant") s.plant_limit[id] = l;
            else if (kind == "area") s.area_limit[id] = l;
            else fail("limit kind must be plant or area");
        } else if (section == "PROHIBITED") {
            int u = 0, w = 0;
            num(u);
            num(w);
            done();
            s.prohibited.insert({u, w});
        } else if (section == "FIXED") {
            FixedStart f;
            num(f.unit);
            num(f.index);
            num(f.start);
            done();
            s.fixed.push_back(f);
        } else if (section == "PEAKS") {
            int w = 0;
            Value p = 0;
            num(w);
            num(p);
            done();
            if (!peaks.emplace(w, p).second) fail("week listed twice");
        } else {
            fail("data before a section header");
        }
    }
    for (const auto& [w, p] : peaks) {
        if (w != static_cast<int>(s.peaks.size()) + 1) {
            lineno = 0;
            fail("peaks must cover weeks 1.." + std::to_string(s.weeks) + " in order");
        }
        s.peaks.push_back(p);
    }
    validate(s);
    return s;
}

// ---- generation ----

enum class ScheduleProfile { scaled, full };

struct ProfileShape {
    int units, weeks, twice;       // units, horizon, units with a second maintenance
    int plants, areas;
    Value dur_lo, dur_hi;
    Value cap_lo, cap_hi;          // MW, multiples of 10
    Value plant_lo, plant_hi;      // plant limit range
    double area_lo, area_hi;       // area limit as a share of area capacity
    double prohibit;               // per (unit, week)
    int fixed;
};

inline ProfileShape shape(ScheduleProfile p) {
    if (p == ScheduleProfile::scaled) return {8, 12, 0, 3, 2, 1, 3, 50, 300, 1, 2, 0.4, 0.7, 0.25, 1};
    return {40, 52, 16, 10, 4, 1, 5, 100, 800, 1, 3, 0.3, 0.6, 0.05, 4};
}

namespace detail {

// Draws one candidate; nullopt when the planted schedule cannot be placed.
inline std::optional<ScheduleInstance> draw_schedule(const ProfileShape& sh, SplitMix64& rng) {
    ScheduleInstance s;
    s.weeks = sh.weeks;
    for (int i = 1; i <= sh.units; ++i) {
        Unit u;
        u.id = i;
        u.plant = static_cast<int>(rng.range(1, sh.plants));
        u.area = static_cast<int>(rng.range(1, sh.areas));
        u.capacity = 10 * rng.range(sh.cap_lo / 10, sh.cap_hi / 10);
        u.durations.push_back(rng.range(sh.dur_lo, sh.dur_hi));
        if (i <= sh.twice) u.durations.push_back(rng.range(sh.dur_lo, sh.dur_hi));
        s.units.push_back(std::move(u));
    }
    for (int p = 1; p <= sh.plants; ++p) s.plant_limit[p] = rng.range(sh.plant_lo, sh.plant_hi);
    for (int a = 1; a <= sh.areas; ++a) {
        Value cap = 0, biggest = 0;
        for (const auto& u : s.units)
            if (u.area == a) {
                cap += u.capacity;
                biggest = std::max(biggest, u.capacity);
            }
        double share = sh.area_lo + (sh.area_hi - sh.area_lo) * rng.uniform();
        s.area_limit[a] = std::max(biggest, static_cast<Value>(static_cast<double>(cap) * share) / 10 * 10);
    }
    // Plant a schedule: jobs in order, random feasible start after the
    // previous job of the same unit.
    const auto jobs = maintenances(s);
    std::vector<std::vector<Value>> plant_use(static_cast<std::size_t>(sh.plants + 1),
                                              std::vector<Value>(static_cast<std::size_t>(sh.weeks + 1), 0));
    auto area_use = std::vector<std::vector<Value>>(static_cast<std::size_t>(sh.areas + 1),
                                                    std::vector<Value>(static_cast<std::size_t>(sh.weeks + 1), 0));
    std::vector<Value> starts;
    std::map<int, Value> unit_free;  // first week after the unit's previous job
    for (const auto& j : jobs) {
        Value earliest = unit_free.count(j.unit) ? unit_free[j.unit] : 1;
        // leave room for the unit's later jobs
        Value later = 0;
        for (const auto& k : jobs)
            if (k.unit == j.unit && k.index > j.index) later += k.duration;
        std::vector<Value> fits;
        for (Value st = earliest; st + j.duration - 1 + later <= sh.weeks; ++st) {
            bool ok = true;
            for (Value w = st; w < st + j.duration && ok; ++w) {
                auto ws = static_cast<std::size_t>(w);
                ok = plant_use[static_cast<std::size_t>(j.plant)][ws] + 1 <= s.plant_limit[j.plant] &&
                     area_use[static_cast<std::size_t>(j.area)][ws] + j.capacity <= s.area_limit[j.area];
            }
            if (ok) fits.push_back(st);
        }
        if (fits.empty()) return std::nullopt;
        Value st = fits[static_cast<std::size_t>(rng.range(0, static_cast<Value>(fits.size()) - 1))];
        for (Value w = st; w < st + j.duration; ++w) {
            ++plant_use[static_cast<std::size_t>(j.plant)][static_cast<std::size_t>(w)];
            area_use[static_cast<std::size_t>(j.area)][static_cast<std::size_t>(w)] += j.capacity;
        }
        unit_free[j.unit] = st + j.duration;
        starts.push_back(st);
    }
    // Prohibitions avoid the planted weeks; fixed starts copy planted ones.
    std::set<std::pair<int, int>> busy;
    for (std::size_t i = 0; i < jobs.size(); ++i)
        for (Value w = starts[i]; w < starts[i] + jobs[i].duration; ++w) busy.insert({jobs[i].unit, static_cast<int>(w)});
    for (const auto& u : s.units)
        for (int w = 1; w <= sh.weeks; ++w)
            if (rng.chance(sh.prohibit) && !busy.count({u.id, w})) s.prohibited.insert({u.id, w});
    std::set<std::size_t> chosen;
    while (static_cast<int>(chosen.size()) < std::min<int>(sh.fixed, static_cast<int>(jobs.size())))
        chosen.insert(static_cast<std::size_t>(rng.range(0, static_cast<Value>(jobs.size()) - 1)));
    for (std::size_t i : chosen) s.fixed.push_back({jobs[i].unit, jobs[i].index, starts[i]});
    const Value total = total_capacity(s);
    for (int w = 1; w <= sh.weeks; ++w) {
        double season = 0.6 + 0.1 * std::cos(6.283185307179586 * (w - 1) / sh.weeks);
        double noise = 0.05 * (rng.uniform() - 0.5);
        s.peaks.push_back(static_cast<Value>(static_cast<double>(total) * (season + noise)));
    }
    return s;
}

} // namespace detail

/// Search-space size of a brute-force scan: product of allowed start counts
/// (saturating at UINT64_MAX).
inline std::uint64_t schedule_space(const ScheduleInstance& s) {
    std::uint64_t product = 1;
    for (const auto& j : maintenances(s)) {
        auto n = static_cast<std::uint64_t>(allowed_starts(s, j).size());
        if (n != 0 && product > UINT64_MAX / n) return UINT64_MAX;
        product *= n;
    }
    return product;
}

/// Deterministic per seed. Candidate k (k = 0, 1, ...) is drawn from a
/// generator seeded with seed + k; the first candidate whose planted
/// schedule fits (and, for the scaled profile, whose search space is at
/// most space_cap) is returned with retries = k.
inline ScheduleInstance gen_schedule(ScheduleProfile profile, std::uint64_t seed,
                                     std::uint64_t space_cap = 10'000'000) {
    const ProfileShape sh = shape(profile);
    for (int k = 0; k < 100000; ++k) {
        SplitMix64 rng(seed + static_cast<std::uint64_t>(k));
        auto s = detail::draw_schedule(sh, rng);
        if (!s) continue;
        if (profile == ScheduleProfile::scaled && schedule_space(*s) > space_cap) continue;
        s->seed = seed;
        s->retries = k;
        s->id = std::string(profile == ScheduleProfile::scaled ? "sched-scaled" : "sched-full") + "-s" +
                std::to_string(seed);
        validate(*s);
        return *s;
    }
    throw Error("schedule generator found no instance");
}

} // namespace lpcsp::bench

#endif // LPCSP_BENCH_SCHEDULE_HPP
