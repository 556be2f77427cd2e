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
// Graph colouring instances: seeded G(n, p) generation and DIMACS .col
// ingestion ("c" comments, one "p edge n m" line, m "e u v" lines).

#ifndef LPCSP_BENCH_GRAPH_HPP
#define LPCSP_BENCH_GRAPH_HPP

#include <lpcsp/bench/rng.hpp>

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace lpcsp::bench {

struct GraphInstance {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // u < v, sorted, no duplicates
    int k = 4;
    std::string id;

    friend bool operator==(const GraphInstance&, const GraphInstance&) = default;
};

inline void validate(const GraphInstance& g) {
    if (g.n < 1) throw StructuralError("graph needs at least one vertex");
    if (g.k < 1) throw StructuralError("graph needs at least one colour");
    std::set<std::pair<int, int>> seen;
    for (auto [u, v] : g.edges) {
        if (u < 1 || v < 1 || u > g.n || v > g.n) throw StructuralError("edge references a missing vertex");
        if (u == v) throw StructuralError("self-loop on vertex " + std::to_string(u));
        if (!seen.insert({std::min(u, v), std::max(u, v)}).second) throw StructuralError("duplicate edge");
    }
}

/// Each pair i < j is an edge iff the next uniform draw is below p; pairs
/// are visited in lexicographic order.
inline GraphInstance gen_graph(int n, double p, std::uint64_t seed, int k = 4) {
    if (n < 1) throw StructuralError("graph needs at least one vertex");
    if (!(p >= 0.0 && p <= 1.0)) throw StructuralError("edge probability outside [0, 1]");
    SplitMix64 rng(seed);
    GraphInstance g;
    g.n = n;
    g.k = k;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (rng.uniform() < p) g.edges.push_back({i, j});
    std::ostringstream id;
    id << "gnp-" << n << "-" << p << "-s" << seed;
    g.id = id.str();
    return g;
}

inline GraphInstance read_dimacs(std::istream& in, int k = 4, std::string id = "dimacs") {
    GraphInstance g;
    g.k = k;
    g.id = std::move(id);
    std::string line;
    long declared = -1;
    long lines = 0;
    int lineno = 0;
    std::set<std::pair<int, int>> edges;
    auto fail = [&](const std::string& msg) {
        throw ParseError(ParseError::Kind::syntax, {lineno, 1}, msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag == "c") continue;
        if (tag == "p") {
            std::string fmt;
            long n = 0;
            if (declared >= 0) fail("second problem line");
            if (!(ls >> fmt >> n >> declared) || (fmt != "edge" && fmt != "col")) fail("expected 'p edge n m'");
            if (n < 1 || declared < 0) fail("bad vertex or edge count");
            g.n = static_cast<int>(n);
        } else if (tag == "e") {
            long u = 0, v = 0;
            if (declared < 0) fail("edge before the problem line");
            if (!(ls >> u >> v)) fail("expected 'e u v'");
            if (u < 1 || v < 1 || u > g.n || v > g.n) fail("edge references a missing vertex");
            if (u == v) fail("self-loop");
            ++lines;
            edges.insert({static_cast<int>(std::min(u, v)), static_cast<int>(std::max(u, v))});
        } else {
            fail("unknown line type '" + tag + "'");
        }
        std::string extra;
        if (ls >> extra) fail("trailing text '" + extra + "'");
    }
    if (declared < 0) fail("missing problem line");
    if (lines != declared) fail("problem line declares " + std::to_string(declared) + " edges, found " + std::to_string(lines));
    g.edges.assign(edges.begin(), edges.end());
    return g;
}

inline void write_dimacs(std::ostream& out, const GraphInstance& g) {
    out << "c " << g.id << "\n";
    out << "p edge " << g.n << " " << g.edges.size() << "\n";
    for (auto [u, v] : g.edges) out << "e " << u << " " << v << "\n";
}

} // namespace lpcsp::bench

#endif // LPCSP_BENCH_GRAPH_HPP
