#pragma once
// Shared helpers for the test binaries: compact graph builders, the worked
// examples every suite leans on, seeded random generators, and brute-force
// oracles that are deliberately independent of the library code they check.

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "gm/delay.hpp"
#include "gm/graph.hpp"
#include "gm/matrixlab.hpp"
#include "gm/partition.hpp"

namespace support {

inline constexpr std::int64_t kInf = -1;

inline gm::Mult m(std::int64_t v) { return v < 0 ? gm::Mult::inf() : gm::Mult::fin(v); }

struct EdgeSpec {
    std::string id, src, rng;
    std::int64_t mult = 1;
};

inline gm::Graph make_graph(const std::vector<std::string>& vs, const std::vector<EdgeSpec>& es,
                            const std::vector<std::string>& frontier = {}) {
    gm::Graph::builder b;
    for (const auto& v : vs)
        b.vertex(v);
    for (const auto& e : es)
        b.bundle(e.id, e.src, e.rng, m(e.mult));
    if (!frontier.empty()) {
        b.truncated(true);
        for (const auto& f : frontier)
            b.frontier(f);
    }
    return std::move(b).build();
}

inline bool iso(const gm::Graph& a, const gm::Graph& b) { return gm::isomorphic(a, b).has_value(); }

// For graphs past the default node limit (duals and maximal splits get big).
// Safe when the graphs are expected to match: symmetric positives are found
// quickly, and the degree screen rejects most negatives outright.
inline bool iso_big(const gm::Graph& a, const gm::Graph& b) {
    return gm::isomorphic(a, b, gm::IsoBudget{256, 200'000'000}).has_value();
}

// Runs f, which must raise gm::error, and returns the error code.
template <typename F> inline gm::errc error_code_of(F&& f) {
    try {
        f();
    } catch (const gm::error& e) {
        return e.code();
    }
    throw std::logic_error("expected a gm::error");
}

// ---------------------------------------------------------------------------
// Worked examples. Each fixture is an input graph plus the move data and the
// hand-encoded expected result; expected graphs are compared up to
// isomorphism so the generated names never matter.

namespace fx {

// Single infinite bundle v -> w. The running example for splitting and
// delaying at an infinite emitter.
inline gm::Graph inf_edge() { return make_graph({"v", "w"}, {{"e", "v", "w", kInf}}); }

// Out-partition {one edge | the rest}: proper, one infinite cell.
inline gm::OutPartition split_one_rest() {
    gm::OutPartition p;
    p.at.push_back({"v", {{{"e", m(1)}}, {{"e", m(kInf)}}}});
    return p;
}

inline gm::Graph split_one_rest_expected() {
    return make_graph({"v1", "v2", "w"}, {{"e1", "v1", "w", 1}, {"e2", "v2", "w", kInf}});
}

// Out-partition {infinitely many | infinitely many}: valid but improper.
inline gm::OutPartition split_inf_inf() {
    gm::OutPartition p;
    p.at.push_back({"v", {{{"e", m(kInf)}}, {{"e", m(kInf)}}}});
    return p;
}

inline gm::Graph split_inf_inf_expected() {
    return make_graph({"v1", "v2", "w"}, {{"e1", "v1", "w", kInf}, {"e2", "v2", "w", kInf}});
}

// Out-delay of inf_edge with one edge at delay 0, infinitely many at delay 1
// and one at every later delay; d(v) is infinite. Valid but not strictly
// proper: the copy at level 1 keeps infinite valency.
inline gm::SourceVector delayed_fan_vector() {
    gm::SourceVector d;
    d.vertices["v"] = gm::Mult::inf();
    gm::BundleDelays bd;
    bd.bundle = "e";
    bd.classes = {{0, m(1)}, {1, m(kInf)}};
    bd.tail = gm::DelayTail{2, 1};
    d.edges.push_back(bd);
    return d;
}

inline gm::Graph delayed_fan_expected_depth3() {
    return make_graph({"v0", "v1", "v2", "v3", "w0"},
                      {{"f1", "v0", "v1", 1},
                       {"f2", "v1", "v2", 1},
                       {"f3", "v2", "v3", 1},
                       {"e0", "v0", "w0", 1},
                       {"e1", "v1", "w0", kInf},
                       {"e2", "v2", "w0", 1},
                       {"e3", "v3", "w0", 1}},
                      {"v3"});
}

// Desingularization of inf_edge at depth 3: tails under both vertices, the
// infinite bundle enumerated one edge per delay.
inline gm::Graph desingularized_inf_edge_depth3() {
    return make_graph({"v0", "v1", "v2", "v3", "w0", "w1", "w2", "w3"},
                      {{"fv1", "v0", "v1", 1},
                       {"fv2", "v1", "v2", 1},
                       {"fv3", "v2", "v3", 1},
                       {"fw1", "w0", "w1", 1},
                       {"fw2", "w1", "w2", 1},
                       {"fw3", "w2", "w3", 1},
                       {"e0", "v0", "w0", 1},
                       {"e1", "v1", "w0", 1},
                       {"e2", "v2", "w0", 1},
                       {"e3", "v3", "w0", 1}},
                      {"v3", "w3"});
}

// In-delay of inf_edge enumerating the bundle along an infinite head at w.
inline gm::RangeVector spread_head_vector() {
    gm::RangeVector d;
    d.vertices["w"] = gm::Mult::inf();
    gm::BundleDelays bd;
    bd.bundle = "e";
    bd.tail = gm::DelayTail{0, 1};
    d.edges.push_back(bd);
    return d;
}

inline gm::Graph spread_head_expected_depth3() {
    return make_graph({"v0", "w0", "w1", "w2", "w3"},
                      {{"f1", "w1", "w0", 1},
                       {"f2", "w2", "w1", 1},
                       {"f3", "w3", "w2", 1},
                       {"e0", "v0", "w0", 1},
                       {"e1", "v0", "w1", 1},
                       {"e2", "v0", "w2", 1},
                       {"e3", "v0", "w3", 1}},
                      {"w3"});
}

// Two edges into a sink: u -> v <- w.
inline gm::Graph two_into_sink() {
    return make_graph({"u", "w", "v"}, {{"a", "u", "v", 1}, {"b", "w", "v", 1}});
}

// In-split at the sink, one cell per edge: improper.
inline gm::InPartition sink_split() {
    gm::InPartition p;
    p.at.push_back({"v", {{{"a", m(1)}}, {{"b", m(1)}}}});
    return p;
}

inline gm::Graph sink_split_expected() {
    return make_graph({"u", "w", "v1", "v2"}, {{"a", "u", "v1", 1}, {"b", "w", "v2", 1}});
}

// The in-delay induced by sink_split: b is delayed by one step at v.
inline gm::Graph sink_split_delay_expected() {
    return make_graph({"u0", "w0", "v0", "v1"},
                      {{"f", "v1", "v0", 1}, {"a", "u0", "v0", 1}, {"b", "w0", "v1", 1}});
}

// Two edges into an infinite emitter feeding a finite chain:
// u -> v <- w, v -> x (infinitely), x -> y.
inline gm::Graph two_into_emitter() {
    return make_graph(
        {"u", "w", "v", "x", "y"},
        {{"a", "u", "v", 1}, {"b", "w", "v", 1}, {"c", "v", "x", kInf}, {"g", "x", "y", 1}});
}

inline gm::InPartition emitter_split() { return sink_split(); }

inline gm::Graph emitter_split_expected() {
    return make_graph({"u", "w", "v1", "v2", "x1", "y1"},
                      {{"a", "u", "v1", 1},
                       {"b", "w", "v2", 1},
                       {"c1", "v1", "x1", kInf},
                       {"c2", "v2", "x1", kInf},
                       {"g1", "x1", "y1", 1}});
}

inline gm::Graph emitter_split_delay_expected() {
    return make_graph({"u0", "w0", "v0", "v1", "x0", "y0"},
                      {{"f", "v1", "v0", 1},
                       {"a", "u0", "v0", 1},
                       {"b", "w0", "v1", 1},
                       {"c", "v0", "x0", kInf},
                       {"g", "x0", "y0", 1}});
}

// One vertex, two loops. Its dual is the complete graph on two vertices.
inline gm::Graph two_loops() {
    return make_graph({"u"}, {{"a", "u", "u", 1}, {"b", "u", "u", 1}});
}

inline gm::Graph two_loops_dual_expected() {
    return make_graph({"a", "b"},
                      {{"aa", "a", "a", 1}, {"ab", "a", "b", 1}, {"ba", "b", "a", 1}, {"bb", "b", "b", 1}});
}

} // namespace fx

// ---------------------------------------------------------------------------
// Seeded random instances.

struct RandomGraphOptions {
    std::size_t max_vertices = 6;
    std::size_t max_extra_bundles = 10;
    std::int64_t max_mult = 3;
    bool sink_free = false;
    bool source_free = false;
};

inline gm::Graph random_graph(std::mt19937& rng, const RandomGraphOptions& opt = {}) {
    std::uniform_int_distribution<std::size_t> nv(1, opt.max_vertices);
    const std::size_t n = nv(rng);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i)
        names.push_back("v" + std::to_string(i));

    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::uniform_int_distribution<std::int64_t> mult(1, opt.max_mult);
    std::vector<EdgeSpec> edges;
    auto add = [&](std::size_t s, std::size_t r) {
        edges.push_back({"e" + std::to_string(edges.size()), names[s], names[r], mult(rng)});
    };
    if (opt.sink_free)
        for (std::size_t v = 0; v < n; ++v)
            add(v, pick(rng));
    if (opt.source_free)
        for (std::size_t v = 0; v < n; ++v) {
            bool covered = false;
            for (const auto& e : edges)
                covered = covered || e.rng == names[v];
            if (!covered)
                add(pick(rng), v);
        }
    std::uniform_int_distribution<std::size_t> extra(0, opt.max_extra_bundles);
    for (std::size_t k = extra(rng); k > 0; --k)
        add(pick(rng), pick(rng));
    if (edges.empty())
        add(pick(rng), pick(rng)); // avoid the degenerate edgeless instance
    return make_graph(names, edges);
}

// Random valid out-partition: each vertex's outgoing edge units are dealt
// into 1..3 nonempty cells. Finite multiplicities only. Single-cell vertices
// are sometimes left implicit to exercise the trivial default.
inline gm::OutPartition random_out_partition(std::mt19937& rng, const gm::Graph& g) {
    gm::OutPartition p;
    for (const auto& v : g.vertices()) {
        if (g.is_sink(v))
            continue;
        std::vector<std::string> units; // bundle id, one entry per edge
        for (std::size_t bi : g.out_bundles(v)) {
            const auto& b = g.bundles()[bi];
            for (std::uint64_t k = 0; k < b.mult.count(); ++k)
                units.push_back(b.id);
        }
        std::uniform_int_distribution<std::size_t> nc(1, std::min<std::size_t>(units.size(), 3));
        const std::size_t cells = nc(rng);
        if (cells == 1 && std::uniform_int_distribution<int>(0, 1)(rng))
            continue; // implicit trivial entry
        std::shuffle(units.begin(), units.end(), rng);
        std::vector<std::map<std::string, std::int64_t>> dealt(cells);
        for (std::size_t i = 0; i < units.size(); ++i) {
            const std::size_t c =
                i < cells ? i : std::uniform_int_distribution<std::size_t>(0, cells - 1)(rng);
            ++dealt[c][units[i]];
        }
        gm::VertexCells vc{v, {}};
        for (const auto& cell : dealt) {
            gm::Cell out;
            for (const auto& [id, count] : cell)
                out.push_back({id, m(count)});
            vc.cells.push_back(out);
        }
        p.at.push_back(vc);
    }
    return p;
}

inline gm::InPartition random_in_partition(std::mt19937& rng, const gm::Graph& g) {
    gm::InPartition p;
    for (const auto& v : g.vertices()) {
        if (g.is_source(v))
            continue;
        std::vector<std::string> units;
        for (std::size_t bi : g.in_bundles(v)) {
            const auto& b = g.bundles()[bi];
            for (std::uint64_t k = 0; k < b.mult.count(); ++k)
                units.push_back(b.id);
        }
        std::uniform_int_distribution<std::size_t> nc(1, std::min<std::size_t>(units.size(), 3));
        const std::size_t cells = nc(rng);
        if (cells == 1 && std::uniform_int_distribution<int>(0, 1)(rng))
            continue;
        std::shuffle(units.begin(), units.end(), rng);
        std::vector<std::map<std::string, std::int64_t>> dealt(cells);
        for (std::size_t i = 0; i < units.size(); ++i) {
            const std::size_t c =
                i < cells ? i : std::uniform_int_distribution<std::size_t>(0, cells - 1)(rng);
            ++dealt[c][units[i]];
        }
        gm::VertexCells vc{v, {}};
        for (const auto& cell : dealt) {
            gm::Cell out;
            for (const auto& [id, count] : cell)
                out.push_back({id, m(count)});
            vc.cells.push_back(out);
        }
        p.at.push_back(vc);
    }
    return p;
}

// Random finite source vector: every edge unit gets a delay in 0..3 and each
// vertex the forced supremum. Finite multiplicities only.
inline gm::SourceVector random_source_vector(std::mt19937& rng, const gm::Graph& g) {
    gm::SourceVector d;
    std::uniform_int_distribution<std::uint64_t> delay(0, 3);
    for (const auto& v : g.vertices()) {
        std::uint64_t sup = 0;
        bool any = false;
        for (std::size_t bi : g.out_bundles(v)) {
            const auto& b = g.bundles()[bi];
            std::map<std::uint64_t, std::int64_t> classes;
            for (std::uint64_t k = 0; k < b.mult.count(); ++k)
                ++classes[delay(rng)];
            gm::BundleDelays bd;
            bd.bundle = b.id;
            for (const auto& [t, count] : classes) {
                bd.classes.push_back({t, m(count)});
                sup = std::max(sup, t);
                any = true;
            }
            d.edges.push_back(bd);
        }
        if (any)
            d.vertices[v] = m(static_cast<std::int64_t>(sup));
    }
    return d;
}

inline gm::RangeVector random_range_vector(std::mt19937& rng, const gm::Graph& g) {
    gm::RangeVector d;
    std::uniform_int_distribution<std::uint64_t> delay(0, 3);
    for (const auto& v : g.vertices()) {
        std::uint64_t sup = 0;
        bool any = false;
        for (std::size_t bi : g.in_bundles(v)) {
            const auto& b = g.bundles()[bi];
            std::map<std::uint64_t, std::int64_t> classes;
            for (std::uint64_t k = 0; k < b.mult.count(); ++k)
                ++classes[delay(rng)];
            gm::BundleDelays bd;
            bd.bundle = b.id;
            for (const auto& [t, count] : classes) {
                bd.classes.push_back({t, m(count)});
                sup = std::max(sup, t);
                any = true;
            }
            d.edges.push_back(bd);
        }
        if (any)
            d.vertices[v] = m(static_cast<std::int64_t>(sup));
    }
    return d;
}

inline gm::IntMatrix random_matrix(std::mt19937& rng, std::size_t max_dim = 6, int lo = -9,
                                   int hi = 9) {
    std::uniform_int_distribution<std::size_t> dim(1, max_dim);
    std::uniform_int_distribution<int> entry(lo, hi);
    gm::IntMatrix out(dim(rng), dim(rng));
    for (std::size_t i = 0; i < out.rows(); ++i)
        for (std::size_t j = 0; j < out.cols(); ++j)
            out.at(i, j) = entry(rng);
    return out;
}

// ---------------------------------------------------------------------------
// Brute-force oracles, written straight from the definitions.

inline bool oracle_hereditary(const gm::Graph& g, const std::set<std::string>& s) {
    for (const auto& b : g.bundles())
        if (s.count(b.src) && !s.count(b.rng))
            return false;
    return true;
}

inline bool oracle_saturated(const gm::Graph& g, const std::set<std::string>& s) {
    for (const auto& v : g.vertices()) {
        if (s.count(v))
            continue;
        const gm::Mult deg = g.out_degree(v);
        if (deg.is_zero() || deg.is_inf())
            continue;
        bool inside = true;
        for (std::size_t bi : g.out_bundles(v))
            inside = inside && s.count(g.bundles()[bi].rng) > 0;
        if (inside)
            return false;
    }
    return true;
}

inline std::vector<std::set<std::string>> oracle_sat_her(const gm::Graph& g) {
    const auto& vs = g.vertices();
    if (vs.size() > 16)
        throw std::logic_error("oracle_sat_her is for small graphs only");
    std::vector<std::set<std::string>> out;
    for (std::uint32_t mask = 0; mask < (1u << vs.size()); ++mask) {
        std::set<std::string> s;
        for (std::size_t i = 0; i < vs.size(); ++i)
            if (mask & (1u << i))
                s.insert(vs[i]);
        if (oracle_hereditary(g, s) && oracle_saturated(g, s))
            out.push_back(s);
    }
    return out;
}

// Minimal hereditary saturated superset: the intersection of every member of
// the lattice containing s (the lattice is closed under intersection).
inline std::set<std::string> oracle_saturation(const gm::Graph& g, const std::set<std::string>& s) {
    std::set<std::string> acc(g.vertices().begin(), g.vertices().end());
    for (const auto& t : oracle_sat_her(g)) {
        if (!std::includes(t.begin(), t.end(), s.begin(), s.end()))
            continue;
        std::set<std::string> next;
        std::set_intersection(acc.begin(), acc.end(), t.begin(), t.end(),
                              std::inserter(next, next.begin()));
        acc = next;
    }
    return acc;
}

inline gm::Int oracle_determinant(const gm::IntMatrix& a) {
    const std::size_t n = a.rows();
    if (n != a.cols())
        throw std::logic_error("square only");
    if (n == 0)
        return 1;
    if (n == 1)
        return a.at(0, 0);
    gm::Int det = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (a.at(0, j) == 0)
            continue;
        gm::IntMatrix minor(n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r)
            for (std::size_t c = 0, cc = 0; c < n; ++c)
                if (c != j)
                    minor.at(r - 1, cc++) = a.at(r, c);
        const gm::Int term = a.at(0, j) * oracle_determinant(minor);
        det += (j % 2 == 0) ? term : -term;
    }
    return det;
}

// Number of two-step paths x -> mid -> y for mid ranging over `mids`.
inline gm::Mult oracle_two_paths(const gm::Graph& g, const std::string& x,
                                 const std::vector<std::string>& mids, const std::string& y) {
    gm::Mult total = gm::Mult::fin(0);
    for (const auto& mid : mids)
        total += g.adjacency(x, mid) * g.adjacency(mid, y);
    return total;
}

// ---------------------------------------------------------------------------
// Subprocess helper for exercising the CLI binary.

struct CliResult {
    int exit_code = -1;
    std::string out;
};

inline std::string shell_quote(const std::string& s) {
    std::string q = "'";
    for (char c : s)
        q += (c == '\'') ? std::string("'\\''") : std::string(1, c);
    return q + "'";
}

inline CliResult run_cli(const std::vector<std::string>& args) {
#ifndef GM_CLI_PATH
    throw std::logic_error("GM_CLI_PATH not defined");
#else
    std::string cmd = shell_quote(GM_CLI_PATH);
    for (const auto& a : args)
        cmd += " " + shell_quote(a);
    cmd += " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe)
        throw std::runtime_error("popen failed");
    CliResult res;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        res.out.append(buf.data(), got);
    const int status = pclose(pipe);
    res.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    return res;
#endif
}

inline std::string write_temp(const std::string& contents, const std::string& tag) {
    static int counter = 0;
    std::string path = "/tmp/gm_test_" + tag + "_" + std::to_string(getpid()) + "_" +
                       std::to_string(counter++) + ".json";
    FILE* f = fopen(path.c_str(), "w");
    if (!f)
        throw std::runtime_error("cannot write " + path);
    fwrite(contents.data(), 1, contents.size(), f);
    fclose(f);
    return path;
}

} // namespace support
