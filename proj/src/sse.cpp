#include "gm/sse.hpp"

#include <algorithm>
#include <set>

#include "gm/error.hpp"
#include "gm/moves.hpp"

namespace gm {

namespace {

void require_finite_no_sinks(const Graph& g, const char* name) {
    if (!g.finite_multiplicity())
        fail(errc::precondition_failed,
             std::string(name) + " has infinite multiplicities; equivalence bridges need "
                                 "finite graphs");
    if (g.has_sink())
        fail(errc::precondition_failed,
             std::string(name) + " has a sink; equivalence bridges need sink-free graphs");
}

std::set<std::string> as_set(const std::vector<std::string>& v) {
    return {v.begin(), v.end()};
}

} // namespace

EsseVerdict esse_verify(const Graph& g1, const Graph& g2, const EsseWitness& w) {
    require_finite_no_sinks(g1, "first graph");
    require_finite_no_sinks(g2, "second graph");
    if (!w.graph.finite_multiplicity())
        fail(errc::precondition_failed, "bridge has infinite multiplicities");

    std::set<std::string> p1 = as_set(w.part1);
    std::set<std::string> p2 = as_set(w.part2);
    std::set<std::string> v1 = as_set(g1.vertices());
    std::set<std::string> v2 = as_set(g2.vertices());

    for (const std::string& v : v1)
        if (v2.count(v))
            fail(errc::invalid_input,
                 "vertex sets are not disjoint (both graphs own " + v + "); a bridge needs "
                 "disjoint sides");
    if (p1 != v1)
        fail(errc::invalid_input, "part1 does not match the first graph's vertex set");
    if (p2 != v2)
        fail(errc::invalid_input, "part2 does not match the second graph's vertex set");

    std::set<std::string> bridge_vertices = as_set(w.graph.vertices());
    std::set<std::string> both = p1;
    both.insert(p2.begin(), p2.end());
    if (bridge_vertices != both)
        fail(errc::invalid_input, "bridge vertex set is not the union of the two parts");

    EsseVerdict verdict;
    for (const Bundle& b : w.graph.bundles()) {
        bool src1 = p1.count(b.src) > 0;
        bool rng1 = p1.count(b.rng) > 0;
        if (src1 == rng1)
            verdict.diagnostics.push_back("bundle " + b.id + " does not cross sides: " + b.src +
                                          " -> " + b.rng);
    }

    // Two-step paths through the other side must reproduce each side's edges.
    auto check_side = [&](const Graph& side, const std::set<std::string>& mids,
                          const char* label) {
        for (const std::string& x : side.vertices())
            for (const std::string& y : side.vertices()) {
                Mult expected = side.adjacency(x, y);
                Mult got;
                for (const std::string& mid : mids)
                    got += w.graph.adjacency(x, mid) * w.graph.adjacency(mid, y);
                if (!(expected == got))
                    verdict.diagnostics.push_back(std::string(label) + ": 2-step paths " + x +
                                                  " -> " + y + " number " + got.str() +
                                                  ", edges number " + expected.str());
            }
    };
    check_side(g1, p2, "side 1");
    check_side(g2, p1, "side 2");

    verdict.ok = verdict.diagnostics.empty();
    return verdict;
}

EsseWitness esse_bridge_out_split(const Graph& g, const OutPartition& p) {
    require_finite_no_sinks(g, "graph");
    Graph h = out_split(g, p);

    for (const std::string& v : h.vertices())
        if (g.has_vertex(v))
            fail(errc::invalid_input,
                 "split copies collide with original vertex names at " + v);

    Graph::builder b;
    for (const std::string& v : g.vertices())
        b.vertex(v);
    for (const std::string& v : h.vertices())
        b.vertex(v);

    for (const std::string& v : g.vertices()) {
        std::vector<Cell> cells = out_cells_at(g, p, v);
        for (std::size_t i = 1; i <= cells.size(); ++i) {
            std::string copy = v + "^" + std::to_string(i);
            b.bundle("dn(" + copy + ")", v, copy, Mult::fin(1));
            for (const Share& sh : cells[i - 1])
                b.bundle("up(" + sh.bundle + "@" + std::to_string(i) + ")", copy,
                         g.bundle(sh.bundle).rng, sh.amount);
        }
    }

    EsseWitness w{g.vertices(), h.vertices(), std::move(b).build(),
                  WitnessProvenance::from_out_split};
    return w;
}

EsseWitness esse_bridge_in_split(const Graph& g, const InPartition& p) {
    require_finite_no_sinks(g, "graph");
    Graph h = in_split(g, p);

    for (const std::string& v : h.vertices())
        if (g.has_vertex(v))
            fail(errc::invalid_input,
                 "in-split keeps the names of sources, so " + v +
                     " appears on both sides; bridge sides must be disjoint");

    Graph::builder b;
    for (const std::string& v : g.vertices())
        b.vertex(v);
    for (const std::string& v : h.vertices())
        b.vertex(v);

    for (const std::string& v : g.vertices()) {
        std::vector<Cell> cells = in_cells_at(g, p, v);
        for (std::size_t i = 1; i <= cells.size(); ++i) {
            std::string copy = v + "_" + std::to_string(i);
            b.bundle("dn(" + copy + ")", copy, v, Mult::fin(1));
            for (const Share& sh : cells[i - 1])
                b.bundle("up(" + sh.bundle + "@" + std::to_string(i) + ")",
                         g.bundle(sh.bundle).src, copy, sh.amount);
        }
    }

    EsseWitness w{g.vertices(), h.vertices(), std::move(b).build(),
                  WitnessProvenance::from_in_split};
    return w;
}

IntMatrix bridge_block(const EsseWitness& w, const std::vector<std::string>& from,
                       const std::vector<std::string>& to) {
    IntMatrix m(from.size(), to.size());
    for (std::size_t i = 0; i < from.size(); ++i)
        for (std::size_t j = 0; j < to.size(); ++j)
            m.at(i, j) = static_cast<long long>(w.graph.adjacency(from[i], to[j]).count());
    return m;
}

} // namespace gm
