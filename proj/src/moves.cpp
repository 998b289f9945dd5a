#include "gm/moves.hpp"

#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "gm/error.hpp"

namespace gm {

namespace {

void require_partition(const PartitionCheck& check, const char* what) {
    if (check.valid)
        return;
    for (const std::string& d : check.diagnostics)
        if (d.rfind("UNREPRESENTABLE_INFINITE_PARTITION", 0) == 0)
            fail(errc::unrepresentable_infinite_partition, d);
    fail(errc::invalid_input,
         std::string(what) + " invalid: " +
             (check.diagnostics.empty() ? std::string("?") : check.diagnostics.front()));
}

void require_vector(const VectorCheck& check, const char* what) {
    if (check.valid)
        return;
    fail(errc::invalid_input,
         std::string(what) + " invalid: " +
             (check.diagnostics.empty() ? std::string("?") : check.diagnostics.front()));
}

// Number of cells at each vertex, with kept-name vertices at zero.
std::map<std::string, std::vector<Cell>> split_cells(const Graph& g, bool out,
                                                     const OutPartition* op,
                                                     const InPartition* ip) {
    std::map<std::string, std::vector<Cell>> m;
    for (const std::string& v : g.vertices())
        m[v] = out ? out_cells_at(g, *op, v) : in_cells_at(g, *ip, v);
    return m;
}

std::string copy_name(const std::string& v, bool out, std::size_t i) {
    return v + (out ? "^" : "_") + std::to_string(i);
}

// Bundles that appear in more than one cell need the cell index in their
// fresh ids to stay unique.
std::set<std::string> multi_cell_bundles(const std::vector<Cell>& cells) {
    std::set<std::string> seen, multi;
    for (const Cell& cell : cells)
        for (const Share& sh : cell)
            if (!seen.insert(sh.bundle).second)
                multi.insert(sh.bundle);
    return multi;
}

Graph split(const Graph& g, bool out, const OutPartition* op, const InPartition* ip) {
    auto cells = split_cells(g, out, op, ip);

    Graph::builder b;
    std::unordered_set<std::string> names;
    auto add_vertex = [&](const std::string& name) {
        if (!names.insert(name).second)
            fail(errc::invalid_input, "generated vertex name collides: " + name);
        b.vertex(name);
    };
    for (const std::string& v : g.vertices()) {
        std::size_t m = cells.at(v).size();
        if (m == 0)
            add_vertex(v);
        else
            for (std::size_t i = 1; i <= m; ++i)
                add_vertex(copy_name(v, out, i));
    }

    for (const std::string& v : g.vertices()) {
        const std::vector<Cell>& vcells = cells.at(v);
        std::set<std::string> multi = multi_cell_bundles(vcells);
        for (std::size_t i = 1; i <= vcells.size(); ++i) {
            for (const Share& sh : vcells[i - 1]) {
                const Bundle& e = g.bundle(sh.bundle);
                std::string base =
                    multi.count(sh.bundle) ? sh.bundle + "@" + std::to_string(i) : sh.bundle;
                const std::string& other = out ? e.rng : e.src;
                std::size_t q = cells.at(other).size();
                std::string here = copy_name(v, out, i);
                if (q == 0) {
                    if (out)
                        b.bundle(base, here, other, sh.amount);
                    else
                        b.bundle(base, other, here, sh.amount);
                } else {
                    for (std::size_t j = 1; j <= q; ++j) {
                        std::string id = base + (out ? "^" : "_") + std::to_string(j);
                        if (out)
                            b.bundle(id, here, copy_name(other, out, j), sh.amount);
                        else
                            b.bundle(id, copy_name(other, out, j), here, sh.amount);
                    }
                }
            }
        }
    }

    b.truncated(g.truncated());
    for (const std::string& v : g.frontier()) {
        std::size_t m = cells.at(v).size();
        if (m == 0)
            b.frontier(v);
        else
            for (std::size_t i = 1; i <= m; ++i)
                b.frontier(copy_name(v, out, i));
    }
    return std::move(b).build();
}

DelayResult delay(const Graph& g, const DelayVector& d, const TruncationSpec& t, bool out) {
    if (t.depth < 1)
        fail(errc::invalid_input, "truncation depth must be at least 1");

    std::map<std::string, std::uint64_t> levels;
    bool truncates = false;
    for (const std::string& v : g.vertices()) {
        Mult dv = d.vertex_delay(v);
        levels[v] = dv.is_inf() ? t.depth : dv.count();
        truncates = truncates || dv.is_inf();
    }

    Graph::builder b;
    std::unordered_set<std::string> names;
    auto add_vertex = [&](const std::string& name) {
        if (!names.insert(name).second)
            fail(errc::invalid_input, "generated vertex name collides: " + name);
        b.vertex(name);
    };
    for (const std::string& v : g.vertices())
        for (std::uint64_t i = 0; i <= levels.at(v); ++i)
            add_vertex(copy_name(v, out, i));

    // Delay path under (out) or above (in) each vertex.
    for (const std::string& v : g.vertices())
        for (std::uint64_t i = 1; i <= levels.at(v); ++i) {
            std::string id = "f(" + v + ")" + (out ? "^" : "_") + std::to_string(i);
            if (out)
                b.bundle(id, copy_name(v, out, i - 1), copy_name(v, out, i), Mult::fin(1));
            else
                b.bundle(id, copy_name(v, out, i), copy_name(v, out, i - 1), Mult::fin(1));
        }

    Mult dropped;
    for (const Bundle& e : g.bundles()) {
        BundleDelays bd = d.bundle_delays(e);
        const std::string& delayed_end = out ? e.src : e.rng;
        std::uint64_t cap = levels.at(delayed_end);
        bool lone_class = bd.classes.size() == 1 && !bd.tail;
        auto place = [&](std::uint64_t delay, Mult count, const std::string& id) {
            if (out)
                b.bundle(id, copy_name(e.src, out, delay), copy_name(e.rng, out, 0), count);
            else
                b.bundle(id, copy_name(e.src, out, 0), copy_name(e.rng, out, delay), count);
        };
        for (const DelayClass& c : bd.classes) {
            if (c.delay > cap) {
                dropped += c.count;
                continue;
            }
            place(c.delay, c.count, lone_class ? e.id : e.id + "@" + std::to_string(c.delay));
        }
        if (bd.tail) {
            for (std::uint64_t delay = bd.tail->from; delay <= cap; delay += bd.tail->stride)
                place(delay, Mult::fin(1), e.id + "@" + std::to_string(delay));
            dropped += Mult::inf(); // the enumeration continues past the cap
        }
    }

    b.truncated(g.truncated() || truncates);
    for (const std::string& v : g.vertices()) {
        if (d.vertex_delay(v).is_inf())
            b.frontier(copy_name(v, out, levels.at(v)));
        if (g.frontier().count(v))
            for (std::uint64_t i = 0; i <= levels.at(v); ++i)
                b.frontier(copy_name(v, out, i));
    }
    return DelayResult{std::move(b).build(), dropped};
}

} // namespace

Graph out_split(const Graph& g, const OutPartition& p) {
    require_partition(validate_out_partition(g, p), "out-partition");
    return split(g, true, &p, nullptr);
}

Graph in_split(const Graph& g, const InPartition& p) {
    require_partition(validate_in_partition(g, p), "in-partition");
    return split(g, false, nullptr, &p);
}

DelayResult out_delay(const Graph& g, const SourceVector& d, const TruncationSpec& t) {
    require_vector(validate_source_vector(g, d), "source vector");
    return delay(g, d, t, true);
}

DelayResult in_delay(const Graph& g, const RangeVector& d, const TruncationSpec& t) {
    require_vector(validate_range_vector(g, d), "range vector");
    return delay(g, d, t, false);
}

Graph dual_graph(const Graph& g) {
    if (!g.finite_multiplicity())
        fail(errc::precondition_failed, "dual graph requires finite multiplicities");
    if (g.has_sink())
        fail(errc::precondition_failed, "dual graph requires a graph with no sinks");

    struct Edge {
        std::string name;
        const Bundle* b;
    };
    std::vector<Edge> edges;
    for (const Bundle& b : g.bundles()) {
        std::uint64_t m = b.mult.count();
        for (std::uint64_t k = 0; k < m; ++k)
            edges.push_back(Edge{m == 1 ? b.id : b.id + "[" + std::to_string(k) + "]", &b});
    }

    Graph::builder nb;
    for (const Edge& e : edges)
        nb.vertex(e.name);
    for (const Edge& e : edges)
        for (const Edge& f : edges)
            if (f.b->src == e.b->rng)
                nb.bundle(e.name + "." + f.name, e.name, f.name, Mult::fin(1));

    nb.truncated(g.truncated());
    for (const Edge& e : edges)
        if (g.frontier().count(e.b->src) || g.frontier().count(e.b->rng))
            nb.frontier(e.name);
    return std::move(nb).build();
}

Graph maximal_out_split(const Graph& g) {
    return out_split(g, OutPartition::maximal(g));
}

DelayResult desingularize(const Graph& g, const TruncationSpec& t) {
    return out_delay(g, desingularization_vector(g), t);
}

DelayResult make_locally_finite(const Graph& g, const TruncationSpec& t) {
    return in_delay(g, spread_in_vector(g), t);
}

} // namespace gm
