#include "gm/delay.hpp"

#include <algorithm>
#include <set>

#include "gm/error.hpp"

namespace gm {

Mult DelayVector::vertex_delay(const std::string& v) const {
    auto it = vertices.find(v);
    return it == vertices.end() ? Mult() : it->second;
}

BundleDelays DelayVector::bundle_delays(const Bundle& b) const {
    for (const BundleDelays& bd : edges)
        if (bd.bundle == b.id)
            return bd;
    return BundleDelays{b.id, {DelayClass{0, b.mult}}, std::nullopt};
}

namespace {

enum class Side { out, in };

// Supremum of the delays assigned to edges on one side of a vertex.
// A tail makes the support unbounded, so the sup is infinite; an infinite
// class keeps a finite delay.
Mult delay_sup(const Graph& g, const DelayVector& d, Side s, const std::string& v) {
    const auto& side = s == Side::out ? g.out_bundles(v) : g.in_bundles(v);
    Mult sup;
    for (std::size_t bi : side) {
        BundleDelays bd = d.bundle_delays(g.bundles()[bi]);
        if (bd.tail)
            return Mult::inf();
        for (const DelayClass& c : bd.classes)
            sup = Mult::max(sup, Mult::fin(c.delay));
    }
    return sup;
}

VectorCheck validate(const Graph& g, const DelayVector& d, Side s) {
    VectorCheck check;
    auto& diag = check.diagnostics;

    for (const auto& [v, dv] : d.vertices) {
        (void)dv;
        if (!g.has_vertex(v))
            diag.push_back("unknown vertex: " + v);
    }

    std::set<std::string> seen_bundles;
    for (const BundleDelays& bd : d.edges) {
        if (!g.has_bundle(bd.bundle)) {
            diag.push_back("unknown bundle: " + bd.bundle);
            continue;
        }
        if (!seen_bundles.insert(bd.bundle).second)
            diag.push_back("bundle delayed twice: " + bd.bundle);
    }
    if (!diag.empty())
        return check;

    // Mass bookkeeping: the classes (plus tail) of a bundle must account for
    // exactly the edges the bundle has.
    for (const Bundle& b : g.bundles()) {
        BundleDelays bd = d.bundle_delays(b);
        std::set<std::uint64_t> delays;
        Mult mass;
        bool had_inf_class = false;
        for (const DelayClass& c : bd.classes) {
            if (!delays.insert(c.delay).second)
                diag.push_back("bundle " + b.id + ": delay " + std::to_string(c.delay) +
                               " listed twice");
            if (c.count.is_zero())
                diag.push_back("bundle " + b.id + ": empty delay class");
            if (c.count.is_inf())
                had_inf_class = true;
            mass += c.count;
        }
        if (bd.tail) {
            if (bd.tail->stride == 0)
                diag.push_back("bundle " + b.id + ": tail stride must be positive");
            for (const DelayClass& c : bd.classes)
                if (c.delay >= bd.tail->from &&
                    (c.delay - bd.tail->from) % std::max<std::uint64_t>(bd.tail->stride, 1) == 0)
                    diag.push_back("bundle " + b.id + ": delay class " +
                                   std::to_string(c.delay) + " overlaps the tail");
            mass = Mult::inf();
        }
        if (b.mult.is_fin()) {
            if (bd.tail)
                diag.push_back("bundle " + b.id + " is finite but has an unbounded tail");
            else if (had_inf_class)
                diag.push_back("bundle " + b.id + " is finite but has an infinite delay class");
            else if (!(mass == b.mult))
                diag.push_back("bundle " + b.id + ": delay classes cover " + mass.str() +
                               " edges, bundle has " + b.mult.str());
        } else if (!mass.is_inf()) {
            diag.push_back("bundle " + b.id + ": delay classes cover only " + mass.str() +
                           " of infinitely many edges");
        }
    }
    if (!diag.empty())
        return check;

    // Vertex axioms. On the partitioned side the vertex value is the sup of
    // its edge delays; infinite values are reserved for the vertices the
    // construction is allowed to unwind forever.
    for (const std::string& v : g.vertices()) {
        Mult dv = d.vertex_delay(v);
        bool boundary = s == Side::out ? g.is_sink(v) : g.is_source(v);
        if (!boundary) {
            Mult sup = delay_sup(g, d, s, v);
            if (!(dv == sup))
                diag.push_back("vertex " + v + ": delay " + dv.str() +
                               " does not match edge delay sup " + sup.str());
        }
        if (dv.is_inf()) {
            bool allowed = s == Side::out ? (g.is_sink(v) || g.is_infinite_emitter(v))
                                          : (g.is_source(v) || g.is_infinite_receiver(v));
            if (!allowed)
                diag.push_back("vertex " + v + ": infinite delay on a vertex that is neither " +
                               (s == Side::out ? "a sink nor an infinite emitter"
                                               : "a source nor an infinite receiver"));
        }
    }

    check.valid = diag.empty();
    if (!check.valid || s == Side::in)
        return check;

    // Strict properness: at an infinite emitter, infinitely many edges may
    // share a delay only if that delay is the vertex's own finite delay.
    check.strictly_proper = true;
    for (const std::string& v : g.vertices()) {
        if (!g.is_infinite_emitter(v))
            continue;
        Mult dv = d.vertex_delay(v);
        for (std::size_t bi : g.out_bundles(v)) {
            BundleDelays bd = d.bundle_delays(g.bundles()[bi]);
            for (const DelayClass& c : bd.classes) {
                if (!c.count.is_inf())
                    continue;
                if (dv.is_inf() || !(Mult::fin(c.delay) == dv)) {
                    check.strictly_proper = false;
                    diag.push_back("not strictly proper: infinitely many edges at " + v +
                                   " carry delay " + std::to_string(c.delay) +
                                   " short of the vertex delay " + dv.str());
                }
            }
        }
    }
    return check;
}

} // namespace

VectorCheck validate_source_vector(const Graph& g, const SourceVector& d) {
    return validate(g, d, Side::out);
}

VectorCheck validate_range_vector(const Graph& g, const RangeVector& d) {
    return validate(g, d, Side::in);
}

DelayVector zero_vector() {
    return {};
}

SourceVector desingularization_vector(const Graph& g) {
    SourceVector d;
    for (const std::string& v : g.vertices()) {
        if (g.is_sink(v)) {
            d.vertices[v] = Mult::inf();
            continue;
        }
        if (!g.is_infinite_emitter(v))
            continue;
        d.vertices[v] = Mult::inf();

        std::vector<std::size_t> fin_bundles, inf_bundles;
        for (std::size_t bi : g.out_bundles(v))
            (g.bundles()[bi].mult.is_inf() ? inf_bundles : fin_bundles).push_back(bi);

        std::uint64_t next = 0;
        for (std::size_t bi : fin_bundles) {
            const Bundle& b = g.bundles()[bi];
            BundleDelays bd{b.id, {}, std::nullopt};
            for (std::uint64_t k = 0; k < b.mult.count(); ++k)
                bd.classes.push_back(DelayClass{next++, Mult::fin(1)});
            d.edges.push_back(std::move(bd));
        }
        for (std::size_t j = 0; j < inf_bundles.size(); ++j) {
            const Bundle& b = g.bundles()[inf_bundles[j]];
            d.edges.push_back(
                BundleDelays{b.id, {}, DelayTail{next + j, inf_bundles.size()}});
        }
    }
    return d;
}

RangeVector spread_in_vector(const Graph& g) {
    if (!g.row_finite())
        fail(errc::precondition_failed, "spread_in_vector requires a row-finite graph");
    RangeVector d;
    for (const std::string& v : g.vertices()) {
        if (g.is_source(v)) {
            d.vertices[v] = Mult::inf();
            continue;
        }
        std::vector<std::size_t> fin_bundles, inf_bundles;
        for (std::size_t bi : g.in_bundles(v))
            (g.bundles()[bi].mult.is_inf() ? inf_bundles : fin_bundles).push_back(bi);

        std::uint64_t next = 0;
        for (std::size_t bi : fin_bundles) {
            const Bundle& b = g.bundles()[bi];
            BundleDelays bd{b.id, {}, std::nullopt};
            for (std::uint64_t k = 0; k < b.mult.count(); ++k)
                bd.classes.push_back(DelayClass{next++, Mult::fin(1)});
            d.edges.push_back(std::move(bd));
        }
        for (std::size_t j = 0; j < inf_bundles.size(); ++j) {
            const Bundle& b = g.bundles()[inf_bundles[j]];
            d.edges.push_back(
                BundleDelays{b.id, {}, DelayTail{next + j, inf_bundles.size()}});
        }
        d.vertices[v] = inf_bundles.empty() ? Mult::fin(next == 0 ? 0 : next - 1) : Mult::inf();
    }
    return d;
}

RangeVector drinen_from_in_split(const Graph& g, const InPartition& p) {
    PartitionCheck check = validate_in_partition(g, p);
    if (!check.valid)
        fail(errc::invalid_input,
             "in-partition invalid: " + (check.diagnostics.empty() ? std::string("?")
                                                                   : check.diagnostics.front()));
    RangeVector d;
    std::map<std::string, std::vector<DelayClass>> per_bundle;
    for (const std::string& v : g.vertices()) {
        std::vector<Cell> cells = in_cells_at(g, p, v);
        if (cells.empty()) {
            d.vertices[v] = Mult::fin(0);
            continue;
        }
        d.vertices[v] = Mult::fin(cells.size() - 1);
        for (std::size_t i = 0; i < cells.size(); ++i)
            for (const Share& sh : cells[i])
                per_bundle[sh.bundle].push_back(DelayClass{i, sh.amount});
    }
    for (const Bundle& b : g.bundles()) {
        auto it = per_bundle.find(b.id);
        if (it != per_bundle.end())
            d.edges.push_back(BundleDelays{b.id, it->second, std::nullopt});
    }
    return d;
}

} // namespace gm
