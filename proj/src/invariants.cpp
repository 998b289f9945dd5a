#include "gm/invariants.hpp"

#include <algorithm>
#include <map>

#include "gm/error.hpp"

namespace gm {

namespace {

bool finite_nonzero_emitter(const Graph& g, const std::string& v) {
    Mult d = g.out_degree(v);
    return !d.is_zero() && !d.is_inf();
}

} // namespace

std::set<std::string> saturate(const Graph& g, const std::set<std::string>& s) {
    for (const std::string& v : s)
        (void)g.vertex_index(v);

    std::set<std::string> acc = s;

    // Hereditary closure: everything reachable along edges.
    std::vector<std::string> work(acc.begin(), acc.end());
    while (!work.empty()) {
        std::string v = work.back();
        work.pop_back();
        for (std::size_t bi : g.out_bundles(v)) {
            const std::string& w = g.bundles()[bi].rng;
            if (acc.insert(w).second)
                work.push_back(w);
        }
    }

    // Saturation: absorb finite nonzero emitters feeding entirely into acc.
    bool grew = true;
    while (grew) {
        grew = false;
        for (const std::string& w : g.vertices()) {
            if (acc.count(w) || !finite_nonzero_emitter(g, w))
                continue;
            bool all_in = true;
            for (std::size_t bi : g.out_bundles(w))
                if (!acc.count(g.bundles()[bi].rng)) {
                    all_in = false;
                    break;
                }
            if (all_in) {
                acc.insert(w);
                grew = true;
            }
        }
    }
    return acc;
}

SubsetClass classify_subset(const Graph& g, const std::set<std::string>& s) {
    for (const std::string& v : s)
        (void)g.vertex_index(v);

    SubsetClass c;
    c.hereditary = true;
    c.saturated = true;
    for (const std::string& v : s)
        for (std::size_t bi : g.out_bundles(v))
            if (!s.count(g.bundles()[bi].rng)) {
                c.hereditary = false;
                c.diagnostics.push_back("edge " + g.bundles()[bi].id + " leaves the set: " + v +
                                        " -> " + g.bundles()[bi].rng);
            }
    for (const std::string& w : g.vertices()) {
        if (s.count(w) || !finite_nonzero_emitter(g, w))
            continue;
        bool all_in = true;
        for (std::size_t bi : g.out_bundles(w))
            if (!s.count(g.bundles()[bi].rng))
                all_in = false;
        if (all_in) {
            c.saturated = false;
            c.diagnostics.push_back("vertex " + w +
                                    " emits finitely many edges, all into the set, "
                                    "but is missing from it");
        }
    }
    return c;
}

namespace {

std::vector<std::set<std::string>> enumerate_exhaustive(const Graph& g,
                                                        const SatHerOptions& opts) {
    std::size_t n = g.vertices().size();
    std::vector<std::uint64_t> outmask(n, 0);
    std::vector<bool> fne(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        const std::string& v = g.vertices()[i];
        for (std::size_t bi : g.out_bundles(v))
            outmask[i] |= 1ull << g.vertex_index(g.bundles()[bi].rng);
        fne[i] = finite_nonzero_emitter(g, v);
    }

    std::vector<std::uint64_t> hits;
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            if (mask >> i & 1) {
                if (outmask[i] & ~mask)
                    ok = false; // an edge escapes
            } else if (fne[i] && !(outmask[i] & ~mask)) {
                ok = false; // saturation would force i in
            }
        }
        if (!ok)
            continue;
        hits.push_back(mask);
        if (hits.size() > opts.budget)
            fail(errc::budget_exceeded, "hereditary/saturated lattice exceeds the budget");
    }

    std::vector<std::set<std::string>> out;
    out.reserve(hits.size());
    for (std::uint64_t mask : hits) {
        std::set<std::string> s;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1)
                s.insert(g.vertices()[i]);
        out.push_back(std::move(s));
    }
    return out;
}

// Every hereditary saturated set is a join of singleton saturations, so
// closing the seeds under pairwise joins generates the whole lattice.
std::vector<std::set<std::string>> enumerate_generated(const Graph& g,
                                                       const SatHerOptions& opts) {
    std::set<std::set<std::string>> family;
    family.insert(std::set<std::string>{}); // brace form would pick the list overload
    std::size_t steps = 0;
    auto charge = [&](std::size_t k) {
        steps += k;
        if (family.size() > opts.budget || steps > opts.budget)
            fail(errc::budget_exceeded, "hereditary/saturated lattice exceeds the budget");
    };

    for (const std::string& v : g.vertices()) {
        family.insert(saturate(g, {v}));
        charge(1);
    }

    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::set<std::string>> snapshot(family.begin(), family.end());
        for (std::size_t i = 0; i < snapshot.size(); ++i)
            for (std::size_t j = i + 1; j < snapshot.size(); ++j) {
                charge(1);
                std::set<std::string> u = snapshot[i];
                u.insert(snapshot[j].begin(), snapshot[j].end());
                if (family.insert(saturate(g, u)).second)
                    grew = true;
            }
    }
    return {family.begin(), family.end()};
}

} // namespace

std::vector<std::set<std::string>> enumerate_sat_her(const Graph& g, const SatHerOptions& opts) {
    std::vector<std::set<std::string>> out = g.vertices().size() <= opts.exhaustive_limit
                                                 ? enumerate_exhaustive(g, opts)
                                                 : enumerate_generated(g, opts);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size())
            return a.size() < b.size();
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    });
    return out;
}

bool is_full_corner_set(const Graph& g, const std::set<std::string>& s) {
    return saturate(g, s).size() == g.vertices().size();
}

InvariantReport invariant_report(const Graph& g, const SatHerOptions& opts) {
    InvariantReport r;
    r.approximate = g.truncated();
    r.vertex_count = g.vertices().size();
    r.bundle_count = g.bundles().size();
    r.edge_mass = g.edge_mass();
    for (const std::string& v : g.vertices()) {
        VertexProfile p = g.classify(v);
        r.sinks += p.sink;
        r.sources += p.source;
        r.infinite_emitters += p.infinite_emitter;
        r.infinite_receivers += p.infinite_receiver;
    }
    r.row_finite = g.row_finite();
    r.locally_finite = g.locally_finite();

    auto lattice = enumerate_sat_her(g, opts);
    r.sat_her.total = lattice.size();
    for (const auto& member : lattice) {
        bool trivial = member.empty() || member.size() == g.vertices().size();
        bool suspect = false;
        for (const std::string& v : g.frontier())
            if (member.count(v))
                suspect = true;
        if (!trivial)
            r.sat_her.proper_nontrivial += 1;
        if (suspect) {
            r.sat_her.artifact_suspect += 1;
        } else {
            r.sat_her.comparable_total += 1;
            if (!trivial)
                r.sat_her.comparable_proper_nontrivial += 1;
        }
    }

    if (g.finite_multiplicity() && !g.has_sink())
        r.cokernel = cokernel_invariant(g);
    return r;
}

namespace {

std::string torsion_str(const CokernelInvariant& c) {
    std::string s = "[";
    for (std::size_t i = 0; i < c.torsion.size(); ++i) {
        if (i)
            s += ", ";
        s += c.torsion[i].str();
    }
    return s + "]";
}

} // namespace

std::vector<DiffEntry> morita_diff(const Graph& g, const Graph& h, const SatHerOptions& opts) {
    InvariantReport a = invariant_report(g, opts);
    InvariantReport b = invariant_report(h, opts);

    std::vector<DiffEntry> diff;
    if (a.sat_her.comparable_total != b.sat_her.comparable_total)
        diff.push_back(DiffEntry{"sat_her_total", std::to_string(a.sat_her.comparable_total),
                                 std::to_string(b.sat_her.comparable_total)});
    if (a.sat_her.comparable_proper_nontrivial != b.sat_her.comparable_proper_nontrivial)
        diff.push_back(DiffEntry{"sat_her_proper_nontrivial",
                                 std::to_string(a.sat_her.comparable_proper_nontrivial),
                                 std::to_string(b.sat_her.comparable_proper_nontrivial)});
    if (a.cokernel && b.cokernel) {
        if (a.cokernel->torsion != b.cokernel->torsion)
            diff.push_back(DiffEntry{"cokernel_torsion", torsion_str(*a.cokernel),
                                     torsion_str(*b.cokernel)});
        if (a.cokernel->free_rank != b.cokernel->free_rank)
            diff.push_back(DiffEntry{"cokernel_free_rank", std::to_string(a.cokernel->free_rank),
                                     std::to_string(b.cokernel->free_rank)});
    }
    return diff;
}

} // namespace gm
