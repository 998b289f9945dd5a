#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gm/graph.hpp"
#include "gm/matrixlab.hpp"

namespace gm {

/// Smallest hereditary and saturated vertex set containing S: close under
/// reachability, then repeatedly absorb every vertex that emits finitely
/// many edges, at least one, all of which land inside.
std::set<std::string> saturate(const Graph& g, const std::set<std::string>& s);

struct SubsetClass {
    bool hereditary = false;
    bool saturated = false;
    std::vector<std::string> diagnostics;
};

SubsetClass classify_subset(const Graph& g, const std::set<std::string>& s);

struct SatHerOptions {
    /// At or below this many vertices all subsets are tried; above it the
    /// lattice is generated by closing singleton saturations under joins.
    std::size_t exhaustive_limit = 20;
    /// Cap on lattice members and join steps for the generation strategy.
    std::size_t budget = 200'000;
};

/// All hereditary and saturated subsets, ordered by size then by their sorted
/// vertex lists. Exceeding the budget raises errc::budget_exceeded.
std::vector<std::set<std::string>> enumerate_sat_her(const Graph& g,
                                                     const SatHerOptions& opts = {});

/// Whether S generates everything: saturate(S) is the whole vertex set.
bool is_full_corner_set(const Graph& g, const std::set<std::string>& s);

struct SatHerSummary {
    std::size_t total = 0;
    std::size_t proper_nontrivial = 0;
    /// Members avoiding the frontier; equals the totals on exact graphs.
    std::size_t comparable_total = 0;
    std::size_t comparable_proper_nontrivial = 0;
    std::size_t artifact_suspect = 0;
};

struct InvariantReport {
    bool approximate = false;
    std::size_t vertex_count = 0;
    std::size_t bundle_count = 0;
    Mult edge_mass;
    std::size_t sinks = 0;
    std::size_t sources = 0;
    std::size_t infinite_emitters = 0;
    std::size_t infinite_receivers = 0;
    bool row_finite = false;
    bool locally_finite = false;
    SatHerSummary sat_her;
    std::optional<CokernelInvariant> cokernel; // absent unless finite, sink-free
};

InvariantReport invariant_report(const Graph& g, const SatHerOptions& opts = {});

struct DiffEntry {
    std::string invariant;
    std::string left;
    std::string right;
};

/// Invariant comparison. Nonempty means the graphs are distinguished; empty
/// means nothing here refutes equivalence, never that equivalence holds.
/// On truncated inputs only frontier-avoiding lattice members are counted.
std::vector<DiffEntry> morita_diff(const Graph& g, const Graph& h,
                                   const SatHerOptions& opts = {});

} // namespace gm
