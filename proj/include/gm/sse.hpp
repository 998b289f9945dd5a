#pragma once

#include <string>
#include <vector>

#include "gm/graph.hpp"
#include "gm/matrixlab.hpp"
#include "gm/partition.hpp"

namespace gm {

enum class WitnessProvenance { user, from_out_split, from_in_split };

/// Bridge graph exhibiting a single elementary equivalence between two
/// graphs: its vertex set is their disjoint union, every edge crosses sides,
/// and two-step paths reproduce each side's edges.
struct EsseWitness {
    std::vector<std::string> part1;
    std::vector<std::string> part2;
    Graph graph;
    WitnessProvenance provenance = WitnessProvenance::user;
};

struct EsseVerdict {
    bool ok = false;
    std::vector<std::string> diagnostics;
};

/// Checks the witness against both graphs: parts must name the two vertex
/// sets exactly, every bridge edge must cross, and for each side the number
/// of length-two paths between two vertices must equal the number of edges
/// between them. Requires finite, sink-free graphs with disjoint vertex sets.
EsseVerdict esse_verify(const Graph& g1, const Graph& g2, const EsseWitness& w);

/// Bridge between g and out_split(g, p): one edge v -> v^i per cell, and one
/// edge v^i -> r(e) per edge e in cell i of v. Requires a finite sink-free
/// graph and a valid partition.
EsseWitness esse_bridge_out_split(const Graph& g, const OutPartition& p);

/// Mirror bridge between g and in_split(g, p): one edge v_i -> v per cell,
/// and one edge s(e) -> v_i per edge e in cell i of v. Requires a finite
/// sink-free graph whose in-split shares no vertex names with it, so sources
/// are rejected.
EsseWitness esse_bridge_in_split(const Graph& g, const InPartition& p);

/// Adjacency block of the bridge from `from` vertices to `to` vertices.
IntMatrix bridge_block(const EsseWitness& w, const std::vector<std::string>& from,
                       const std::vector<std::string>& to);

} // namespace gm
