#pragma once

#include "gm/delay.hpp"
#include "gm/graph.hpp"
#include "gm/partition.hpp"

namespace gm {

/// Materialization depth for constructions that unwind a vertex forever.
/// Vertices whose delay is infinite keep their first `depth` levels; the
/// deepest retained copy joins the frontier and the result is approximate.
struct TruncationSpec {
    std::uint64_t depth = 8;
};

struct DelayResult {
    Graph graph;
    Mult dropped_mass; // edge mass lost to truncation
};

/// Splits each vertex v into one copy per cell of the edges leaving it.
/// An edge in cell i of v is re-rooted at v^i and fans out to every copy of
/// its range vertex; sinks pass through unchanged. Requires a valid
/// partition; properness is the caller's concern.
Graph out_split(const Graph& g, const OutPartition& p);

/// Mirror construction on incoming edges: v becomes v_1..v_m, an edge in
/// cell i points at v_i and is copied once per copy of its source vertex;
/// sources pass through unchanged.
Graph in_split(const Graph& g, const InPartition& p);

/// Inserts a path v^0 -> ... -> v^d(v) below each vertex and re-roots each
/// edge e at the copy matching its delay: e runs s(e)^{d(e)} -> r(e)^0.
DelayResult out_delay(const Graph& g, const SourceVector& d, const TruncationSpec& t = {});

/// Mirror: heads v_d(v) -> ... -> v_0 above each vertex; an edge with delay
/// t runs s(e)_0 -> r(e)_t.
DelayResult in_delay(const Graph& g, const RangeVector& d, const TruncationSpec& t = {});

/// Vertices are the edges of g; one edge e -> f for every length-two path ef.
/// Requires finite multiplicities and no sinks.
Graph dual_graph(const Graph& g);

/// Out-split along singleton cells, one per edge. Requires finite out-degrees.
Graph maximal_out_split(const Graph& g);

/// Removes sinks and infinite emitters via the canonical enumeration delay
/// vector; the untruncated portion is row-finite with no sinks.
DelayResult desingularize(const Graph& g, const TruncationSpec& t = {});

/// Spreads incoming edges along heads and roots a head at every source;
/// the untruncated portion has no sources and in-degree at most two.
/// Requires a row-finite graph.
DelayResult make_locally_finite(const Graph& g, const TruncationSpec& t = {});

} // namespace gm
