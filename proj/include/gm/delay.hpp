#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gm/graph.hpp"
#include "gm/partition.hpp"

namespace gm {

/// `count` edges of a bundle carrying delay `delay`.
struct DelayClass {
    std::uint64_t delay = 0;
    Mult count;
};

/// Unbounded enumeration: one edge at each delay from, from+stride, ...
/// Only meaningful on infinite bundles; this is how delay assignments with
/// unbounded support are written down finitely.
struct DelayTail {
    std::uint64_t from = 0;
    std::uint64_t stride = 1;
};

struct BundleDelays {
    std::string bundle;
    std::vector<DelayClass> classes;
    std::optional<DelayTail> tail;
};

/// Delay vector on vertices and edges. Vertices absent from the map default
/// to delay 0; bundles absent from `edges` default to all edges at delay 0.
/// Whether the vertex axioms read out-degrees or in-degrees distinguishes a
/// source vector from a range vector.
struct DelayVector {
    std::map<std::string, Mult> vertices; // Fin(d) or inf
    std::vector<BundleDelays> edges;

    Mult vertex_delay(const std::string& v) const;
    /// Delay classes for a bundle with the default filled in.
    BundleDelays bundle_delays(const Bundle& b) const;
};

using SourceVector = DelayVector;
using RangeVector = DelayVector;

struct VectorCheck {
    bool valid = false;
    bool strictly_proper = false; // meaningful for source vectors only
    std::vector<std::string> diagnostics;
};

VectorCheck validate_source_vector(const Graph& g, const SourceVector& d);
VectorCheck validate_range_vector(const Graph& g, const RangeVector& d);

/// Zero vector: identity delay for both directions.
DelayVector zero_vector();

/// Source vector that removes sinks and infinite emitters: sinks get infinite
/// tails; edges at an infinite emitter are enumerated with delays 0, 1, 2, ...
/// (finite bundles first in declaration order, then infinite bundles
/// round-robin). Always strictly proper.
SourceVector desingularization_vector(const Graph& g);

/// Range vector that spreads each vertex's incoming edges along a head,
/// one delay per edge in declaration order, and attaches infinite heads to
/// sources. Requires a row-finite graph.
RangeVector spread_in_vector(const Graph& g);

/// Range vector induced by an in-partition: an edge in cell i of its range
/// vertex gets delay i-1, and the vertex gets the cell count minus one.
/// The partition must be valid. Output always validates.
RangeVector drinen_from_in_split(const Graph& g, const InPartition& p);

} // namespace gm
