#pragma once

#include <string>
#include <vector>

#include "gm/graph.hpp"

namespace gm {

/// Part of a bundle placed in a partition cell: `amount` edges of `bundle`,
/// where amount is a positive count or inf (countably many).
struct Share {
    std::string bundle;
    Mult amount;
};

using Cell = std::vector<Share>;

struct VertexCells {
    std::string vertex;
    std::vector<Cell> cells;
};

/// Partition of the edges leaving each vertex into ordered nonempty cells.
/// Vertices without an entry get the trivial single-cell partition; sinks
/// must not carry cells.
struct OutPartition {
    std::vector<VertexCells> at;

    static OutPartition trivial(const Graph& g);
    /// One singleton cell per edge; rejects infinite emitters.
    static OutPartition maximal(const Graph& g);
};

/// Partition of the edges entering each vertex. Vertices without an entry get
/// the trivial single-cell partition; sources must not carry cells.
struct InPartition {
    std::vector<VertexCells> at;

    static InPartition trivial(const Graph& g);
};

struct PartitionCheck {
    bool valid = false;
    bool proper = false;
    std::vector<std::string> diagnostics;
};

PartitionCheck validate_out_partition(const Graph& g, const OutPartition& p);
PartitionCheck validate_in_partition(const Graph& g, const InPartition& p);

/// Cells for one vertex with the implicit trivial default filled in.
/// Empty result means the vertex has no edges on the partitioned side.
std::vector<Cell> out_cells_at(const Graph& g, const OutPartition& p, const std::string& v);
std::vector<Cell> in_cells_at(const Graph& g, const InPartition& p, const std::string& v);

} // namespace gm
