#pragma once

#include <string>

#include "gm/graph.hpp"

namespace gm {

/// Graphviz rendering. Bundles of up to four parallel edges draw one arrow
/// per edge; larger or infinite bundles draw a single labeled arrow.
/// Frontier vertices get dashed borders.
std::string to_dot(const Graph& g);

} // namespace gm
