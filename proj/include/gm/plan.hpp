#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "gm/graph.hpp"
#include "gm/moves.hpp"

namespace gm {

struct PlanOptions {
    std::uint64_t depth = 8;    // default truncation depth for delay steps
    bool allow_improper = false;
};

struct PlanResult {
    Graph graph;
    nlohmann::json trail; // one entry per step, deterministic
};

/// Runs a move pipeline described as {"steps": [{"op": ..., ...}, ...]}.
/// Supported ops: out_split, in_split (arg "partition"), out_delay (arg
/// "vector"), in_delay (arg "vector" or "from_in_partition"), dual,
/// maximal_out_split, desingularize, make_locally_finite; delay steps accept
/// a per-step "depth". The plan is checked structurally before any step
/// runs, and improper steps abort unless allowed, so a result graph is only
/// produced by a fully valid plan.
PlanResult run_plan(const Graph& input, const nlohmann::json& plan, const PlanOptions& opts = {});

} // namespace gm
