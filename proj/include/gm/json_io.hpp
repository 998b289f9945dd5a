#pragma once

#include <nlohmann/json.hpp>

#include "gm/delay.hpp"
#include "gm/graph.hpp"
#include "gm/invariants.hpp"
#include "gm/matrixlab.hpp"
#include "gm/partition.hpp"
#include "gm/sse.hpp"

namespace gm {

using json = nlohmann::json;

// Multiplicities serialize as nonnegative integers or the string "inf".
json mult_to_json(Mult m);
Mult mult_from_json(const json& j, const std::string& where);

json graph_to_json(const Graph& g);
Graph graph_from_json(const json& j);

OutPartition out_partition_from_json(const json& j);
InPartition in_partition_from_json(const json& j);
json partition_check_to_json(const PartitionCheck& c);

DelayVector delay_vector_from_json(const json& j);
json vector_check_to_json(const VectorCheck& c, bool source_side);

IntMatrix matrix_from_json(const json& j);
json matrix_to_json(const IntMatrix& m);

EsseWitness witness_from_json(const json& j);
json witness_to_json(const EsseWitness& w);

json invariant_report_to_json(const InvariantReport& r);
json diff_to_json(const std::vector<DiffEntry>& d, bool approximate);

/// Strict parse; raises errc::invalid_input with context on malformed text.
json parse_json_text(const std::string& text, const std::string& where);

} // namespace gm
