#include "gm/plan.hpp"

#include <set>

#include "gm/delay.hpp"
#include "gm/error.hpp"
#include "gm/json_io.hpp"

namespace gm {

namespace {

const std::set<std::string> known_ops = {
    "out_split",      "in_split",          "out_delay",     "in_delay",
    "dual",           "maximal_out_split", "desingularize", "make_locally_finite"};

void check_plan_shape(const json& plan) {
    if (!plan.is_object() || !plan.contains("steps") || !plan.at("steps").is_array())
        fail(errc::invalid_input, "plan: expected {\"steps\": [...]}");
    std::size_t i = 0;
    for (const json& step : plan.at("steps")) {
        ++i;
        std::string at = "plan step " + std::to_string(i);
        if (!step.is_object() || !step.contains("op") || !step.at("op").is_string())
            fail(errc::invalid_input, at + ": missing \"op\"");
        std::string op = step.at("op").get<std::string>();
        if (!known_ops.count(op))
            fail(errc::invalid_input, at + ": unknown op \"" + op + "\"");
        if ((op == "out_split" || op == "in_split") && !step.contains("partition"))
            fail(errc::invalid_input, at + ": " + op + " needs a \"partition\"");
        if (op == "out_delay" && !step.contains("vector"))
            fail(errc::invalid_input, at + ": out_delay needs a \"vector\"");
        if (op == "in_delay" && !step.contains("vector") && !step.contains("from_in_partition"))
            fail(errc::invalid_input,
                 at + ": in_delay needs a \"vector\" or \"from_in_partition\"");
        if (step.contains("depth")) {
            const json& d = step.at("depth");
            // Accept both signed and unsigned storage: hand-built documents
            // carry plain ints where parsed ones carry unsigned.
            bool positive = d.is_number_integer() &&
                            (d.is_number_unsigned() ? d.get<std::uint64_t>() >= 1
                                                    : d.get<std::int64_t>() >= 1);
            if (!positive)
                fail(errc::invalid_input, at + ": \"depth\" must be a positive integer");
        }
    }
}

void gate_improper(bool proper, const std::string& what, bool allow,
                   const std::vector<std::string>& diagnostics) {
    if (proper || allow)
        return;
    std::string detail = diagnostics.empty() ? std::string() : " (" + diagnostics.front() + ")";
    fail(errc::invalid_input,
         what + " is improper" + detail + "; pass --allow-improper to run it anyway");
}

} // namespace

PlanResult run_plan(const Graph& input, const json& plan, const PlanOptions& opts) {
    check_plan_shape(plan);

    Graph current = input;
    json trail = json::array();
    std::size_t index = 0;
    for (const json& step : plan.at("steps")) {
        ++index;
        std::string op = step.at("op").get<std::string>();
        TruncationSpec trunc{step.contains("depth") ? step.at("depth").get<std::uint64_t>()
                                                    : opts.depth};

        json entry;
        entry["step"] = index;
        entry["op"] = op;
        std::string stamp = "PROPER";
        Mult dropped;

        if (op == "out_split") {
            OutPartition p = out_partition_from_json(step.at("partition"));
            PartitionCheck check = validate_out_partition(current, p);
            entry["verdict"] = partition_check_to_json(check);
            if (check.valid && !check.proper) {
                gate_improper(false, "step " + std::to_string(index) + " out_split",
                              opts.allow_improper, check.diagnostics);
                stamp = "IMPROPER";
            }
            current = out_split(current, p);
        } else if (op == "in_split") {
            InPartition p = in_partition_from_json(step.at("partition"));
            PartitionCheck check = validate_in_partition(current, p);
            entry["verdict"] = partition_check_to_json(check);
            if (check.valid && !check.proper) {
                gate_improper(false, "step " + std::to_string(index) + " in_split",
                              opts.allow_improper, check.diagnostics);
                stamp = "IMPROPER";
            }
            current = in_split(current, p);
        } else if (op == "out_delay") {
            SourceVector d = delay_vector_from_json(step.at("vector"));
            VectorCheck check = validate_source_vector(current, d);
            entry["verdict"] = vector_check_to_json(check, true);
            if (check.valid && !check.strictly_proper) {
                gate_improper(false, "step " + std::to_string(index) + " out_delay",
                              opts.allow_improper, check.diagnostics);
                stamp = "IMPROPER";
            }
            DelayResult res = out_delay(current, d, trunc);
            current = res.graph;
            dropped = res.dropped_mass;
        } else if (op == "in_delay") {
            RangeVector d = step.contains("vector")
                                ? delay_vector_from_json(step.at("vector"))
                                : drinen_from_in_split(
                                      current, in_partition_from_json(step.at("from_in_partition")));
            VectorCheck check = validate_range_vector(current, d);
            entry["verdict"] = vector_check_to_json(check, false);
            DelayResult res = in_delay(current, d, trunc);
            current = res.graph;
            dropped = res.dropped_mass;
        } else if (op == "dual") {
            current = dual_graph(current);
        } else if (op == "maximal_out_split") {
            current = maximal_out_split(current);
        } else if (op == "desingularize") {
            DelayResult res = desingularize(current, trunc);
            current = res.graph;
            dropped = res.dropped_mass;
        } else if (op == "make_locally_finite") {
            DelayResult res = make_locally_finite(current, trunc);
            current = res.graph;
            dropped = res.dropped_mass;
        }

        entry["stamp"] = stamp;
        entry["dropped_mass"] = mult_to_json(dropped);
        entry["output"] = {{"vertices", current.vertices().size()},
                           {"edge_mass", mult_to_json(current.edge_mass())},
                           {"truncated", current.truncated()}};
        trail.push_back(entry);
    }

    return PlanResult{std::move(current), std::move(trail)};
}

} // namespace gm
