#include "gm/json_io.hpp"

#include <limits>

#include "gm/error.hpp"

namespace gm {

namespace {

const json& expect(const json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key))
        fail(errc::invalid_input, where + ": missing \"" + key + "\"");
    return j.at(key);
}

std::string expect_string(const json& j, const std::string& where) {
    if (!j.is_string())
        fail(errc::invalid_input, where + ": expected a string");
    return j.get<std::string>();
}

const json& expect_array(const json& j, const std::string& where) {
    if (!j.is_array())
        fail(errc::invalid_input, where + ": expected an array");
    return j;
}

std::uint64_t expect_uint(const json& j, const std::string& where) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
        fail(errc::invalid_input, where + ": expected a nonnegative integer");
    return j.get<std::uint64_t>();
}

} // namespace

json mult_to_json(Mult m) {
    if (m.is_inf())
        return "inf";
    return m.count();
}

Mult mult_from_json(const json& j, const std::string& where) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf")
            return Mult::inf();
        fail(errc::invalid_input, where + ": expected a count or \"inf\"");
    }
    return Mult::fin(expect_uint(j, where));
}

json graph_to_json(const Graph& g) {
    json j;
    j["vertices"] = g.vertices();
    json edges = json::array();
    for (const Bundle& b : g.bundles())
        edges.push_back(
            {{"id", b.id}, {"src", b.src}, {"rng", b.rng}, {"mult", mult_to_json(b.mult)}});
    j["edges"] = edges;
    if (g.truncated()) {
        j["truncated"] = true;
        j["frontier"] = g.frontier();
    }
    return j;
}

Graph graph_from_json(const json& j) {
    Graph::builder b;
    for (const json& v : expect_array(expect(j, "vertices", "graph"), "graph.vertices"))
        b.vertex(expect_string(v, "graph.vertices[]"));
    for (const json& e : expect_array(expect(j, "edges", "graph"), "graph.edges")) {
        b.bundle(expect_string(expect(e, "id", "graph.edges[]"), "edge id"),
                 expect_string(expect(e, "src", "graph.edges[]"), "edge src"),
                 expect_string(expect(e, "rng", "graph.edges[]"), "edge rng"),
                 mult_from_json(expect(e, "mult", "graph.edges[]"), "edge mult"));
    }
    if (j.contains("truncated") && j.at("truncated").is_boolean())
        b.truncated(j.at("truncated").get<bool>());
    if (j.contains("frontier"))
        for (const json& v : expect_array(j.at("frontier"), "graph.frontier"))
            b.frontier(expect_string(v, "graph.frontier[]"));
    return std::move(b).build();
}

namespace {

std::vector<VertexCells> vertex_cells_from_json(const json& j, const char* what) {
    std::vector<VertexCells> at;
    for (const json& entry : expect_array(j, what)) {
        VertexCells vc;
        vc.vertex = expect_string(expect(entry, "vertex", what), "partition vertex");
        for (const json& jcell : expect_array(expect(entry, "cells", what), "partition cells")) {
            Cell cell;
            for (const json& jshare : expect_array(jcell, "partition cell")) {
                Share sh;
                sh.bundle = expect_string(expect(jshare, "bundle", "share"), "share bundle");
                sh.amount = mult_from_json(expect(jshare, "amount", "share"), "share amount");
                cell.push_back(sh);
            }
            vc.cells.push_back(cell);
        }
        at.push_back(vc);
    }
    return at;
}

} // namespace

OutPartition out_partition_from_json(const json& j) {
    return OutPartition{vertex_cells_from_json(j, "out-partition")};
}

InPartition in_partition_from_json(const json& j) {
    return InPartition{vertex_cells_from_json(j, "in-partition")};
}

json partition_check_to_json(const PartitionCheck& c) {
    return {{"valid", c.valid}, {"proper", c.proper}, {"diagnostics", c.diagnostics}};
}

DelayVector delay_vector_from_json(const json& j) {
    DelayVector d;
    if (j.contains("vertices")) {
        const json& jv = j.at("vertices");
        if (!jv.is_object())
            fail(errc::invalid_input, "delay vector: \"vertices\" must map names to delays");
        for (auto it = jv.begin(); it != jv.end(); ++it)
            d.vertices[it.key()] = mult_from_json(it.value(), "vertex delay " + it.key());
    }
    if (j.contains("edges")) {
        for (const json& je : expect_array(j.at("edges"), "delay vector edges")) {
            BundleDelays bd;
            bd.bundle = expect_string(expect(je, "bundle", "edge delays"), "delayed bundle");
            for (const json& jc :
                 expect_array(expect(je, "delays", "edge delays"), "delay classes")) {
                DelayClass c;
                c.delay = expect_uint(expect(jc, "delay", "delay class"), "delay");
                c.count = mult_from_json(expect(jc, "count", "delay class"), "delay count");
                bd.classes.push_back(c);
            }
            if (je.contains("tail")) {
                DelayTail tail;
                tail.from = expect_uint(expect(je.at("tail"), "from", "delay tail"), "tail from");
                tail.stride = je.at("tail").contains("stride")
                                  ? expect_uint(je.at("tail").at("stride"), "tail stride")
                                  : 1;
                bd.tail = tail;
            }
            d.edges.push_back(bd);
        }
    }
    return d;
}

json vector_check_to_json(const VectorCheck& c, bool source_side) {
    json j{{"valid", c.valid}, {"diagnostics", c.diagnostics}};
    if (source_side)
        j["strictly_proper"] = c.strictly_proper;
    return j;
}

IntMatrix matrix_from_json(const json& j) {
    std::vector<std::vector<Int>> rows;
    for (const json& jr : expect_array(j, "matrix")) {
        std::vector<Int> row;
        for (const json& je : expect_array(jr, "matrix row")) {
            if (je.is_number_integer())
                row.emplace_back(je.get<std::int64_t>());
            else if (je.is_string())
                row.emplace_back(Int(je.get<std::string>()));
            else
                fail(errc::invalid_input, "matrix entries must be integers");
        }
        rows.push_back(std::move(row));
    }
    return IntMatrix::from_rows(rows);
}

json matrix_to_json(const IntMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Int& x = m.at(i, j);
            if (x >= std::numeric_limits<std::int64_t>::min() &&
                x <= std::numeric_limits<std::int64_t>::max())
                row.push_back(static_cast<std::int64_t>(x));
            else
                row.push_back(x.str());
        }
        rows.push_back(row);
    }
    return rows;
}

EsseWitness witness_from_json(const json& j) {
    EsseWitness w;
    for (const json& v : expect_array(expect(j, "part1", "witness"), "witness.part1"))
        w.part1.push_back(expect_string(v, "witness.part1[]"));
    for (const json& v : expect_array(expect(j, "part2", "witness"), "witness.part2"))
        w.part2.push_back(expect_string(v, "witness.part2[]"));
    w.graph = graph_from_json(expect(j, "graph", "witness"));
    std::string prov = j.contains("provenance")
                           ? expect_string(j.at("provenance"), "witness.provenance")
                           : "user";
    if (prov == "user")
        w.provenance = WitnessProvenance::user;
    else if (prov == "from_out_split")
        w.provenance = WitnessProvenance::from_out_split;
    else if (prov == "from_in_split")
        w.provenance = WitnessProvenance::from_in_split;
    else
        fail(errc::invalid_input, "witness.provenance: unknown value " + prov);
    return w;
}

json witness_to_json(const EsseWitness& w) {
    const char* prov = w.provenance == WitnessProvenance::user ? "user"
                       : w.provenance == WitnessProvenance::from_out_split ? "from_out_split"
                                                                           : "from_in_split";
    return {{"part1", w.part1},
            {"part2", w.part2},
            {"graph", graph_to_json(w.graph)},
            {"provenance", prov}};
}

json invariant_report_to_json(const InvariantReport& r) {
    json j;
    j["approximate"] = r.approximate;
    j["counts"] = {{"vertices", r.vertex_count},
                   {"bundles", r.bundle_count},
                   {"edge_mass", mult_to_json(r.edge_mass)},
                   {"sinks", r.sinks},
                   {"sources", r.sources},
                   {"infinite_emitters", r.infinite_emitters},
                   {"infinite_receivers", r.infinite_receivers}};
    j["flags"] = {{"row_finite", r.row_finite}, {"locally_finite", r.locally_finite}};
    j["sat_her"] = {{"total", r.sat_her.total},
                    {"proper_nontrivial", r.sat_her.proper_nontrivial},
                    {"comparable_total", r.sat_her.comparable_total},
                    {"comparable_proper_nontrivial", r.sat_her.comparable_proper_nontrivial},
                    {"artifact_suspect", r.sat_her.artifact_suspect}};
    if (r.cokernel) {
        json torsion = json::array();
        for (const Int& t : r.cokernel->torsion)
            torsion.push_back(t.str());
        j["cokernel"] = {{"applicable", true},
                         {"torsion", torsion},
                         {"free_rank", r.cokernel->free_rank}};
    } else {
        j["cokernel"] = {{"applicable", false}};
    }
    return j;
}

json diff_to_json(const std::vector<DiffEntry>& d, bool approximate) {
    json entries = json::array();
    for (const DiffEntry& e : d)
        entries.push_back({{"invariant", e.invariant}, {"left", e.left}, {"right", e.right}});
    return {{"distinguished", !d.empty()}, {"approximate", approximate}, {"differences", entries}};
}

json parse_json_text(const std::string& text, const std::string& where) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        fail(errc::invalid_input, where + ": malformed JSON");
    return j;
}

} // namespace gm
