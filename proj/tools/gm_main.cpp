// gm: command line front end for graph moves, invariants and equivalence
// bridges. All payloads are JSON on files or stdin ("-").
//
// Exit codes: 0 success (or: no distinction found), 2 input error,
// 3 distinguished / not verified / proven absent, 4 budget exhausted.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gm/delay.hpp"
#include "gm/dot.hpp"
#include "gm/error.hpp"
#include "gm/invariants.hpp"
#include "gm/json_io.hpp"
#include "gm/moves.hpp"
#include "gm/plan.hpp"
#include "gm/sse.hpp"

namespace {

using gm::json;

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in)
        gm::fail(gm::errc::invalid_input, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json load(const std::string& path) {
    return gm::parse_json_text(slurp(path), path == "-" ? "stdin" : path);
}

gm::Graph load_graph(const std::string& path) {
    return gm::graph_from_json(load(path));
}

void emit(const json& j) {
    std::cout << j.dump(2) << "\n";
}

struct Options {
    std::string graph, plan, left, right, witness;
    std::string out_partition, in_partition, source_vector, range_vector;
    std::string matrix_a, matrix_b, matrix;
    std::uint64_t depth = 8;
    std::uint64_t budget = 1'000'000;
    std::uint64_t seed = 0; // reserved: searches are exact and serial
    std::size_t m_max = 2;
    bool allow_improper = false;
};

int cmd_validate(const Options& o) {
    gm::Graph g = load_graph(o.graph);
    json out;
    bool any = false;
    bool all_valid = true;
    if (!o.out_partition.empty()) {
        auto check = gm::validate_out_partition(g, gm::out_partition_from_json(load(o.out_partition)));
        out["out_partition"] = gm::partition_check_to_json(check);
        any = true;
        all_valid = all_valid && check.valid;
    }
    if (!o.in_partition.empty()) {
        auto check = gm::validate_in_partition(g, gm::in_partition_from_json(load(o.in_partition)));
        out["in_partition"] = gm::partition_check_to_json(check);
        any = true;
        all_valid = all_valid && check.valid;
    }
    if (!o.source_vector.empty()) {
        auto check = gm::validate_source_vector(g, gm::delay_vector_from_json(load(o.source_vector)));
        out["source_vector"] = gm::vector_check_to_json(check, true);
        any = true;
        all_valid = all_valid && check.valid;
    }
    if (!o.range_vector.empty()) {
        auto check = gm::validate_range_vector(g, gm::delay_vector_from_json(load(o.range_vector)));
        out["range_vector"] = gm::vector_check_to_json(check, false);
        any = true;
        all_valid = all_valid && check.valid;
    }
    if (!any)
        out["graph"] = {{"valid", true},
                        {"vertices", g.vertices().size()},
                        {"edge_mass", gm::mult_to_json(g.edge_mass())}};
    emit(out);
    return all_valid ? 0 : 2;
}

int cmd_apply(const Options& o) {
    gm::Graph g = load_graph(o.graph);
    gm::PlanOptions popts{o.depth, o.allow_improper};
    gm::PlanResult res = gm::run_plan(g, load(o.plan), popts);
    emit(json{{"graph", gm::graph_to_json(res.graph)}, {"trail", res.trail}});
    return 0;
}

int cmd_invariants(const Options& o) {
    gm::Graph g = load_graph(o.graph);
    gm::SatHerOptions shopts;
    shopts.budget = o.budget;
    emit(gm::invariant_report_to_json(gm::invariant_report(g, shopts)));
    return 0;
}

int cmd_diff(const Options& o) {
    gm::Graph a = load_graph(o.left);
    gm::Graph b = load_graph(o.right);
    gm::SatHerOptions shopts;
    shopts.budget = o.budget;
    auto diff = gm::morita_diff(a, b, shopts);
    emit(gm::diff_to_json(diff, a.truncated() || b.truncated()));
    return diff.empty() ? 0 : 3;
}

int cmd_dual(const Options& o) {
    emit(gm::graph_to_json(gm::dual_graph(load_graph(o.graph))));
    return 0;
}

int cmd_desingularize(const Options& o) {
    gm::DelayResult res = gm::desingularize(load_graph(o.graph), gm::TruncationSpec{o.depth});
    emit(json{{"graph", gm::graph_to_json(res.graph)},
              {"dropped_mass", gm::mult_to_json(res.dropped_mass)}});
    return 0;
}

int cmd_sse_verify(const Options& o) {
    gm::Graph g1 = load_graph(o.left);
    gm::Graph g2 = load_graph(o.right);
    gm::EsseWitness w = gm::witness_from_json(load(o.witness));
    gm::EsseVerdict verdict = gm::esse_verify(g1, g2, w);
    emit(json{{"verified", verdict.ok}, {"diagnostics", verdict.diagnostics}});
    return verdict.ok ? 0 : 3;
}

int cmd_sse_bridge(const Options& o) {
    gm::Graph g = load_graph(o.graph);
    if (o.out_partition.empty() == o.in_partition.empty())
        gm::fail(gm::errc::invalid_input,
                 "pass exactly one of --out-partition / --in-partition");
    gm::EsseWitness w =
        o.out_partition.empty()
            ? gm::esse_bridge_in_split(g, gm::in_partition_from_json(load(o.in_partition)))
            : gm::esse_bridge_out_split(g, gm::out_partition_from_json(load(o.out_partition)));
    emit(gm::witness_to_json(w));
    return 0;
}

int cmd_snf(const Options& o) {
    gm::IntMatrix m = gm::matrix_from_json(load(o.matrix));
    gm::SmithForm snf = gm::smith_normal_form(m);
    json factors = json::array();
    for (const gm::Int& f : snf.invariant_factors)
        factors.push_back(f.str());
    emit(json{{"d", gm::matrix_to_json(snf.d)},
              {"u", gm::matrix_to_json(snf.u)},
              {"v", gm::matrix_to_json(snf.v)},
              {"invariant_factors", factors}});
    return 0;
}

int cmd_esse_search(const Options& o) {
    gm::IntMatrix a = gm::matrix_from_json(load(o.matrix_a));
    gm::IntMatrix b = gm::matrix_from_json(load(o.matrix_b));
    gm::EsseSearchResult res = gm::esse_matrix_search(a, b, o.m_max, o.budget);
    json out;
    out["examined"] = res.examined;
    switch (res.status) {
    case gm::EsseSearchResult::Status::found:
        out["status"] = "found";
        out["r"] = gm::matrix_to_json(res.r);
        out["s"] = gm::matrix_to_json(res.s);
        emit(out);
        return 0;
    case gm::EsseSearchResult::Status::none:
        out["status"] = "none";
        out["note"] = res.note;
        emit(out);
        return 3;
    case gm::EsseSearchResult::Status::budget:
        out["status"] = "budget_exhausted";
        out["note"] = res.note;
        emit(out);
        return 4;
    }
    return 2;
}

int cmd_export_dot(const Options& o) {
    std::cout << gm::to_dot(load_graph(o.graph));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"graph moves, invariants and equivalence bridges"};
    app.require_subcommand(1);
    Options o;

    app.add_option("--depth", o.depth, "truncation depth for delay constructions")
        ->check(CLI::PositiveNumber);
    app.add_option("--budget", o.budget, "work budget for searches and lattices");
    app.add_option("--seed", o.seed, "reserved; searches are exact and order-deterministic");
    app.add_flag("--allow-improper", o.allow_improper, "run improper moves, stamped in the trail");

    auto* validate = app.add_subcommand("validate", "check a partition or delay vector");
    validate->add_option("--graph", o.graph)->required();
    validate->add_option("--out-partition", o.out_partition);
    validate->add_option("--in-partition", o.in_partition);
    validate->add_option("--source-vector", o.source_vector);
    validate->add_option("--range-vector", o.range_vector);

    auto* apply = app.add_subcommand("apply", "run a move plan");
    apply->add_option("--graph", o.graph)->required();
    apply->add_option("--plan", o.plan)->required();

    auto* invariants = app.add_subcommand("invariants", "invariant report for a graph");
    invariants->add_option("--graph", o.graph)->required();

    auto* diff = app.add_subcommand("diff", "compare invariants of two graphs");
    diff->add_option("left", o.left)->required();
    diff->add_option("right", o.right)->required();

    auto* dual = app.add_subcommand("dual", "dual graph");
    dual->add_option("--graph", o.graph)->required();

    auto* desing = app.add_subcommand("desingularize", "remove sinks and infinite emitters");
    desing->add_option("--graph", o.graph)->required();

    auto* sse_verify = app.add_subcommand("sse-verify", "check an equivalence bridge");
    sse_verify->add_option("--g1", o.left)->required();
    sse_verify->add_option("--g2", o.right)->required();
    sse_verify->add_option("--witness", o.witness)->required();

    auto* sse_bridge = app.add_subcommand("sse-bridge", "bridge for a split move");
    sse_bridge->add_option("--graph", o.graph)->required();
    sse_bridge->add_option("--out-partition", o.out_partition);
    sse_bridge->add_option("--in-partition", o.in_partition);

    auto* snf = app.add_subcommand("snf", "Smith normal form of an integer matrix");
    snf->add_option("--matrix", o.matrix)->required();

    auto* esse_search = app.add_subcommand("esse-search", "search for a single matrix link");
    esse_search->add_option("--a", o.matrix_a)->required();
    esse_search->add_option("--b", o.matrix_b)->required();
    esse_search->add_option("--m-max", o.m_max, "largest inner dimension to try");

    auto* export_dot = app.add_subcommand("export-dot", "Graphviz rendering");
    export_dot->add_option("--graph", o.graph)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed())
            return cmd_validate(o);
        if (apply->parsed())
            return cmd_apply(o);
        if (invariants->parsed())
            return cmd_invariants(o);
        if (diff->parsed())
            return cmd_diff(o);
        if (dual->parsed())
            return cmd_dual(o);
        if (desing->parsed())
            return cmd_desingularize(o);
        if (sse_verify->parsed())
            return cmd_sse_verify(o);
        if (sse_bridge->parsed())
            return cmd_sse_bridge(o);
        if (snf->parsed())
            return cmd_snf(o);
        if (esse_search->parsed())
            return cmd_esse_search(o);
        if (export_dot->parsed())
            return cmd_export_dot(o);
    } catch (const gm::error& e) {
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return e.code() == gm::errc::budget_exceeded ? 4 : 2;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return 2;
    }
    return 2;
}
