#include <doctest.h>

#include <random>

#include "gm/moves.hpp"
#include "gm/sse.hpp"
#include "support.hpp"

using namespace support;

namespace {

gm::IntMatrix adj_matrix(const gm::Graph& g) {
    auto order = g.vertices();
    auto adj = g.adjacency_matrix();
    gm::IntMatrix m(order.size(), order.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t j = 0; j < order.size(); ++j)
            m.at(i, j) = static_cast<long long>(adj[i][j].count());
    return m;
}

void check_bridge(const gm::Graph& g, const gm::Graph& h, const gm::EsseWitness& w) {
    auto verdict = gm::esse_verify(g, h, w);
    INFO((verdict.diagnostics.empty() ? std::string("no diagnostics")
                                      : verdict.diagnostics.front()));
    REQUIRE(verdict.ok);
    gm::IntMatrix r = gm::bridge_block(w, w.part1, w.part2);
    gm::IntMatrix s = gm::bridge_block(w, w.part2, w.part1);
    CHECK(r * s == adj_matrix(g));
    CHECK(s * r == adj_matrix(h));
}

} // namespace

TEST_CASE("bridge for splitting two loops apart") {
    gm::Graph g = fx::two_loops();
    gm::OutPartition p;
    p.at.push_back({"u", {{{"a", m(1)}}, {{"b", m(1)}}}});

    gm::EsseWitness w = gm::esse_bridge_out_split(g, p);
    CHECK(w.provenance == gm::WitnessProvenance::from_out_split);
    CHECK(w.part1 == std::vector<std::string>{"u"});
    CHECK(w.part2 == std::vector<std::string>{"u^1", "u^2"});

    // One down edge per cell plus one up edge per split edge.
    CHECK(w.graph.vertices().size() == 3);
    CHECK(w.graph.bundles().size() == 4);
    CHECK(w.graph.adjacency("u", "u^1") == m(1));
    CHECK(w.graph.adjacency("u", "u^2") == m(1));
    CHECK(w.graph.adjacency("u^1", "u") == m(1));
    CHECK(w.graph.adjacency("u^2", "u") == m(1));

    check_bridge(g, gm::out_split(g, p), w);
}

TEST_CASE("bridge up-edges carry the share amounts") {
    gm::Graph g = make_graph({"u"}, {{"a", "u", "u", 4}});
    gm::OutPartition p;
    p.at.push_back({"u", {{{"a", m(2)}}, {{"a", m(2)}}}});

    gm::EsseWitness w = gm::esse_bridge_out_split(g, p);
    CHECK(w.graph.adjacency("u^1", "u") == m(2));
    CHECK(w.graph.adjacency("u^2", "u") == m(2));
    check_bridge(g, gm::out_split(g, p), w);
}

TEST_CASE("bridge for the mirrored split") {
    gm::Graph g = fx::two_loops();
    gm::InPartition p;
    p.at.push_back({"u", {{{"a", m(1)}}, {{"b", m(1)}}}});

    gm::EsseWitness w = gm::esse_bridge_in_split(g, p);
    CHECK(w.provenance == gm::WitnessProvenance::from_in_split);
    CHECK(w.part2 == std::vector<std::string>{"u_1", "u_2"});
    CHECK(w.graph.adjacency("u_1", "u") == m(1));
    CHECK(w.graph.adjacency("u", "u_2") == m(1));
    check_bridge(g, gm::in_split(g, p), w);
}

TEST_CASE("bridge constructors reject graphs outside their reach") {
    CHECK(error_code_of([] {
        return gm::esse_bridge_out_split(fx::two_into_sink(), {});
    }) == gm::errc::precondition_failed);
    CHECK(error_code_of([] {
        return gm::esse_bridge_out_split(fx::inf_edge(), {});
    }) == gm::errc::precondition_failed);

    // Sources keep their names under an in-split, so the two sides collide.
    gm::Graph with_source = make_graph({"u", "v"}, {{"e", "u", "v", 1}, {"l", "v", "v", 1}});
    CHECK(error_code_of([&] {
        return gm::esse_bridge_in_split(with_source, {});
    }) == gm::errc::invalid_input);

    // Invalid partitions are rejected before any bridge is built.
    gm::OutPartition bad;
    bad.at.push_back({"u", {{{"nope", m(1)}}}});
    CHECK(error_code_of([&] {
        return gm::esse_bridge_out_split(fx::two_loops(), bad);
    }) == gm::errc::invalid_input);
}

TEST_CASE("hand-written witnesses verify or get pinpointed") {
    gm::Graph g1 = make_graph({"p"}, {{"e", "p", "p", 1}});
    gm::Graph g2 = make_graph({"q"}, {{"f", "q", "q", 1}});

    gm::EsseWitness ok;
    ok.part1 = {"p"};
    ok.part2 = {"q"};
    ok.graph = make_graph({"p", "q"}, {{"x", "p", "q", 1}, {"y", "q", "p", 1}});
    CHECK(gm::esse_verify(g1, g2, ok).ok);

    // An edge that stays on one side is called out by name.
    gm::EsseWitness stay = ok;
    stay.graph = make_graph({"p", "q"}, {{"x", "p", "q", 1}, {"y", "p", "p", 1}});
    auto verdict = gm::esse_verify(g1, g2, stay);
    CHECK_FALSE(verdict.ok);
    bool named = false;
    for (const auto& d : verdict.diagnostics)
        named = named || d.find("y does not cross") != std::string::npos;
    CHECK(named);

    // Correct crossings but wrong path counts.
    gm::EsseWitness thin = ok;
    thin.graph = make_graph({"p", "q"}, {{"x", "p", "q", 1}});
    auto counts = gm::esse_verify(g1, g2, thin);
    CHECK_FALSE(counts.ok);
    bool mentioned = false;
    for (const auto& d : counts.diagnostics)
        mentioned = mentioned || d.find("2-step paths") != std::string::npos;
    CHECK(mentioned);
}

TEST_CASE("witness preconditions: finiteness, sinks, disjointness, parts") {
    gm::Graph g1 = make_graph({"p"}, {{"e", "p", "p", 1}});
    gm::Graph g2 = make_graph({"q"}, {{"f", "q", "q", 1}});
    gm::EsseWitness w;
    w.part1 = {"p"};
    w.part2 = {"q"};
    w.graph = make_graph({"p", "q"}, {{"x", "p", "q", 1}, {"y", "q", "p", 1}});

    CHECK(error_code_of([&] { return gm::esse_verify(fx::inf_edge(), g2, w); }) ==
          gm::errc::precondition_failed);
    CHECK(error_code_of([&] { return gm::esse_verify(g1, fx::two_into_sink(), w); }) ==
          gm::errc::precondition_failed);
    CHECK(error_code_of([&] { return gm::esse_verify(g1, g1, w); }) == gm::errc::invalid_input);

    gm::EsseWitness wrong_part = w;
    wrong_part.part1 = {"p", "q"};
    CHECK(error_code_of([&] { return gm::esse_verify(g1, g2, wrong_part); }) ==
          gm::errc::invalid_input);

    gm::EsseWitness extra_vertex = w;
    extra_vertex.graph =
        make_graph({"p", "q", "z"}, {{"x", "p", "q", 1}, {"y", "q", "p", 1}});
    CHECK(error_code_of([&] { return gm::esse_verify(g1, g2, extra_vertex); }) ==
          gm::errc::invalid_input);
}

TEST_CASE("random split bridges always verify") {
    std::mt19937 rng(67);
    RandomGraphOptions opt;
    opt.sink_free = true;
    for (int trial = 0; trial < 40; ++trial) {
        gm::Graph g = random_graph(rng, opt);
        gm::OutPartition p = random_out_partition(rng, g);
        check_bridge(g, gm::out_split(g, p), gm::esse_bridge_out_split(g, p));
    }

    opt.source_free = true;
    for (int trial = 0; trial < 40; ++trial) {
        gm::Graph g = random_graph(rng, opt);
        gm::InPartition p = random_in_partition(rng, g);
        check_bridge(g, gm::in_split(g, p), gm::esse_bridge_in_split(g, p));
    }
}
