#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gm/mult.hpp"

namespace gm {

/// A bundle of parallel edges: `mult` edges from `src` to `rng`.
/// Multiplicity is at least one; absent edges are simply absent.
struct Bundle {
    std::string id;
    std::string src;
    std::string rng;
    Mult mult;
};

struct VertexProfile {
    Mult out_degree;
    Mult in_degree;
    bool sink = false;
    bool source = false;
    bool infinite_emitter = false;
    bool infinite_receiver = false;
};

/// Finite presentation of a directed graph with edge multiplicities in
/// N u {inf}. Immutable once built. Vertex order and bundle order are the
/// declaration orders and are preserved by serialization.
class Graph {
public:
    class builder;

    Graph() = default; // the empty graph

    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<Bundle>& bundles() const { return bundles_; }

    bool has_vertex(const std::string& name) const;
    /// Index into vertices(); throws unknown_id.
    std::size_t vertex_index(const std::string& name) const;

    bool has_bundle(const std::string& id) const;
    /// Bundle by id; throws unknown_id.
    const Bundle& bundle(const std::string& id) const;

    /// Indices into bundles() of bundles leaving / entering the vertex,
    /// in declaration order.
    const std::vector<std::size_t>& out_bundles(const std::string& v) const;
    const std::vector<std::size_t>& in_bundles(const std::string& v) const;

    Mult out_degree(const std::string& v) const;
    Mult in_degree(const std::string& v) const;
    bool is_sink(const std::string& v) const { return out_degree(v).is_zero(); }
    bool is_source(const std::string& v) const { return in_degree(v).is_zero(); }
    bool is_infinite_emitter(const std::string& v) const { return out_degree(v).is_inf(); }
    bool is_infinite_receiver(const std::string& v) const { return in_degree(v).is_inf(); }

    VertexProfile classify(const std::string& v) const;

    /// Total multiplicity between an ordered vertex pair.
    Mult adjacency(const std::string& src, const std::string& rng) const;

    /// Row-major matrix over N u {inf} in the given vertex order, which must
    /// be a permutation of vertices(); defaults to declaration order.
    std::vector<std::vector<Mult>>
    adjacency_matrix(const std::vector<std::string>& order = {}) const;

    bool row_finite() const;     // no infinite emitter
    bool locally_finite() const; // row-finite and no infinite receiver
    bool finite_multiplicity() const;
    bool has_sink() const;
    bool has_source() const;
    Mult edge_mass() const;

    /// Truncation bookkeeping for materialized infinite constructions.
    bool truncated() const { return truncated_; }
    const std::set<std::string>& frontier() const { return frontier_; }

private:
    std::vector<std::string> vertices_;
    std::vector<Bundle> bundles_;
    bool truncated_ = false;
    std::set<std::string> frontier_;

    std::vector<std::vector<std::size_t>> out_;
    std::vector<std::vector<std::size_t>> in_;
};

class Graph::builder {
public:
    builder& vertex(const std::string& name);
    builder& bundle(const std::string& id, const std::string& src, const std::string& rng,
                    Mult mult);
    builder& truncated(bool flag);
    builder& frontier(const std::string& vertex);

    /// Validates and freezes. Rejects duplicate names, dangling endpoints,
    /// zero multiplicities and frontier marks on unknown vertices.
    Graph build() &&;

private:
    Graph g_;
};

struct IsoBudget {
    std::size_t node_limit = 12;
    std::size_t step_limit = 10'000'000;
};

/// Graph isomorphism by lexicographic backtracking. Returns the first witness
/// bijection (pairs of g-vertex, h-vertex sorted by g-vertex) in backtracking
/// order, or nullopt when the graphs are not isomorphic. Exceeding the budget
/// raises errc::budget_exceeded; the answer "no" is never a budget artifact.
std::optional<std::vector<std::pair<std::string, std::string>>>
isomorphic(const Graph& g, const Graph& h, const IsoBudget& budget = {});

} // namespace gm
