#include "gm/graph.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "gm/error.hpp"

namespace gm {

namespace {

std::unordered_map<std::string, std::size_t> index_of(const std::vector<std::string>& names) {
    std::unordered_map<std::string, std::size_t> m;
    for (std::size_t i = 0; i < names.size(); ++i)
        m.emplace(names[i], i);
    return m;
}

} // namespace

bool Graph::has_vertex(const std::string& name) const {
    return std::find(vertices_.begin(), vertices_.end(), name) != vertices_.end();
}

std::size_t Graph::vertex_index(const std::string& name) const {
    auto it = std::find(vertices_.begin(), vertices_.end(), name);
    if (it == vertices_.end())
        fail(errc::unknown_id, "unknown vertex: " + name);
    return static_cast<std::size_t>(it - vertices_.begin());
}

bool Graph::has_bundle(const std::string& id) const {
    for (const Bundle& b : bundles_)
        if (b.id == id)
            return true;
    return false;
}

const Bundle& Graph::bundle(const std::string& id) const {
    for (const Bundle& b : bundles_)
        if (b.id == id)
            return b;
    fail(errc::unknown_id, "unknown bundle: " + id);
}

const std::vector<std::size_t>& Graph::out_bundles(const std::string& v) const {
    return out_[vertex_index(v)];
}

const std::vector<std::size_t>& Graph::in_bundles(const std::string& v) const {
    return in_[vertex_index(v)];
}

Mult Graph::out_degree(const std::string& v) const {
    Mult d;
    for (std::size_t b : out_[vertex_index(v)])
        d += bundles_[b].mult;
    return d;
}

Mult Graph::in_degree(const std::string& v) const {
    Mult d;
    for (std::size_t b : in_[vertex_index(v)])
        d += bundles_[b].mult;
    return d;
}

VertexProfile Graph::classify(const std::string& v) const {
    VertexProfile p;
    p.out_degree = out_degree(v);
    p.in_degree = in_degree(v);
    p.sink = p.out_degree.is_zero();
    p.source = p.in_degree.is_zero();
    p.infinite_emitter = p.out_degree.is_inf();
    p.infinite_receiver = p.in_degree.is_inf();
    return p;
}

Mult Graph::adjacency(const std::string& src, const std::string& rng) const {
    Mult total;
    for (std::size_t b : out_[vertex_index(src)])
        if (bundles_[b].rng == rng)
            total += bundles_[b].mult;
    (void)vertex_index(rng);
    return total;
}

std::vector<std::vector<Mult>>
Graph::adjacency_matrix(const std::vector<std::string>& order) const {
    const std::vector<std::string>& names = order.empty() ? vertices_ : order;
    if (names.size() != vertices_.size())
        fail(errc::invalid_input, "adjacency order is not a permutation of the vertex set");
    std::unordered_map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (!has_vertex(names[i]))
            fail(errc::invalid_input, "adjacency order mentions unknown vertex: " + names[i]);
        if (!pos.emplace(names[i], i).second)
            fail(errc::invalid_input, "adjacency order repeats vertex: " + names[i]);
    }
    std::vector<std::vector<Mult>> a(names.size(), std::vector<Mult>(names.size()));
    for (const Bundle& b : bundles_)
        a[pos.at(b.src)][pos.at(b.rng)] += b.mult;
    return a;
}

bool Graph::row_finite() const {
    for (const std::string& v : vertices_)
        if (out_degree(v).is_inf())
            return false;
    return true;
}

bool Graph::locally_finite() const {
    if (!row_finite())
        return false;
    for (const std::string& v : vertices_)
        if (in_degree(v).is_inf())
            return false;
    return true;
}

bool Graph::finite_multiplicity() const {
    for (const Bundle& b : bundles_)
        if (b.mult.is_inf())
            return false;
    return true;
}

bool Graph::has_sink() const {
    for (const std::string& v : vertices_)
        if (is_sink(v))
            return true;
    return false;
}

bool Graph::has_source() const {
    for (const std::string& v : vertices_)
        if (is_source(v))
            return true;
    return false;
}

Mult Graph::edge_mass() const {
    Mult total;
    for (const Bundle& b : bundles_)
        total += b.mult;
    return total;
}

Graph::builder& Graph::builder::vertex(const std::string& name) {
    g_.vertices_.push_back(name);
    return *this;
}

Graph::builder& Graph::builder::bundle(const std::string& id, const std::string& src,
                                       const std::string& rng, Mult mult) {
    g_.bundles_.push_back(Bundle{id, src, rng, mult});
    return *this;
}

Graph::builder& Graph::builder::truncated(bool flag) {
    g_.truncated_ = flag;
    return *this;
}

Graph::builder& Graph::builder::frontier(const std::string& vertex) {
    g_.frontier_.insert(vertex);
    return *this;
}

Graph Graph::builder::build() && {
    std::unordered_set<std::string> seen;
    for (const std::string& v : g_.vertices_)
        if (!seen.insert(v).second)
            fail(errc::invalid_input, "duplicate vertex name: " + v);

    auto vindex = index_of(g_.vertices_);
    g_.out_.assign(g_.vertices_.size(), {});
    g_.in_.assign(g_.vertices_.size(), {});

    std::unordered_set<std::string> bundle_ids;
    for (std::size_t i = 0; i < g_.bundles_.size(); ++i) {
        const Bundle& b = g_.bundles_[i];
        if (!bundle_ids.insert(b.id).second)
            fail(errc::invalid_input, "duplicate bundle id: " + b.id);
        if (b.mult.is_zero())
            fail(errc::invalid_input, "bundle " + b.id + " has zero multiplicity");
        auto s = vindex.find(b.src);
        auto r = vindex.find(b.rng);
        if (s == vindex.end())
            fail(errc::invalid_input, "bundle " + b.id + " has unknown source: " + b.src);
        if (r == vindex.end())
            fail(errc::invalid_input, "bundle " + b.id + " has unknown range: " + b.rng);
        g_.out_[s->second].push_back(i);
        g_.in_[r->second].push_back(i);
    }

    for (const std::string& v : g_.frontier_)
        if (vindex.find(v) == vindex.end())
            fail(errc::invalid_input, "frontier mark on unknown vertex: " + v);
    if (!g_.frontier_.empty() && !g_.truncated_)
        g_.truncated_ = true;

    return std::move(g_);
}

namespace {

struct IsoState {
    const Graph& g;
    const Graph& h;
    std::vector<std::vector<Mult>> ag;
    std::vector<std::vector<Mult>> ah;
    std::vector<std::size_t> gorder; // g vertex indices, lexicographic by name
    std::vector<std::size_t> horder;
    std::vector<std::size_t> map;    // g index -> h index (or npos)
    std::vector<bool> used;
    std::size_t steps = 0;
    std::size_t step_limit = 0;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    bool compatible(std::size_t gi, std::size_t hi) const {
        for (std::size_t gj = 0; gj < map.size(); ++gj) {
            std::size_t hj = map[gj];
            if (hj == npos)
                continue;
            if (!(ag[gi][gj] == ah[hi][hj]) || !(ag[gj][gi] == ah[hj][hi]))
                return false;
        }
        return ag[gi][gi] == ah[hi][hi];
    }

    bool extend(std::size_t depth) {
        if (++steps > step_limit)
            fail(errc::budget_exceeded, "isomorphism search exceeded its step budget");
        if (depth == gorder.size())
            return true;
        std::size_t gi = gorder[depth];
        for (std::size_t hi : horder) {
            if (used[hi] || !compatible(gi, hi))
                continue;
            map[gi] = hi;
            used[hi] = true;
            if (extend(depth + 1))
                return true;
            map[gi] = npos;
            used[hi] = false;
        }
        return false;
    }
};

std::vector<std::size_t> lex_order(const std::vector<std::string>& names) {
    std::vector<std::size_t> idx(names.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return names[a] < names[b]; });
    return idx;
}

std::multiset<std::pair<std::string, std::string>> degree_profile(const Graph& g) {
    std::multiset<std::pair<std::string, std::string>> prof;
    for (const std::string& v : g.vertices())
        prof.emplace(g.out_degree(v).str(), g.in_degree(v).str());
    return prof;
}

} // namespace

std::optional<std::vector<std::pair<std::string, std::string>>>
isomorphic(const Graph& g, const Graph& h, const IsoBudget& budget) {
    if (g.vertices().size() != h.vertices().size())
        return std::nullopt;
    if (g.vertices().size() > budget.node_limit)
        fail(errc::budget_exceeded, "isomorphism search node limit exceeded: " +
                                        std::to_string(g.vertices().size()) + " > " +
                                        std::to_string(budget.node_limit));
    if (!(g.edge_mass() == h.edge_mass()))
        return std::nullopt;
    if (degree_profile(g) != degree_profile(h))
        return std::nullopt;

    IsoState st{g, h, g.adjacency_matrix(), h.adjacency_matrix(),
                lex_order(g.vertices()),    lex_order(h.vertices()),
                std::vector<std::size_t>(g.vertices().size(), IsoState::npos),
                std::vector<bool>(h.vertices().size(), false)};
    st.step_limit = budget.step_limit;

    if (!st.extend(0))
        return std::nullopt;

    std::vector<std::pair<std::string, std::string>> witness;
    for (std::size_t gi : st.gorder)
        witness.emplace_back(g.vertices()[gi], h.vertices()[st.map[gi]]);
    return witness;
}

} // namespace gm
