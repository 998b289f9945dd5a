#include "gm/partition.hpp"

#include <map>
#include <set>

#include "gm/error.hpp"

namespace gm {

namespace {

enum class Side { out, in };

const std::vector<std::size_t>& side_bundles(const Graph& g, Side s, const std::string& v) {
    return s == Side::out ? g.out_bundles(v) : g.in_bundles(v);
}

const std::string& side_endpoint(const Bundle& b, Side s) {
    return s == Side::out ? b.src : b.rng;
}

std::vector<Cell> trivial_cells(const Graph& g, Side s, const std::string& v) {
    Cell cell;
    for (std::size_t bi : side_bundles(g, s, v))
        cell.push_back(Share{g.bundles()[bi].id, g.bundles()[bi].mult});
    if (cell.empty())
        return {};
    return {cell};
}

std::vector<Cell> cells_at(const Graph& g, Side s, const std::vector<VertexCells>& at,
                           const std::string& v) {
    for (const VertexCells& vc : at)
        if (vc.vertex == v)
            return vc.cells;
    return trivial_cells(g, s, v);
}

PartitionCheck validate(const Graph& g, Side s, const std::vector<VertexCells>& at) {
    PartitionCheck check;
    auto& diag = check.diagnostics;
    const char* side_name = s == Side::out ? "leaving" : "entering";

    std::set<std::string> mentioned;
    for (const VertexCells& vc : at) {
        if (!g.has_vertex(vc.vertex)) {
            diag.push_back("unknown vertex: " + vc.vertex);
            continue;
        }
        if (!mentioned.insert(vc.vertex).second)
            diag.push_back("vertex partitioned twice: " + vc.vertex);
    }
    if (!diag.empty())
        return check;

    for (const std::string& v : g.vertices()) {
        std::vector<Cell> cells = cells_at(g, s, at, v);
        const auto& side = side_bundles(g, s, v);

        if (side.empty()) {
            if (!cells.empty())
                diag.push_back("vertex " + v + " has no edges " + side_name +
                               " it but carries cells");
            continue;
        }
        if (cells.empty()) {
            diag.push_back("vertex " + v + " has edges " + side_name + " it but no cells");
            continue;
        }

        // Tally shares per bundle across this vertex's cells.
        std::map<std::string, std::pair<Mult, bool>> tally; // id -> (finite part, saw inf)
        std::set<std::string> side_ids;
        for (std::size_t bi : side)
            side_ids.insert(g.bundles()[bi].id);

        bool shares_ok = true;
        for (std::size_t ci = 0; ci < cells.size(); ++ci) {
            const Cell& cell = cells[ci];
            if (cell.empty()) {
                diag.push_back("vertex " + v + " cell " + std::to_string(ci + 1) + " is empty");
                shares_ok = false;
                continue;
            }
            std::set<std::string> in_this_cell;
            for (const Share& sh : cell) {
                if (!side_ids.count(sh.bundle)) {
                    diag.push_back("vertex " + v + " cell " + std::to_string(ci + 1) +
                                   " uses bundle " + sh.bundle + " not " + side_name + " " + v);
                    shares_ok = false;
                    continue;
                }
                if (!in_this_cell.insert(sh.bundle).second) {
                    diag.push_back("vertex " + v + " cell " + std::to_string(ci + 1) +
                                   " lists bundle " + sh.bundle + " twice");
                    shares_ok = false;
                    continue;
                }
                if (sh.amount.is_zero()) {
                    diag.push_back("vertex " + v + ": zero share of bundle " + sh.bundle);
                    shares_ok = false;
                    continue;
                }
                auto& t = tally[sh.bundle];
                if (sh.amount.is_inf())
                    t.second = true;
                else
                    t.first += sh.amount;
            }
        }
        if (!shares_ok)
            continue;

        for (std::size_t bi : side) {
            const Bundle& b = g.bundles()[bi];
            auto it = tally.find(b.id);
            Mult fin_part = it == tally.end() ? Mult() : it->second.first;
            bool saw_inf = it != tally.end() && it->second.second;
            if (b.mult.is_inf()) {
                if (!saw_inf)
                    diag.push_back("UNREPRESENTABLE_INFINITE_PARTITION: bundle " + b.id + " at " +
                                   v + " would need infinitely many cells; finite shares "
                                   "cannot exhaust an infinite bundle");
            } else {
                if (saw_inf)
                    diag.push_back("vertex " + v + ": infinite share of finite bundle " + b.id);
                else if (!(fin_part == b.mult))
                    diag.push_back("vertex " + v + ": shares of bundle " + b.id + " total " +
                                   fin_part.str() + ", bundle has " + b.mult.str());
            }
        }
    }

    check.valid = diag.empty();
    if (!check.valid)
        return check;

    check.proper = true;
    for (const std::string& v : g.vertices()) {
        if (s == Side::out) {
            if (!g.is_infinite_emitter(v))
                continue;
            std::size_t inf_cells = 0;
            for (const Cell& cell : cells_at(g, s, at, v))
                for (const Share& sh : cell)
                    if (sh.amount.is_inf()) {
                        ++inf_cells;
                        break;
                    }
            if (inf_cells != 1) {
                check.proper = false;
                diag.push_back("improper: infinite emitter " + v + " has " +
                               std::to_string(inf_cells) + " infinite cells, needs exactly 1");
            }
        } else {
            if (!(g.is_sink(v) || g.is_infinite_emitter(v)))
                continue;
            std::size_t m = cells_at(g, s, at, v).size();
            if (m > 1) {
                check.proper = false;
                diag.push_back("improper: cannot split the " +
                               std::string(g.is_sink(v) ? "sink " : "infinite emitter ") + v +
                               " into " + std::to_string(m) + " cells");
            }
        }
    }
    return check;
}

} // namespace

OutPartition OutPartition::trivial(const Graph& g) {
    OutPartition p;
    for (const std::string& v : g.vertices()) {
        std::vector<Cell> cells = trivial_cells(g, Side::out, v);
        if (!cells.empty())
            p.at.push_back(VertexCells{v, cells});
    }
    return p;
}

OutPartition OutPartition::maximal(const Graph& g) {
    OutPartition p;
    for (const std::string& v : g.vertices()) {
        if (g.is_infinite_emitter(v))
            fail(errc::unrepresentable_infinite_partition,
                 "maximal splitting of infinite emitter " + v + " would need infinitely many cells");
        std::vector<Cell> cells;
        for (std::size_t bi : g.out_bundles(v)) {
            const Bundle& b = g.bundles()[bi];
            for (std::uint64_t k = 0; k < b.mult.count(); ++k)
                cells.push_back(Cell{Share{b.id, Mult::fin(1)}});
        }
        if (!cells.empty())
            p.at.push_back(VertexCells{v, cells});
    }
    return p;
}

InPartition InPartition::trivial(const Graph& g) {
    InPartition p;
    for (const std::string& v : g.vertices()) {
        std::vector<Cell> cells = trivial_cells(g, Side::in, v);
        if (!cells.empty())
            p.at.push_back(VertexCells{v, cells});
    }
    return p;
}

PartitionCheck validate_out_partition(const Graph& g, const OutPartition& p) {
    return validate(g, Side::out, p.at);
}

PartitionCheck validate_in_partition(const Graph& g, const InPartition& p) {
    return validate(g, Side::in, p.at);
}

std::vector<Cell> out_cells_at(const Graph& g, const OutPartition& p, const std::string& v) {
    return cells_at(g, Side::out, p.at, v);
}

std::vector<Cell> in_cells_at(const Graph& g, const InPartition& p, const std::string& v) {
    return cells_at(g, Side::in, p.at, v);
}

} // namespace gm
