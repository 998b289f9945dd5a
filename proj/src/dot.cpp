#include "gm/dot.hpp"

#include <sstream>

namespace gm {

namespace {

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out + "\"";
}

} // namespace

std::string to_dot(const Graph& g) {
    std::ostringstream os;
    os << "digraph G {\n";
    for (const std::string& v : g.vertices()) {
        os << "  " << quoted(v);
        if (g.frontier().count(v))
            os << " [style=dashed]";
        os << ";\n";
    }
    for (const Bundle& b : g.bundles()) {
        if (b.mult.is_fin() && b.mult.count() <= 4) {
            for (std::uint64_t k = 0; k < b.mult.count(); ++k)
                os << "  " << quoted(b.src) << " -> " << quoted(b.rng) << ";\n";
        } else {
            os << "  " << quoted(b.src) << " -> " << quoted(b.rng) << " [label="
               << quoted(b.mult.is_inf() ? "∞" : b.mult.str()) << "];\n";
        }
    }
    os << "}\n";
    return os.str();
}

} // namespace gm
