#include "qmdc/instance_io.hpp"

#include <fstream>
#include <sstream>

namespace qmdc {

Instance parse_instance(std::istream& in) {
    int d = -1, n = -1;
    std::vector<Edge> edges;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        auto fail = [&](const std::string& why) {
            throw std::invalid_argument("instance parse error at line " + std::to_string(lineno) +
                                        ": " + why);
        };
        if (tok == "d") {
            if (!(ls >> d)) fail("expected integer after 'd'");
        } else if (tok == "n") {
            if (!(ls >> n)) fail("expected integer after 'n'");
        } else if (tok == "edge") {
            Edge e;
            if (!(ls >> e.u >> e.v >> e.w)) fail("expected 'edge <u> <v> <w>'");
            edges.push_back(e);
        } else {
            fail("unknown directive '" + tok + "'");
        }
    }
    if (d < 2) throw std::invalid_argument("instance file missing valid 'd' header");
    if (n < 1) throw std::invalid_argument("instance file missing valid 'n' header");
    return Instance::make(d, n, std::move(edges));
}

Instance parse_instance_string(const std::string& text) {
    std::istringstream in(text);
    return parse_instance(in);
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open instance file: " + path);
    return parse_instance(in);
}

void write_instance(const Instance& g, std::ostream& out) {
    out << "d " << g.d << "\n";
    out << "n " << g.n << "\n";
    out.precision(17);
    for (const Edge& e : g.edges) out << "edge " << e.u << " " << e.v << " " << e.w << "\n";
}

void save_instance(const Instance& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write instance file: " + path);
    write_instance(g, out);
}

} // namespace qmdc
