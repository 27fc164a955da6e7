#include "mrphase/dot_export.hpp"

#include <sstream>

namespace mrphase {

namespace {

std::string node_name(std::size_t v) { return "v" + std::to_string(v); }

std::string fill(Color c) {
    switch (c) {
        case Color::red: return "red";
        case Color::blue: return "blue";
        default: return "gray";
    }
}

}  // namespace

std::string to_dot(const MRGraph& graph) {
    std::ostringstream out;
    out << "graph mr {\n";
    out << "  node [style=filled, shape=ellipse];\n";
    for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
        const auto& rec = graph.vertex(v);
        out << "  " << node_name(v) << " [label=\"" << graph.label(v) << "\", fillcolor=" << fill(rec.color);
        if (rec.color == Color::blue) out << ", fontcolor=white";
        if (rec.kind == VertexKind::special) out << ", shape=doublecircle";
        if (rec.kind == VertexKind::allele) out << ", shape=box";
        out << "];\n";
    }
    for (std::size_t k = 0; k < graph.parity_sets().size(); ++k) {
        const auto& set = graph.parity_sets()[k];
        out << "  subgraph cluster_parity_" << k << " {\n";
        out << "    label=\"parity " << color_name(set.parity_color) << "\";\n";
        out << "    rank=same;\n";
        for (std::size_t m : set.members) out << "    " << node_name(m) << ";\n";
        out << "  }\n";
    }
    for (const auto& e : graph.edges()) {
        out << "  " << node_name(e.u) << " -- " << node_name(e.v) << " [style="
            << (e.sign == EdgeSign::positive ? "solid" : "dashed") << ", label=\"" << provenance_name(e.provenance)
            << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace mrphase
