#pragma once

#include <string>

#include "mrphase/mr_graph.hpp"

namespace mrphase {

// Positive edges solid, negative dashed, fill = vertex color, parity sets as
// same-rank clusters, b drawn as a double circle. Output is deterministic.
std::string to_dot(const MRGraph& graph);

}  // namespace mrphase
