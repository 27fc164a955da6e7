#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "mrphase/mr_graph.hpp"
#include "mrphase/pedigree.hpp"

namespace mrphase {

// Every edge of an augmented graph is negative: its endpoints must differ.
struct AugmentedEdge {
    std::size_t u = 0;
    std::size_t v = 0;
    bool removable = true;
    // Index of the MRGraph edge this edge stands for, if any.
    std::optional<std::size_t> original;
    Provenance provenance = Provenance::c1;
};

struct AugmentedGraph {
    // MRGraph vertices keep their indices in [0, original_vertices).
    std::size_t original_vertices = 0;
    std::size_t vertex_count = 0;
    // Fixed color per MRGraph vertex; gray if free.
    std::vector<Color> fixed;
    std::vector<AugmentedEdge> edges;
    std::vector<ParityConstraintSet> parity_sets;
    std::optional<std::size_t> red_anchor;
    std::optional<std::size_t> blue_anchor;

    std::size_t removable_count() const;
};

AugmentedGraph bisect_positive_edges(const MRGraph& graph);
AugmentedGraph attach_parity_anchors(AugmentedGraph graph);

struct SearchOptions {
    std::size_t max_k = 8;
    // Candidate filtering, duplicate-subset skipping and early traversal exit.
    bool prune = true;
};

struct SearchStats {
    std::uint64_t subsets_examined = 0;
    std::uint64_t traversals = 0;
    std::size_t removable_edges = 0;
    std::size_t candidate_edges = 0;
    std::size_t levels = 0;
};

struct Bipartization {
    std::size_t k = 0;
    // Augmented edge indices, ascending.
    std::vector<std::size_t> removed;
    // Colors of the augmented vertices; red is the red anchor's side.
    std::vector<Color> colors;
    SearchStats stats;
};

// Smallest k, then lexicographically smallest removal set, whose residual
// graph is bipartite with all parity sets satisfied. Throws BoundExceeded.
Bipartization search_bipartization(const AugmentedGraph& graph, const SearchOptions& options = {});

struct Solution {
    std::size_t k = 0;
    // MRGraph edge indices, ascending.
    std::vector<std::size_t> removed;
    std::vector<std::size_t> removed_augmented;
    Coloring coloring;
    HaplotypeConfiguration haplotypes;
    std::vector<RecombinationEvent> events;
    SearchStats stats;
};

Solution solve_mrhc(const MRGraph& graph, const AugmentedGraph& augmented, const SearchOptions& options = {});

// build_mr_graph is the caller's job; this runs bisection, anchoring and search.
Solution solve(const MRGraph& graph, const SearchOptions& options = {});

// Maps disagreeing edges to (child, side, interval) events, sorted.
std::vector<RecombinationEvent> events_from_solution(const MRGraph& graph, const Coloring& coloring,
                                                     const std::vector<std::size_t>& removed);

}  // namespace mrphase
