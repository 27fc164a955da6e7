#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mrphase/bipartizer.hpp"
#include "mrphase/mr_graph.hpp"
#include "mrphase/oracle.hpp"

namespace mrphase {

inline constexpr int kReportVersion = 1;

// User-facing view of a Solution: individual ids and 1-based sites.
struct SolutionReport {
    struct Haplotypes {
        int id = 0;
        std::string maternal;
        std::string paternal;
    };
    struct Event {
        int child = 0;
        std::string side;
        std::size_t s = 0;
        std::size_t t = 0;
    };

    std::size_t k = 0;
    std::vector<Haplotypes> haplotypes;
    std::vector<Event> events;
    SearchStats stats;
    bool pruned = true;
    std::size_t max_k = 0;
    std::size_t graph_vertices = 0;
    std::size_t graph_edges = 0;
    std::size_t graph_parity_sets = 0;
    std::size_t graph_gray_vertices = 0;
    std::vector<std::string> warnings;
};

SolutionReport make_report(const MRGraph& graph, const Solution& solution, const SearchOptions& options);
std::string report_text(const SolutionReport& report);
std::string report_json(const SolutionReport& report);

std::string oracle_text(const Pedigree& pedigree, const OracleResult& result);

}  // namespace mrphase
