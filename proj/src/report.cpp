#include "mrphase/report.hpp"

#include <sstream>

#include "json.hpp"

namespace mrphase {

SolutionReport make_report(const MRGraph& graph, const Solution& solution, const SearchOptions& options) {
    const auto& ped = graph.pedigree();
    SolutionReport r;
    r.k = solution.k;
    for (std::size_t i = 0; i < ped.size(); ++i)
        r.haplotypes.push_back({ped[i].id, haplotype_string(solution.haplotypes[i].maternal),
                                haplotype_string(solution.haplotypes[i].paternal)});
    for (const auto& e : solution.events)
        r.events.push_back({ped[e.child].id, std::string(side_name(e.side)), e.interval.s + 1, e.interval.t + 1});
    r.stats = solution.stats;
    r.pruned = options.prune;
    r.max_k = options.max_k;
    r.graph_vertices = graph.vertex_count();
    r.graph_edges = graph.edges().size();
    r.graph_parity_sets = graph.parity_sets().size();
    r.graph_gray_vertices = graph.gray_vertices().size();
    return r;
}

std::string report_text(const SolutionReport& report) {
    std::ostringstream out;
    out << "k " << report.k << '\n';
    for (const auto& h : report.haplotypes) out << "haplotype " << h.id << ' ' << h.maternal << ' ' << h.paternal << '\n';
    for (const auto& e : report.events) out << "event " << e.child << ' ' << e.side << ' ' << e.s << ' ' << e.t << '\n';
    out << "graph vertices=" << report.graph_vertices << " edges=" << report.graph_edges
        << " parity_sets=" << report.graph_parity_sets << " gray=" << report.graph_gray_vertices << '\n';
    out << "search pruned=" << (report.pruned ? "yes" : "no") << " max_k=" << report.max_k
        << " subsets_examined=" << report.stats.subsets_examined << " traversals=" << report.stats.traversals
        << " removable_edges=" << report.stats.removable_edges << " candidate_edges=" << report.stats.candidate_edges
        << " levels=" << report.stats.levels << '\n';
    for (const auto& w : report.warnings) out << "warning " << w << '\n';
    return out.str();
}

std::string report_json(const SolutionReport& report) {
    nlohmann::ordered_json j;
    j["report_version"] = kReportVersion;
    j["k"] = report.k;
    j["haplotypes"] = nlohmann::ordered_json::array();
    for (const auto& h : report.haplotypes)
        j["haplotypes"].push_back({{"id", h.id}, {"maternal", h.maternal}, {"paternal", h.paternal}});
    j["events"] = nlohmann::ordered_json::array();
    for (const auto& e : report.events)
        j["events"].push_back({{"child", e.child}, {"side", e.side}, {"interval", {e.s, e.t}}});
    j["graph"] = {{"vertices", report.graph_vertices},
                  {"edges", report.graph_edges},
                  {"parity_sets", report.graph_parity_sets},
                  {"gray_vertices", report.graph_gray_vertices}};
    j["stats"] = {{"pruned", report.pruned},
                  {"max_k", report.max_k},
                  {"subsets_examined", report.stats.subsets_examined},
                  {"traversals", report.stats.traversals},
                  {"removable_edges", report.stats.removable_edges},
                  {"candidate_edges", report.stats.candidate_edges},
                  {"levels", report.stats.levels}};
    j["warnings"] = report.warnings;
    return j.dump(2) + "\n";
}

std::string oracle_text(const Pedigree& pedigree, const OracleResult& result) {
    std::ostringstream out;
    if (result.min_k)
        out << "min_k " << *result.min_k << '\n';
    else
        out << "min_k infeasible\n";
    out << "scanned " << result.configurations_scanned << '\n';
    if (result.min_k)
        for (std::size_t i = 0; i < pedigree.size(); ++i)
            out << "haplotype " << pedigree[i].id << ' ' << haplotype_string(result.argmin[i].maternal) << ' '
                << haplotype_string(result.argmin[i].paternal) << '\n';
    return out.str();
}

}  // namespace mrphase
