// Acceptance suite. Prints one PASS/FAIL line per criterion and exits nonzero
// if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "mrphase/bipartizer.hpp"
#include "mrphase/errors.hpp"
#include "mrphase/mr_graph.hpp"
#include "mrphase/oracle.hpp"
#include "mrphase/pedigree.hpp"
#include "mrphase/simulator.hpp"

using namespace mrphase;
using Clock = std::chrono::steady_clock;

namespace {

// Tolerances and sizes.
constexpr double kTrioBudgetMs = 1.0;
constexpr double kOracleSuiteBudgetSeconds = 120.0;
constexpr std::uint64_t kFirstSeed = 1;
constexpr std::uint64_t kLastSeed = 500;
constexpr std::size_t kMaxIndividuals = 6;
constexpr std::size_t kMaxSites = 5;
constexpr std::size_t kMaxPlanted = 3;
constexpr std::size_t kMaxEntries = 20;  // n*m, keeps the oracle within its budget
constexpr std::size_t kBijectionGrayLimit = 12;
constexpr int kBisectionTrials = 100;
constexpr double kScalingFactor = 3.0;
constexpr std::size_t kMaxReportedFailures = 5;

int failures = 0;

void report(bool pass, const std::string& name, const std::string& detail) {
    std::cout << (pass ? "PASS " : "FAIL ") << name << ": " << detail << std::endl;
    if (!pass) ++failures;
}

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

SimulationSpec suite_spec(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    SimulationSpec spec;
    spec.seed = seed;
    spec.individuals = 3 + rng() % (kMaxIndividuals - 2);
    std::size_t max_sites = std::min(kMaxSites, kMaxEntries / spec.individuals);
    spec.sites = 2 + rng() % (max_sites - 1);
    spec.planted_recombinations = rng() % (kMaxPlanted + 1);
    spec.generations = 0;
    return spec;
}

struct SuiteCase {
    SimulationSpec spec;
    SimulatedInstance instance;
    MRGraph graph;
    int oracle_k = 0;
    std::size_t solver_k = 0;
    std::vector<std::size_t> pruned_removed;
};

// Lowers the planted count when the drawn pedigree has fewer breakpoint slots.
SimulatedInstance simulate_capped(SimulationSpec& spec) {
    for (;;) {
        try {
            return simulate(spec);
        } catch (const std::invalid_argument&) {
            if (spec.planted_recombinations == 0) throw;
            --spec.planted_recombinations;
        }
    }
}

std::string describe(const SimulationSpec& spec) {
    std::ostringstream out;
    out << "seed " << spec.seed << " (n=" << spec.individuals << ", m=" << spec.sites
        << ", planted=" << spec.planted_recombinations << ")";
    return out.str();
}

void fixture_trio() {
    auto pedigree = testing::trio_pedigree();
    auto config = testing::two_recombination_trio();
    auto start = Clock::now();
    auto k = min_recombinations_for_config(pedigree, config);
    double ms = ms_since(start);
    std::ostringstream detail;
    detail << "min_recombinations_for_config = " << (k ? std::to_string(*k) : "infeasible") << " (expected 2), "
           << ms << " ms (budget " << kTrioBudgetMs << " ms)";
    report(k && *k == 2 && ms < kTrioBudgetMs, "trio_two_recombinations", detail.str());
}

std::vector<SuiteCase> oracle_equivalence() {
    std::vector<SuiteCase> cases;
    std::size_t mismatches = 0;
    std::ostringstream notes;
    auto start = Clock::now();
    for (std::uint64_t seed = kFirstSeed; seed <= kLastSeed; ++seed) {
        auto spec = suite_spec(seed);
        SuiteCase c;
        c.instance = simulate_capped(spec);
        c.spec = spec;
        auto oracle = oracle_min_recombinations(c.instance.pedigree, c.instance.genotypes);
        c.oracle_k = oracle.min_k.value_or(-1);
        c.graph = build_mr_graph(c.instance.pedigree, c.instance.genotypes);
        bool ok = true;
        try {
            auto solution = solve(c.graph);
            c.solver_k = solution.k;
            c.pruned_removed = solution.removed;
            ok = static_cast<int>(solution.k) == c.oracle_k;
        } catch (const std::exception& e) {
            ok = false;
            if (mismatches < kMaxReportedFailures) notes << " [" << describe(spec) << ": " << e.what() << "]";
        }
        if (!ok) {
            if (mismatches < kMaxReportedFailures)
                notes << " [" << describe(spec) << ": solver " << c.solver_k << " vs oracle " << c.oracle_k << "]";
            ++mismatches;
        }
        cases.push_back(std::move(c));
    }
    double seconds = ms_since(start) / 1000.0;
    std::ostringstream detail;
    detail << (cases.size() - mismatches) << "/" << cases.size() << " instances match, " << seconds << " s (budget "
           << kOracleSuiteBudgetSeconds << " s)" << notes.str();
    report(mismatches == 0 && seconds < kOracleSuiteBudgetSeconds, "oracle_equivalence", detail.str());
    return cases;
}

HaplotypeConfiguration canonical(HaplotypeConfiguration config) {
    for (auto& pair : config.individuals)
        if (pair.paternal < pair.maternal) std::swap(pair.maternal, pair.paternal);
    return config;
}

std::string key_of(const HaplotypeConfiguration& config) {
    std::string key;
    for (const auto& pair : config.individuals) key += haplotype_string(pair.maternal) + haplotype_string(pair.paternal) + "|";
    return key;
}

void coloring_suites(const std::vector<SuiteCase>& cases) {
    std::size_t instances = 0;
    std::size_t colorings_checked = 0;
    std::size_t edges_checked = 0;
    std::size_t bijection_failures = 0;
    std::size_t count_failures = 0;
    std::size_t necessity_failures = 0;
    std::ostringstream bijection_notes, count_notes, necessity_notes;

    for (const auto& c : cases) {
        const auto& graph = c.graph;
        if (graph.gray_vertices().size() > kBijectionGrayLimit) continue;
        ++instances;
        const auto& pedigree = c.instance.pedigree;
        const auto& genotypes = c.instance.genotypes;
        const auto& spec = c.spec;

        std::map<std::string, std::size_t> from_colorings;
        std::vector<bool> edge_hit(graph.edges().size(), false);
        bool extract_ok = true;
        for (const auto& coloring : enumerate_satisfying_colorings(graph)) {
            ++colorings_checked;
            HaplotypeConfiguration config;
            try {
                config = extract_haplotypes(graph, coloring);
            } catch (const std::exception& e) {
                extract_ok = false;
                continue;
            }
            if (!genotype_consistent(config, genotypes) || !mendelian_consistent(pedigree, config)) {
                extract_ok = false;
                continue;
            }
            ++from_colorings[key_of(canonical(config))];
            auto disagreeing = disagreeing_edges(graph, coloring);
            for (auto e : disagreeing) edge_hit[e] = true;
            auto score = min_recombinations_for_config(pedigree, config);
            if (!score || static_cast<std::size_t>(*score) != disagreeing.size()) {
                if (count_failures < kMaxReportedFailures)
                    count_notes << " [" << describe(spec) << ": " << disagreeing.size() << " edges vs "
                                << (score ? std::to_string(*score) : "infeasible") << "]";
                ++count_failures;
            }
        }

        std::set<std::string> consistent;
        for_each_consistent_configuration(pedigree, genotypes, [&](const HaplotypeConfiguration& config, int) {
            consistent.insert(key_of(canonical(config)));
        });

        std::size_t multiplicity = 1;
        for (std::size_t i = 0; i < pedigree.size(); ++i)
            if (graph.has_allele_vertices(i)) multiplicity *= 2;
        bool bijective = extract_ok && from_colorings.size() == consistent.size();
        for (const auto& [key, hits] : from_colorings)
            if (!consistent.count(key) || hits != multiplicity) bijective = false;
        if (!bijective) {
            if (bijection_failures < kMaxReportedFailures)
                bijection_notes << " [" << describe(spec) << ": " << from_colorings.size() << " classes from colorings vs "
                                << consistent.size() << " consistent" << (extract_ok ? "" : ", extraction failed") << "]";
            ++bijection_failures;
        }

        for (std::size_t e = 0; e < edge_hit.size(); ++e) {
            ++edges_checked;
            if (!edge_hit[e]) {
                if (necessity_failures < kMaxReportedFailures)
                    necessity_notes << " [" << describe(spec) << ": edge " << graph.label(graph.edges()[e].u) << " -- "
                                    << graph.label(graph.edges()[e].v) << " "
                                    << provenance_name(graph.edges()[e].provenance) << "]";
                ++necessity_failures;
            }
        }
    }

    std::ostringstream d1, d2, d3;
    d1 << (instances - bijection_failures) << "/" << instances << " instances with <= " << kBijectionGrayLimit
       << " gray vertices biject" << bijection_notes.str();
    report(bijection_failures == 0 && instances > 0, "coloring_haplotype_bijection", d1.str());
    d2 << count_failures << " mismatches over " << colorings_checked << " satisfying colorings" << count_notes.str();
    report(count_failures == 0 && colorings_checked > 0, "count_equivalence", d2.str());
    d3 << necessity_failures << " never-disagreeing edges out of " << edges_checked << necessity_notes.str();
    report(necessity_failures == 0 && edges_checked > 0, "edge_necessity", d3.str());
}

void bisection_invariance() {
    std::mt19937_64 rng(20240611);
    int mismatches = 0;
    for (int trial = 0; trial < kBisectionTrials; ++trial) {
        MRGraph graph;
        std::size_t vertices = 3 + rng() % 8;
        for (std::size_t v = 0; v < vertices; ++v) {
            VertexRecord rec;
            rec.id = VertexId::interval(v, 0, 1);
            rec.kind = VertexKind::regular;
            rec.color = Color::gray;
            graph.add_vertex(rec);
        }
        std::size_t total = graph.vertex_count();
        std::size_t edges = rng() % 16;
        for (std::size_t e = 0; e < edges; ++e) {
            SignedEdge edge;
            edge.u = rng() % total;
            do edge.v = rng() % total; while (edge.v == edge.u);
            edge.sign = (rng() & 1U) ? EdgeSign::positive : EdgeSign::negative;
            graph.add_edge(edge);
        }
        Coloring coloring;
        for (std::size_t v = 0; v < total; ++v)
            coloring.colors.push_back(v == graph.special_b() ? Color::blue : ((rng() & 1U) ? Color::red : Color::blue));
        std::size_t before = disagreeing_edges(graph, coloring).size();

        auto augmented = bisect_positive_edges(graph);
        // Bisection vertices pick whichever color disagrees least with their two halves.
        std::vector<std::vector<std::size_t>> halves(augmented.vertex_count);
        std::size_t after = 0;
        for (std::size_t e = 0; e < augmented.edges.size(); ++e) {
            const auto& edge = augmented.edges[e];
            if (edge.u >= augmented.original_vertices) halves[edge.u].push_back(e);
            else if (edge.v >= augmented.original_vertices) halves[edge.v].push_back(e);
            else after += coloring[edge.u] == coloring[edge.v];
        }
        for (std::size_t x = augmented.original_vertices; x < augmented.vertex_count; ++x) {
            std::size_t best = SIZE_MAX;
            for (Color cx : {Color::red, Color::blue}) {
                std::size_t count = 0;
                for (auto e : halves[x]) {
                    const auto& edge = augmented.edges[e];
                    std::size_t other = edge.u == x ? edge.v : edge.u;
                    count += coloring[other] == cx;
                }
                best = std::min(best, count);
            }
            after += best;
        }
        std::size_t positives = std::count_if(graph.edges().begin(), graph.edges().end(),
                                              [](const SignedEdge& e) { return e.sign == EdgeSign::positive; });
        bool shape_ok = augmented.vertex_count == total + positives &&
                        augmented.edges.size() == graph.edges().size() + positives;
        if (before != after || !shape_ok) ++mismatches;
    }
    std::ostringstream detail;
    detail << (kBisectionTrials - mismatches) << "/" << kBisectionTrials << " random graph colorings keep their count";
    report(mismatches == 0, "bisection_invariance", detail.str());
}

void cleanup_fixture() {
    // Searches deterministic five-individual three-generation instances for a
    // grandparental chain whose uncleaned graph over-counts an optimal configuration.
    for (std::uint64_t seed = 1; seed <= 5000; ++seed) {
        SimulationSpec spec{5, 4, 1, 3, seed};
        auto instance = simulate(spec);
        const auto& pedigree = instance.pedigree;
        const auto& genotypes = instance.genotypes;
        auto oracle = oracle_min_recombinations(pedigree, genotypes);
        if (!oracle.min_k || *oracle.min_k != 1) continue;
        const auto& truth = instance.truth.config;
        auto truth_k = min_recombinations_for_config(pedigree, truth);
        if (!truth_k || *truth_k != 1) continue;
        auto raw = build_mr_graph(pedigree, genotypes, BuildOptions{false, true});
        auto pre = disagreeing_edges(raw, induced_coloring(raw, truth)).size();
        if (pre != 2) continue;
        auto cleaned = build_mr_graph(pedigree, genotypes);
        auto post = solve(cleaned).k;
        std::ostringstream detail;
        detail << "seed " << seed << ": uncleaned count " << pre << ", oracle " << *oracle.min_k
               << ", cleaned solver k = " << post;
        report(post == 1, "cleanup_overcount_fixture", detail.str());
        return;
    }
    report(false, "cleanup_overcount_fixture", "no over-counting grandparental chain found in 5000 seeds");
}

double median_build_ms(std::size_t n, std::size_t m, std::uint64_t seed) {
    SimulationSpec spec{n, m, 2, 3, seed};
    auto instance = simulate(spec);
    std::vector<double> samples;
    for (int rep = 0; rep < 7; ++rep) {
        auto start = Clock::now();
        int inner = 0;
        double elapsed = 0;
        do {
            auto graph = build_mr_graph(instance.pedigree, instance.genotypes);
            ++inner;
            elapsed = ms_since(start);
        } while (elapsed < 20.0);
        samples.push_back(elapsed / inner);
    }
    std::sort(samples.begin(), samples.end());
    return samples[samples.size() / 2];
}

void construction_scaling() {
    std::ostringstream detail;
    bool ok = true;
    double prev = 0;
    detail << "m sweep (n=24):";
    for (std::size_t m : {64, 128, 256}) {
        double ms = median_build_ms(24, m, 11);
        if (prev > 0) {
            detail << " x" << ms / prev;
            ok = ok && ms / prev <= kScalingFactor;
        }
        detail << " " << m << "->" << ms << "ms";
        prev = ms;
    }
    prev = 0;
    detail << "; n sweep (m=64):";
    for (std::size_t n : {24, 48, 96}) {
        double ms = median_build_ms(n, 64, 13);
        if (prev > 0) {
            detail << " x" << ms / prev;
            ok = ok && ms / prev <= kScalingFactor;
        }
        detail << " " << n << "->" << ms << "ms";
        prev = ms;
    }
    detail << " (limit " << kScalingFactor << "x per doubling)";
    report(ok, "construction_scaling", detail.str());
}

void prune_soundness(const std::vector<SuiteCase>& cases) {
    std::size_t mismatches = 0;
    std::ostringstream notes;
    for (const auto& c : cases) {
        bool ok = true;
        try {
            auto literal = solve(c.graph, SearchOptions{8, false});
            ok = literal.k == c.solver_k && literal.removed == c.pruned_removed;
        } catch (const std::exception& e) {
            ok = false;
        }
        if (!ok) {
            if (mismatches < kMaxReportedFailures) notes << " [" << describe(c.spec) << "]";
            ++mismatches;
        }
    }
    std::ostringstream detail;
    detail << (cases.size() - mismatches) << "/" << cases.size() << " instances agree on k and removal set"
           << notes.str();
    report(mismatches == 0, "prune_soundness", detail.str());
}

}  // namespace

int main() {
    fixture_trio();
    auto cases = oracle_equivalence();
    coloring_suites(cases);
    bisection_invariance();
    cleanup_fixture();
    construction_scaling();
    prune_soundness(cases);
    std::cout << "INFO out_of_scope: the exponential running-time bound is only recorded in search stats, and "
                 "pedigrees with thousands of individuals and hundreds of thousands of sites are not exercised"
              << std::endl;
    return failures == 0 ? 0 : 1;
}
