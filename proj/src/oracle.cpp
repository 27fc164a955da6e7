#include "mrphase/oracle.hpp"

#include "mrphase/errors.hpp"

namespace mrphase {

namespace {

struct HetEntry {
    std::size_t individual;
    std::size_t site;
};

std::vector<HetEntry> het_entries(const GenotypeMatrix& genotypes, std::size_t budget) {
    std::vector<HetEntry> out;
    for (std::size_t i = 0; i < genotypes.rows(); ++i)
        for (std::size_t s = 0; s < genotypes.sites(); ++s)
            if (genotypes.het(i, s)) out.push_back(HetEntry{i, s});
    if (out.size() > budget)
        throw BudgetExceeded("heterozygous entry count eta = " + std::to_string(out.size()), out.size(), budget);
    return out;
}

HaplotypeConfiguration homozygous_base(const GenotypeMatrix& genotypes) {
    HaplotypeConfiguration config(genotypes.rows(), genotypes.sites());
    for (std::size_t i = 0; i < genotypes.rows(); ++i)
        for (std::size_t s = 0; s < genotypes.sites(); ++s)
            if (!genotypes.het(i, s)) config[i].maternal[s] = config[i].paternal[s] = genotypes(i, s);
    return config;
}

// Visits every ordered assignment; entry 0 is the most significant position so
// the visiting order is lexicographic over entries.
template <typename Visit>
void enumerate(const Pedigree& pedigree, const GenotypeMatrix& genotypes, std::size_t budget, Visit&& visit) {
    auto entries = het_entries(genotypes, budget);
    auto config = homozygous_base(genotypes);
    const std::size_t eta = entries.size();
    const std::uint64_t total = std::uint64_t{1} << eta;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        for (std::size_t k = 0; k < eta; ++k) {
            Allele a = static_cast<Allele>((mask >> (eta - 1 - k)) & 1U);
            config[entries[k].individual].maternal[entries[k].site] = a;
            config[entries[k].individual].paternal[entries[k].site] = static_cast<Allele>(1 - a);
        }
        visit(config, min_recombinations_for_config(pedigree, config));
    }
}

}  // namespace

OracleResult oracle_min_recombinations(const Pedigree& pedigree, const GenotypeMatrix& genotypes,
                                       std::size_t het_budget) {
    OracleResult result;
    enumerate(pedigree, genotypes, het_budget, [&](const HaplotypeConfiguration& config, std::optional<int> score) {
        ++result.configurations_scanned;
        if (score && (!result.min_k || *score < *result.min_k)) {
            result.min_k = score;
            result.argmin = config;
        }
    });
    return result;
}

void for_each_consistent_configuration(const Pedigree& pedigree, const GenotypeMatrix& genotypes,
                                       const std::function<void(const HaplotypeConfiguration&, int)>& visit,
                                       std::size_t het_budget) {
    enumerate(pedigree, genotypes, het_budget, [&](const HaplotypeConfiguration& config, std::optional<int> score) {
        if (score) visit(config, *score);
    });
}

std::vector<Coloring> enumerate_satisfying_colorings(const MRGraph& graph, std::size_t gray_budget) {
    const std::size_t gray = graph.gray_vertices().size();
    if (gray > gray_budget) throw BudgetExceeded("gray vertex count " + std::to_string(gray), gray, gray_budget);
    std::vector<Coloring> out;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << gray); ++bits) {
        auto c = coloring_from_gray_bits(graph, bits);
        if (all_parity_satisfied(graph, c)) out.push_back(std::move(c));
    }
    return out;
}

}  // namespace mrphase
