#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "mrphase/mr_graph.hpp"
#include "mrphase/pedigree.hpp"

namespace mrphase {

struct OracleResult {
    std::optional<int> min_k;  // nullopt if no assignment is Mendelian-consistent
    HaplotypeConfiguration argmin;
    std::uint64_t configurations_scanned = 0;
};

inline constexpr std::size_t kDefaultHetBudget = 20;

// Scores all 2^eta ordered allele assignments at heterozygous entries, taken
// row-major over (individual, site) with allele 0 first. Throws BudgetExceeded.
OracleResult oracle_min_recombinations(const Pedigree& pedigree, const GenotypeMatrix& genotypes,
                                       std::size_t het_budget = kDefaultHetBudget);

// Calls visit with every consistent ordered configuration and its score.
void for_each_consistent_configuration(const Pedigree& pedigree, const GenotypeMatrix& genotypes,
                                       const std::function<void(const HaplotypeConfiguration&, int)>& visit,
                                       std::size_t het_budget = kDefaultHetBudget);

// Every assignment to gray vertices that satisfies all parity sets, in
// increasing order of the gray-bit encoding. Throws BudgetExceeded.
std::vector<Coloring> enumerate_satisfying_colorings(const MRGraph& graph, std::size_t gray_budget = 20);

}  // namespace mrphase
