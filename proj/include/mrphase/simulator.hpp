#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mrphase/pedigree.hpp"

namespace mrphase {

struct SimulationSpec {
    std::size_t individuals = 1;
    std::size_t sites = 1;
    std::size_t planted_recombinations = 0;
    // 0 selects default_generations(individuals).
    std::size_t generations = 0;
    std::uint64_t seed = 0;
};

// 2 below five individuals, otherwise 3.
std::size_t default_generations(std::size_t individuals);

struct SimulationTruth {
    HaplotypeConfiguration config;
    InheritancePath path;
    // Each planted breakpoint sits in the gap between sites interval.s and interval.t = s + 1.
    std::vector<RecombinationEvent> planted;
};

struct SimulatedInstance {
    Pedigree pedigree;
    GenotypeMatrix genotypes;
    SimulationTruth truth;
};

// Throws std::invalid_argument for impossible structures or more breakpoints
// than (child, side, gap) slots.
SimulatedInstance simulate(const SimulationSpec& spec);

}  // namespace mrphase
