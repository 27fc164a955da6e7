#pragma once

#include <string>
#include <vector>

#include "mrphase/instance_io.hpp"
#include "mrphase/pedigree.hpp"

namespace mrphase::testing {

struct Row {
    int id;
    int father;
    int mother;
    std::string genotypes;
};

// Builds and validates an instance from rows in file order.
Instance make_instance(const std::vector<Row>& rows);

// Father 1, mother 2, child 3.
Pedigree trio_pedigree();

// The two-recombination trio: father {0101, 1110}, mother {0010, 1111},
// child {0111 from the father, 1111 from the mother}.
HaplotypeConfiguration two_recombination_trio();

HaplotypePair pair_of(const std::string& maternal, const std::string& paternal);

}  // namespace mrphase::testing
