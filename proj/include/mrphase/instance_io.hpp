#pragma once

#include <string>
#include <string_view>

#include "mrphase/pedigree.hpp"
#include "mrphase/simulator.hpp"

namespace mrphase {

// Instance text:
//   #MRPHASE v1
//   n m
//   id father_id mother_id genotype_string      (n lines, 0 = no parent)
// Blank lines and lines starting with '#' are ignored after the header.
struct Instance {
    Pedigree pedigree;
    GenotypeMatrix genotypes;
};

// Throws ParseError, StructuralError or DataError.
Instance parse_instance(std::string_view text);
std::string serialize_instance(const Pedigree& pedigree, const GenotypeMatrix& genotypes);

// Truth sidecar: the instance text followed by
//   H id maternal_haplotype paternal_haplotype   (one per individual)
//   R child_id maternal|paternal gap             (planted breakpoint after site `gap`, 1-based)
std::string serialize_truth(const SimulatedInstance& instance);
SimulatedInstance parse_truth(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace mrphase
