#include "fixtures.hpp"

namespace mrphase::testing {

Instance make_instance(const std::vector<Row>& rows) {
    std::string text = "#MRPHASE v1\n" + std::to_string(rows.size()) + " " +
                       std::to_string(rows.empty() ? 0 : rows.front().genotypes.size()) + "\n";
    for (const auto& r : rows)
        text += std::to_string(r.id) + " " + std::to_string(r.father) + " " + std::to_string(r.mother) + " " +
                r.genotypes + "\n";
    return parse_instance(text);
}

Pedigree trio_pedigree() {
    std::vector<IndividualRecord> records{{1, 0, 0}, {2, 0, 0}, {3, 2, 1}};
    return Pedigree::from_records(records);
}

HaplotypePair pair_of(const std::string& maternal, const std::string& paternal) {
    return {haplotype_from_string(maternal), haplotype_from_string(paternal)};
}

HaplotypeConfiguration two_recombination_trio() {
    HaplotypeConfiguration config(3, 4);
    config[0] = pair_of("0101", "1110");
    config[1] = pair_of("0010", "1111");
    config[2] = pair_of("1111", "0111");
    return config;
}

}  // namespace mrphase::testing
