#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mrphase {

using Allele = std::uint8_t;
// 0 and 1 are homozygous, 2 is heterozygous.
using Genotype = std::uint8_t;
inline constexpr Genotype kHeterozygous = 2;

enum class Side : std::uint8_t { maternal = 0, paternal = 1 };

std::string_view side_name(Side side);
std::optional<Side> side_from_name(std::string_view name);
inline Side other_side(Side side) { return side == Side::maternal ? Side::paternal : Side::maternal; }

// One pedigree line as written in an instance file. Parent id 0 means none.
struct IndividualRecord {
    int id = 0;
    int mother = 0;
    int father = 0;
    bool operator==(const IndividualRecord&) const = default;
};

class Pedigree {
public:
    struct Individual {
        int id = 0;
        std::optional<std::size_t> mother;
        std::optional<std::size_t> father;
    };

    Pedigree() = default;

    // Throws StructuralError on the first structural problem.
    static Pedigree from_records(std::span<const IndividualRecord> records);

    std::size_t size() const noexcept { return individuals_.size(); }
    const Individual& operator[](std::size_t i) const { return individuals_[i]; }
    std::span<const Individual> individuals() const noexcept { return individuals_; }

    std::optional<std::size_t> index_of(int id) const;
    bool is_founder(std::size_t i) const { return !individuals_[i].mother.has_value(); }
    std::optional<std::size_t> parent(std::size_t i, Side side) const;
    std::span<const std::size_t> children(std::size_t i) const { return children_[i]; }
    std::size_t founder_count() const;

    std::vector<IndividualRecord> records() const;

private:
    std::vector<Individual> individuals_;
    std::vector<std::vector<std::size_t>> children_;
    std::unordered_map<int, std::size_t> index_;
};

class GenotypeMatrix {
public:
    GenotypeMatrix() = default;
    GenotypeMatrix(std::size_t rows, std::size_t sites);
    // Throws std::invalid_argument on ragged rows or values outside {0,1,2}.
    explicit GenotypeMatrix(const std::vector<std::vector<Genotype>>& rows);
    // Builds from strings over {'0','1','2'}.
    static GenotypeMatrix from_strings(const std::vector<std::string>& rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t sites() const noexcept { return sites_; }
    Genotype operator()(std::size_t i, std::size_t s) const { return data_[i * sites_ + s]; }
    void set(std::size_t i, std::size_t s, Genotype g);
    bool het(std::size_t i, std::size_t s) const { return (*this)(i, s) == kHeterozygous; }
    std::vector<std::size_t> het_sites(std::size_t i) const;
    // The heterozygous entry count.
    std::size_t heterozygous_count() const;
    std::string row_string(std::size_t i) const;

    bool operator==(const GenotypeMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t sites_ = 0;
    std::vector<Genotype> data_;
};

struct HaplotypePair {
    std::vector<Allele> maternal;
    std::vector<Allele> paternal;

    const std::vector<Allele>& on(Side side) const { return side == Side::maternal ? maternal : paternal; }
    std::vector<Allele>& on(Side side) { return side == Side::maternal ? maternal : paternal; }
    bool operator==(const HaplotypePair&) const = default;
};

struct HaplotypeConfiguration {
    std::vector<HaplotypePair> individuals;

    HaplotypeConfiguration() = default;
    HaplotypeConfiguration(std::size_t n, std::size_t m);

    std::size_t size() const noexcept { return individuals.size(); }
    std::size_t sites() const noexcept { return individuals.empty() ? 0 : individuals.front().maternal.size(); }
    HaplotypePair& operator[](std::size_t i) { return individuals[i]; }
    const HaplotypePair& operator[](std::size_t i) const { return individuals[i]; }
    bool operator==(const HaplotypeConfiguration&) const = default;
};

std::string haplotype_string(const std::vector<Allele>& haplotype);
std::vector<Allele> haplotype_from_string(std::string_view text);

enum class Origin : std::uint8_t { grand_maternal, grand_paternal, free, infeasible };

struct OriginTrace {
    std::vector<Origin> origins;
};

// Per non-founder and side, the grandparental origin of every site. Founder
// entries stay empty.
struct InheritancePath {
    std::vector<std::array<std::vector<Origin>, 2>> origins;
};

// Closed site interval [s, t], 0-based, s < t.
struct Interval {
    std::size_t s = 0;
    std::size_t t = 0;
    bool operator==(const Interval&) const = default;
    auto operator<=>(const Interval&) const = default;
};

struct RecombinationEvent {
    std::size_t child = 0;  // individual index
    Side side = Side::maternal;
    Interval interval;
    bool operator==(const RecombinationEvent&) const = default;
    auto operator<=>(const RecombinationEvent&) const = default;
};

struct ValidationIssue {
    enum class Kind : std::uint8_t { structural, data };
    Kind kind = Kind::structural;
    int individual_id = 0;
    std::optional<std::size_t> site;  // 1-based
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;

    bool ok() const noexcept { return issues.empty(); }
    bool has_structural() const;
    bool has_data() const;
    // Throws StructuralError or DataError for the first issue, structural first.
    void throw_if_invalid() const;
};

ValidationReport validate_pedigree(std::span<const IndividualRecord> records, const GenotypeMatrix& genotypes);
ValidationReport validate_pedigree(const Pedigree& pedigree, const GenotypeMatrix& genotypes);

// Whether a child genotype can be produced by parents with the given genotypes at one site.
bool mendelian_possible(Genotype mother, Genotype father, Genotype child);

GenotypeMatrix genotypes_from_haplotypes(const HaplotypeConfiguration& config);
bool genotype_consistent(const HaplotypeConfiguration& config, const GenotypeMatrix& genotypes);
bool mendelian_consistent(const Pedigree& pedigree, const HaplotypeConfiguration& config);

// Throws std::invalid_argument if child is a founder.
OriginTrace origin_trace(const Pedigree& pedigree, const HaplotypeConfiguration& config, std::size_t child,
                         Side side);

// Alternations in the determined subsequence, or nullopt if any site is infeasible.
std::optional<int> trace_alternations(const OriginTrace& trace);

// Same count computed without materializing the trace.
std::optional<int> pair_recombinations(const Pedigree& pedigree, const HaplotypeConfiguration& config,
                                       std::size_t child, Side side);

std::optional<int> min_recombinations_for_config(const Pedigree& pedigree, const HaplotypeConfiguration& config);

// Throws std::invalid_argument when the determined origins flanking the gap
// after site q agree or do not exist.
Interval maximal_interval(const OriginTrace& trace, std::size_t q);

// Breakpoints of every (child, side) pair, each widened to its maximal interval.
std::vector<RecombinationEvent> recombination_events(const Pedigree& pedigree, const HaplotypeConfiguration& config);

int path_recombinations(const InheritancePath& path);
bool path_consistent(const Pedigree& pedigree, const HaplotypeConfiguration& config, const InheritancePath& path);

}  // namespace mrphase
