#include "mrphase/pedigree.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "mrphase/errors.hpp"

namespace mrphase {

std::string_view side_name(Side side) { return side == Side::maternal ? "maternal" : "paternal"; }

std::optional<Side> side_from_name(std::string_view name) {
    if (name == "maternal") return Side::maternal;
    if (name == "paternal") return Side::paternal;
    return std::nullopt;
}

namespace {

ValidationIssue structural(int id, std::string message) {
    return ValidationIssue{ValidationIssue::Kind::structural, id, std::nullopt, std::move(message)};
}

// Checks ids, parent references and acyclicity. Returns every issue found.
std::vector<ValidationIssue> structural_issues(std::span<const IndividualRecord> records) {
    std::vector<ValidationIssue> issues;
    std::unordered_map<int, std::size_t> index;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        if (r.id <= 0) {
            issues.push_back(structural(r.id, "individual id must be a positive integer"));
            continue;
        }
        if (!index.emplace(r.id, i).second)
            issues.push_back(structural(r.id, "duplicate individual id " + std::to_string(r.id)));
    }
    bool references_ok = true;
    for (const auto& r : records) {
        if ((r.mother == 0) != (r.father == 0)) {
            issues.push_back(structural(r.id, "non-diploid individual " + std::to_string(r.id) +
                                                  ": exactly one parent listed"));
            references_ok = false;
            continue;
        }
        if (r.mother == 0) continue;
        if (r.mother == r.father) {
            issues.push_back(structural(r.id, "individual " + std::to_string(r.id) + " lists the same parent twice"));
            references_ok = false;
        }
        for (int p : {r.mother, r.father}) {
            if (!index.count(p)) {
                issues.push_back(structural(r.id, "individual " + std::to_string(r.id) + " references unknown parent " +
                                                      std::to_string(p)));
                references_ok = false;
            } else if (p == r.id) {
                issues.push_back(structural(r.id, "individual " + std::to_string(r.id) + " is its own parent"));
                references_ok = false;
            }
        }
    }
    if (!references_ok || !issues.empty()) return issues;

    // Kahn's algorithm over parent -> child arcs.
    std::vector<std::size_t> pending(records.size(), 0);
    std::vector<std::vector<std::size_t>> kids(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (records[i].mother == 0) continue;
        pending[i] = 2;
        kids[index.at(records[i].mother)].push_back(i);
        kids[index.at(records[i].father)].push_back(i);
    }
    std::vector<std::size_t> ready;
    for (std::size_t i = 0; i < records.size(); ++i)
        if (pending[i] == 0) ready.push_back(i);
    std::size_t visited = 0;
    while (!ready.empty()) {
        std::size_t i = ready.back();
        ready.pop_back();
        ++visited;
        for (std::size_t c : kids[i])
            if (--pending[c] == 0) ready.push_back(c);
    }
    if (visited != records.size()) {
        for (std::size_t i = 0; i < records.size(); ++i) {
            if (pending[i] != 0) {
                issues.push_back(structural(records[i].id, "pedigree contains a cycle through individual " +
                                                               std::to_string(records[i].id)));
                break;
            }
        }
    }
    return issues;
}

void data_issues(const Pedigree& pedigree, const GenotypeMatrix& genotypes, std::vector<ValidationIssue>& issues) {
    for (std::size_t j = 0; j < pedigree.size(); ++j) {
        if (pedigree.is_founder(j)) continue;
        std::size_t mother = *pedigree[j].mother;
        std::size_t father = *pedigree[j].father;
        for (std::size_t s = 0; s < genotypes.sites(); ++s) {
            if (mendelian_possible(genotypes(mother, s), genotypes(father, s), genotypes(j, s))) continue;
            issues.push_back(ValidationIssue{ValidationIssue::Kind::data, pedigree[j].id, s + 1,
                                             "Mendelian-impossible genotype at individual " +
                                                 std::to_string(pedigree[j].id) + ", site " + std::to_string(s + 1)});
        }
    }
}

}  // namespace

Pedigree Pedigree::from_records(std::span<const IndividualRecord> records) {
    auto issues = structural_issues(records);
    if (!issues.empty()) throw StructuralError(issues.front().message, issues.front().individual_id);

    Pedigree p;
    p.individuals_.resize(records.size());
    p.children_.resize(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) p.index_.emplace(records[i].id, i);
    for (std::size_t i = 0; i < records.size(); ++i) {
        auto& ind = p.individuals_[i];
        ind.id = records[i].id;
        if (records[i].mother != 0) {
            ind.mother = p.index_.at(records[i].mother);
            ind.father = p.index_.at(records[i].father);
            p.children_[*ind.mother].push_back(i);
            p.children_[*ind.father].push_back(i);
        }
    }
    return p;
}

std::optional<std::size_t> Pedigree::index_of(int id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> Pedigree::parent(std::size_t i, Side side) const {
    return side == Side::maternal ? individuals_[i].mother : individuals_[i].father;
}

std::size_t Pedigree::founder_count() const {
    return static_cast<std::size_t>(
        std::count_if(individuals_.begin(), individuals_.end(), [](const Individual& x) { return !x.mother; }));
}

std::vector<IndividualRecord> Pedigree::records() const {
    std::vector<IndividualRecord> out;
    out.reserve(individuals_.size());
    for (const auto& ind : individuals_) {
        IndividualRecord r{ind.id, 0, 0};
        if (ind.mother) {
            r.mother = individuals_[*ind.mother].id;
            r.father = individuals_[*ind.father].id;
        }
        out.push_back(r);
    }
    return out;
}

GenotypeMatrix::GenotypeMatrix(std::size_t rows, std::size_t sites)
    : rows_(rows), sites_(sites), data_(rows * sites, 0) {}

GenotypeMatrix::GenotypeMatrix(const std::vector<std::vector<Genotype>>& rows) {
    rows_ = rows.size();
    sites_ = rows.empty() ? 0 : rows.front().size();
    data_.reserve(rows_ * sites_);
    for (const auto& row : rows) {
        if (row.size() != sites_) throw std::invalid_argument("genotype rows have different lengths");
        for (Genotype g : row) {
            if (g > kHeterozygous) throw std::invalid_argument("genotype value outside {0,1,2}");
            data_.push_back(g);
        }
    }
}

GenotypeMatrix GenotypeMatrix::from_strings(const std::vector<std::string>& rows) {
    std::vector<std::vector<Genotype>> values;
    for (const auto& row : rows) {
        std::vector<Genotype> v;
        for (char c : row) {
            if (c < '0' || c > '2') throw std::invalid_argument("genotype character outside {0,1,2}");
            v.push_back(static_cast<Genotype>(c - '0'));
        }
        values.push_back(std::move(v));
    }
    return GenotypeMatrix(values);
}

void GenotypeMatrix::set(std::size_t i, std::size_t s, Genotype g) {
    if (g > kHeterozygous) throw std::invalid_argument("genotype value outside {0,1,2}");
    data_[i * sites_ + s] = g;
}

std::vector<std::size_t> GenotypeMatrix::het_sites(std::size_t i) const {
    std::vector<std::size_t> out;
    for (std::size_t s = 0; s < sites_; ++s)
        if (het(i, s)) out.push_back(s);
    return out;
}

std::size_t GenotypeMatrix::heterozygous_count() const {
    return static_cast<std::size_t>(std::count(data_.begin(), data_.end(), kHeterozygous));
}

std::string GenotypeMatrix::row_string(std::size_t i) const {
    std::string out;
    out.reserve(sites_);
    for (std::size_t s = 0; s < sites_; ++s) out.push_back(static_cast<char>('0' + (*this)(i, s)));
    return out;
}

HaplotypeConfiguration::HaplotypeConfiguration(std::size_t n, std::size_t m)
    : individuals(n, HaplotypePair{std::vector<Allele>(m, 0), std::vector<Allele>(m, 0)}) {}

std::string haplotype_string(const std::vector<Allele>& haplotype) {
    std::string out;
    out.reserve(haplotype.size());
    for (Allele a : haplotype) out.push_back(static_cast<char>('0' + a));
    return out;
}

std::vector<Allele> haplotype_from_string(std::string_view text) {
    std::vector<Allele> out;
    out.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1') throw std::invalid_argument("haplotype character outside {0,1}");
        out.push_back(static_cast<Allele>(c - '0'));
    }
    return out;
}

bool ValidationReport::has_structural() const {
    return std::any_of(issues.begin(), issues.end(),
                       [](const ValidationIssue& x) { return x.kind == ValidationIssue::Kind::structural; });
}

bool ValidationReport::has_data() const {
    return std::any_of(issues.begin(), issues.end(),
                       [](const ValidationIssue& x) { return x.kind == ValidationIssue::Kind::data; });
}

void ValidationReport::throw_if_invalid() const {
    for (const auto& x : issues)
        if (x.kind == ValidationIssue::Kind::structural) throw StructuralError(x.message, x.individual_id);
    for (const auto& x : issues)
        if (x.kind == ValidationIssue::Kind::data) throw DataError(x.message, x.individual_id, x.site.value_or(0));
}

ValidationReport validate_pedigree(std::span<const IndividualRecord> records, const GenotypeMatrix& genotypes) {
    ValidationReport report;
    if (records.size() != genotypes.rows()) {
        report.issues.push_back(structural(0, "pedigree has " + std::to_string(records.size()) +
                                                  " individuals but genotype matrix has " +
                                                  std::to_string(genotypes.rows()) + " rows"));
        return report;
    }
    report.issues = structural_issues(records);
    if (!report.issues.empty()) return report;
    data_issues(Pedigree::from_records(records), genotypes, report.issues);
    return report;
}

ValidationReport validate_pedigree(const Pedigree& pedigree, const GenotypeMatrix& genotypes) {
    auto records = pedigree.records();
    return validate_pedigree(records, genotypes);
}

bool mendelian_possible(Genotype mother, Genotype father, Genotype child) {
    auto carries = [](Genotype g, Allele a) { return g == kHeterozygous || g == a; };
    if (child == kHeterozygous)
        return (carries(mother, 0) && carries(father, 1)) || (carries(mother, 1) && carries(father, 0));
    return carries(mother, child) && carries(father, child);
}

GenotypeMatrix genotypes_from_haplotypes(const HaplotypeConfiguration& config) {
    GenotypeMatrix g(config.size(), config.sites());
    for (std::size_t i = 0; i < config.size(); ++i)
        for (std::size_t s = 0; s < config.sites(); ++s) {
            Allele a = config[i].maternal[s];
            Allele b = config[i].paternal[s];
            g.set(i, s, a == b ? a : kHeterozygous);
        }
    return g;
}

bool genotype_consistent(const HaplotypeConfiguration& config, const GenotypeMatrix& genotypes) {
    if (config.size() != genotypes.rows()) return false;
    for (std::size_t i = 0; i < config.size(); ++i) {
        if (config[i].maternal.size() != genotypes.sites() || config[i].paternal.size() != genotypes.sites())
            return false;
        for (std::size_t s = 0; s < genotypes.sites(); ++s) {
            Allele a = config[i].maternal[s];
            Allele b = config[i].paternal[s];
            if (a > 1 || b > 1) return false;
            Genotype g = genotypes(i, s);
            if (g == kHeterozygous ? a == b : (a != g || b != g)) return false;
        }
    }
    return true;
}

bool mendelian_consistent(const Pedigree& pedigree, const HaplotypeConfiguration& config) {
    for (std::size_t j = 0; j < pedigree.size(); ++j) {
        if (pedigree.is_founder(j)) continue;
        for (Side side : {Side::maternal, Side::paternal})
            if (!pair_recombinations(pedigree, config, j, side)) return false;
    }
    return true;
}

OriginTrace origin_trace(const Pedigree& pedigree, const HaplotypeConfiguration& config, std::size_t child,
                         Side side) {
    auto parent = pedigree.parent(child, side);
    if (!parent) throw std::invalid_argument("not a non-founder: individual " + std::to_string(pedigree[child].id));
    const auto& inherited = config[child].on(side);
    const auto& pm = config[*parent].maternal;
    const auto& pp = config[*parent].paternal;
    OriginTrace trace;
    trace.origins.reserve(inherited.size());
    for (std::size_t s = 0; s < inherited.size(); ++s) {
        if (pm[s] != pp[s])
            trace.origins.push_back(inherited[s] == pm[s] ? Origin::grand_maternal : Origin::grand_paternal);
        else
            trace.origins.push_back(inherited[s] == pm[s] ? Origin::free : Origin::infeasible);
    }
    return trace;
}

std::optional<int> trace_alternations(const OriginTrace& trace) {
    int count = 0;
    std::optional<Origin> last;
    for (Origin o : trace.origins) {
        if (o == Origin::infeasible) return std::nullopt;
        if (o == Origin::free) continue;
        if (last && *last != o) ++count;
        last = o;
    }
    return count;
}

std::optional<int> pair_recombinations(const Pedigree& pedigree, const HaplotypeConfiguration& config,
                                       std::size_t child, Side side) {
    auto parent = pedigree.parent(child, side);
    if (!parent) throw std::invalid_argument("not a non-founder: individual " + std::to_string(pedigree[child].id));
    const auto& inherited = config[child].on(side);
    const auto& pm = config[*parent].maternal;
    const auto& pp = config[*parent].paternal;
    int count = 0;
    int last = -1;
    for (std::size_t s = 0; s < inherited.size(); ++s) {
        if (pm[s] == pp[s]) {
            if (inherited[s] != pm[s]) return std::nullopt;
            continue;
        }
        int origin = inherited[s] == pm[s] ? 0 : 1;
        if (last >= 0 && last != origin) ++count;
        last = origin;
    }
    return count;
}

std::optional<int> min_recombinations_for_config(const Pedigree& pedigree, const HaplotypeConfiguration& config) {
    int total = 0;
    for (std::size_t j = 0; j < pedigree.size(); ++j) {
        if (pedigree.is_founder(j)) continue;
        for (Side side : {Side::maternal, Side::paternal}) {
            auto r = pair_recombinations(pedigree, config, j, side);
            if (!r) return std::nullopt;
            total += *r;
        }
    }
    return total;
}

Interval maximal_interval(const OriginTrace& trace, std::size_t q) {
    const auto& o = trace.origins;
    auto determined = [&](std::size_t s) { return o[s] == Origin::grand_maternal || o[s] == Origin::grand_paternal; };
    std::optional<std::size_t> left;
    for (std::size_t s = std::min(q + 1, o.size()); s-- > 0;)
        if (determined(s)) {
            left = s;
            break;
        }
    std::optional<std::size_t> right;
    for (std::size_t s = q + 1; s < o.size(); ++s)
        if (determined(s)) {
            right = s;
            break;
        }
    if (!left || !right || o[*left] == o[*right])
        throw std::invalid_argument("no recombination at site gap " + std::to_string(q + 1));
    return Interval{*left, *right};
}

std::vector<RecombinationEvent> recombination_events(const Pedigree& pedigree, const HaplotypeConfiguration& config) {
    std::vector<RecombinationEvent> events;
    for (std::size_t j = 0; j < pedigree.size(); ++j) {
        if (pedigree.is_founder(j)) continue;
        for (Side side : {Side::maternal, Side::paternal}) {
            auto trace = origin_trace(pedigree, config, j, side);
            std::optional<std::size_t> last;
            for (std::size_t s = 0; s < trace.origins.size(); ++s) {
                Origin o = trace.origins[s];
                if (o == Origin::infeasible) throw std::invalid_argument("configuration is not Mendelian-consistent");
                if (o == Origin::free) continue;
                if (last && trace.origins[*last] != o) events.push_back(RecombinationEvent{j, side, Interval{*last, s}});
                last = s;
            }
        }
    }
    return events;
}

int path_recombinations(const InheritancePath& path) {
    int total = 0;
    for (const auto& sides : path.origins)
        for (const auto& seq : sides)
            for (std::size_t s = 1; s < seq.size(); ++s)
                if (seq[s] != seq[s - 1]) ++total;
    return total;
}

bool path_consistent(const Pedigree& pedigree, const HaplotypeConfiguration& config, const InheritancePath& path) {
    if (path.origins.size() != pedigree.size()) return false;
    for (std::size_t j = 0; j < pedigree.size(); ++j) {
        for (Side side : {Side::maternal, Side::paternal}) {
            const auto& seq = path.origins[j][static_cast<std::size_t>(side)];
            if (pedigree.is_founder(j)) {
                if (!seq.empty()) return false;
                continue;
            }
            if (seq.size() != config.sites()) return false;
            const auto& parent = config[*pedigree.parent(j, side)];
            for (std::size_t s = 0; s < seq.size(); ++s) {
                if (seq[s] != Origin::grand_maternal && seq[s] != Origin::grand_paternal) return false;
                const auto& source = seq[s] == Origin::grand_maternal ? parent.maternal : parent.paternal;
                if (config[j].on(side)[s] != source[s]) return false;
            }
        }
    }
    return true;
}

}  // namespace mrphase
