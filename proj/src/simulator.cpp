#include "mrphase/simulator.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>

namespace mrphase {

namespace {

// std distributions are implementation-defined; this keeps instances
// identical across standard libraries.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    for (;;) {
        std::uint64_t x = rng();
        if (x < limit) return x % n;
    }
}

}  // namespace

std::size_t default_generations(std::size_t individuals) { return individuals < 5 ? 2 : 3; }

SimulatedInstance simulate(const SimulationSpec& spec) {
    const std::size_t n = spec.individuals;
    const std::size_t m = spec.sites;
    const std::size_t g = spec.generations == 0 ? default_generations(n) : spec.generations;
    if (n == 0 || m == 0) throw std::invalid_argument("impossible structure: need at least one individual and site");
    const std::size_t minimum = g == 1 ? 1 : 2 * (g - 1) + 1;
    if (n < minimum)
        throw std::invalid_argument("impossible structure: " + std::to_string(n) + " individuals cannot fill " +
                                    std::to_string(g) + " diploid generations (need at least " +
                                    std::to_string(minimum) + ")");
    std::mt19937_64 rng(spec.seed);

    std::vector<std::size_t> sizes(g, 2);
    sizes.back() = 1;
    if (g == 1) sizes[0] = 1;
    for (std::size_t extra = n - minimum; extra > 0; --extra) ++sizes[uniform_below(rng, g)];

    std::vector<IndividualRecord> records;
    std::vector<std::size_t> previous;
    for (std::size_t gen = 0; gen < g; ++gen) {
        std::vector<std::size_t> current;
        for (std::size_t k = 0; k < sizes[gen]; ++k) {
            IndividualRecord r{static_cast<int>(records.size() + 1), 0, 0};
            if (gen > 0) {
                std::size_t a = uniform_below(rng, previous.size());
                std::size_t b = uniform_below(rng, previous.size() - 1);
                if (b >= a) ++b;
                r.mother = records[previous[a]].id;
                r.father = records[previous[b]].id;
            }
            current.push_back(records.size());
            records.push_back(r);
        }
        previous = std::move(current);
    }

    SimulatedInstance out;
    out.pedigree = Pedigree::from_records(records);
    const auto& ped = out.pedigree;
    auto& truth = out.truth;
    truth.config = HaplotypeConfiguration(n, m);
    truth.path.origins.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!ped.is_founder(i)) continue;
        for (std::size_t s = 0; s < m; ++s) {
            truth.config[i].maternal[s] = static_cast<Allele>(rng() & 1U);
            truth.config[i].paternal[s] = static_cast<Allele>(rng() & 1U);
        }
    }

    std::vector<std::size_t> children;
    for (std::size_t i = 0; i < n; ++i)
        if (!ped.is_founder(i)) children.push_back(i);
    const std::uint64_t gaps = m - 1;
    const std::uint64_t slots = children.size() * 2 * gaps;
    if (spec.planted_recombinations > slots)
        throw std::invalid_argument("cannot place " + std::to_string(spec.planted_recombinations) +
                                    " recombinations in " + std::to_string(slots) + " (child, side, gap) slots");
    // Floyd's sampling of distinct slots.
    std::set<std::uint64_t> chosen;
    for (std::uint64_t j = slots - spec.planted_recombinations; j < slots; ++j) {
        std::uint64_t x = uniform_below(rng, j + 1);
        if (!chosen.insert(x).second) chosen.insert(j);
    }
    std::set<std::tuple<std::size_t, int, std::size_t>> breaks;
    for (std::uint64_t slot : chosen) {
        std::size_t child = children[slot / (2 * gaps)];
        int side = static_cast<int>((slot / gaps) % 2);
        std::size_t gap = slot % gaps;
        breaks.insert({child, side, gap});
        truth.planted.push_back(RecombinationEvent{child, static_cast<Side>(side), Interval{gap, gap + 1}});
    }
    std::sort(truth.planted.begin(), truth.planted.end());

    for (std::size_t j : children) {
        for (int side = 0; side < 2; ++side) {
            const auto& parent = truth.config[*ped.parent(j, static_cast<Side>(side))];
            auto& seq = truth.path.origins[j][side];
            seq.resize(m);
            int origin = static_cast<int>(rng() & 1U);
            for (std::size_t s = 0; s < m; ++s) {
                if (s > 0 && breaks.count({j, side, s - 1})) origin ^= 1;
                seq[s] = origin == 0 ? Origin::grand_maternal : Origin::grand_paternal;
                truth.config[j].on(static_cast<Side>(side))[s] = origin == 0 ? parent.maternal[s] : parent.paternal[s];
            }
        }
    }
    out.genotypes = genotypes_from_haplotypes(truth.config);
    return out;
}

}  // namespace mrphase
