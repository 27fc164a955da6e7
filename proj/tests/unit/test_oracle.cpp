#include <algorithm>
#include <random>

#include "brute.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "mrphase/errors.hpp"
#include "mrphase/oracle.hpp"
#include "mrphase/simulator.hpp"

using namespace mrphase;
using mrphase::testing::make_instance;

TEST_CASE("an all-homozygous pedigree scores zero after one configuration") {
    auto inst = make_instance({{1, 0, 0, "01"}, {2, 0, 0, "01"}, {3, 1, 2, "01"}});
    auto r = oracle_min_recombinations(inst.pedigree, inst.genotypes);
    CHECK(r.min_k == std::optional<int>{0});
    CHECK(r.configurations_scanned == 1);
}

TEST_CASE("the two-recombination trio: the oracle finds at most two") {
    auto ped = testing::trio_pedigree();
    auto config = testing::two_recombination_trio();
    auto genotypes = genotypes_from_haplotypes(config);
    auto r = oracle_min_recombinations(ped, genotypes);
    REQUIRE(r.min_k.has_value());
    CHECK(*r.min_k <= 2);
    CHECK(min_recombinations_for_config(ped, config) == std::optional<int>{2});
    CHECK(r.configurations_scanned == (std::uint64_t{1} << genotypes.heterozygous_count()));
    CHECK(min_recombinations_for_config(ped, r.argmin) == r.min_k);
}

TEST_CASE("random trios agree with an independent nested-loop enumeration") {
    std::mt19937_64 rng(23);
    auto ped = testing::trio_pedigree();
    for (int trial = 0; trial < 60; ++trial) {
        HaplotypeConfiguration truth(3, 3);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t s = 0; s < 3; ++s) {
                truth[i].maternal[s] = rng() & 1U;
                truth[i].paternal[s] = rng() & 1U;
            }
        for (Side side : {Side::maternal, Side::paternal}) {
            const auto& parent = truth[*ped.parent(2, side)];
            for (std::size_t s = 0; s < 3; ++s) truth[2].on(side)[s] = (rng() & 1U) ? parent.paternal[s] : parent.maternal[s];
        }
        auto genotypes = genotypes_from_haplotypes(truth);
        auto r = oracle_min_recombinations(ped, genotypes);
        CHECK(r.min_k == testing::brute_min_recombinations(ped, genotypes));
    }
}

TEST_CASE("the oracle refuses instances over its heterozygosity budget") {
    std::string row(21, '2');
    auto inst = make_instance({{1, 0, 0, row}});
    try {
        oracle_min_recombinations(inst.pedigree, inst.genotypes);
        FAIL("expected BudgetExceeded");
    } catch (const BudgetExceeded& e) {
        CHECK(e.size() == 21);
        CHECK(e.budget() == kDefaultHetBudget);
        CHECK(std::string(e.what()).find("21") != std::string::npos);
    }
}

TEST_CASE("the oracle is deterministic") {
    auto inst = simulate(SimulationSpec{5, 4, 2, 3, 8});
    auto a = oracle_min_recombinations(inst.pedigree, inst.genotypes);
    auto b = oracle_min_recombinations(inst.pedigree, inst.genotypes);
    CHECK(a.min_k == b.min_k);
    CHECK(a.argmin == b.argmin);
    CHECK(a.configurations_scanned == b.configurations_scanned);
}

TEST_CASE("for_each_consistent_configuration visits only consistent configurations") {
    auto inst = simulate(SimulationSpec{4, 4, 1, 2, 12});
    std::size_t visits = 0;
    for_each_consistent_configuration(inst.pedigree, inst.genotypes, [&](const HaplotypeConfiguration& c, int score) {
        ++visits;
        CHECK(genotype_consistent(c, inst.genotypes));
        CHECK(mendelian_consistent(inst.pedigree, c));
        CHECK(min_recombinations_for_config(inst.pedigree, c) == std::optional<int>{score});
    });
    CHECK(visits > 0);
}

TEST_CASE("enumerate_satisfying_colorings with no gray vertex yields one coloring") {
    auto inst = make_instance({{1, 0, 0, "0011"}});
    auto g = build_mr_graph(inst.pedigree, inst.genotypes);
    CHECK(enumerate_satisfying_colorings(g).size() == 1);
}

TEST_CASE("one red parity set over three gray vertices keeps half the assignments") {
    auto inst = make_instance({{1, 0, 0, "222"}});
    MRGraphBuilder builder(inst.pedigree, inst.genotypes);
    builder.mr_vertex(0, 0, 2);
    auto g = std::move(builder).finish();
    REQUIRE(g.gray_vertices().size() == 3);
    auto colorings = enumerate_satisfying_colorings(g);
    CHECK(colorings.size() == 4);
    for (const auto& c : colorings) CHECK(all_parity_satisfied(g, c));
}

TEST_CASE("enumerate_satisfying_colorings respects its budget") {
    std::string row(23, '2');
    auto inst = make_instance({{1, 0, 0, row}});
    auto g = build_mr_graph(inst.pedigree, inst.genotypes);
    CHECK_THROWS_AS(enumerate_satisfying_colorings(g), BudgetExceeded);
}

TEST_CASE("the best satisfying coloring matches the oracle minimum") {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        auto inst = simulate(SimulationSpec{5, 4, seed % 4, 3, seed});
        auto g = build_mr_graph(inst.pedigree, inst.genotypes);
        std::size_t best = SIZE_MAX;
        for (const auto& c : enumerate_satisfying_colorings(g)) best = std::min(best, disagreeing_edges(g, c).size());
        auto r = oracle_min_recombinations(inst.pedigree, inst.genotypes);
        CHECK(std::optional<int>(static_cast<int>(best)) == r.min_k);
    }
}
