#include "doctest.h"
#include "mrphase/errors.hpp"
#include "mrphase/instance_io.hpp"
#include "mrphase/simulator.hpp"

using namespace mrphase;

TEST_CASE("a minimal trio file parses") {
    auto inst = parse_instance("#MRPHASE v1\n3 4\n1 0 0 0120\n2 0 0 2220\n3 1 2 0220\n");
    CHECK(inst.pedigree.size() == 3);
    CHECK(inst.genotypes.sites() == 4);
    CHECK(inst.genotypes.row_string(2) == "0220");
    CHECK(inst.pedigree.parent(2, Side::paternal) == std::optional<std::size_t>{0});
    CHECK(inst.pedigree.parent(2, Side::maternal) == std::optional<std::size_t>{1});
}

TEST_CASE("comments and blank lines are skipped after the header") {
    auto inst = parse_instance("#MRPHASE v1\n# sizes\n\n2 2\n1 0 0 00\n\n# founders only\n2 0 0 22\n");
    CHECK(inst.pedigree.size() == 2);
    CHECK(inst.genotypes.row_string(1) == "22");
}

TEST_CASE("an out-of-alphabet genotype names its line and column") {
    try {
        parse_instance("#MRPHASE v1\n2 3\n1 0 0 000\n2 0 0 013\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 4);
        CHECK(e.column() == 9);
        CHECK(std::string(e.what()).find("line 4, column 9") == 0);
    }
}

TEST_CASE("malformed headers, counts and rows are parse errors") {
    CHECK_THROWS_AS(parse_instance(""), ParseError);
    CHECK_THROWS_AS(parse_instance("#MRPHASE v2\n1 1\n1 0 0 0\n"), ParseError);
    CHECK_THROWS_AS(parse_instance("#MRPHASE v1\n1\n1 0 0 0\n"), ParseError);
    CHECK_THROWS_AS(parse_instance("#MRPHASE v1\n1 2\n1 0 0 0\n"), ParseError);
    CHECK_THROWS_AS(parse_instance("#MRPHASE v1\n2 1\n1 0 0 0\n"), ParseError);
    CHECK_THROWS_AS(parse_instance("#MRPHASE v1\n1 1\n1 0 0 0\n2 0 0 0\n"), ParseError);
    CHECK_THROWS_AS(parse_instance("#MRPHASE v1\n1 1\nx 0 0 0\n"), ParseError);
}

TEST_CASE("a child with only a mother is a structural error") {
    try {
        parse_instance("#MRPHASE v1\n3 1\n1 0 0 0\n2 0 0 0\n3 0 2 0\n");
        FAIL("expected StructuralError");
    } catch (const StructuralError& e) {
        CHECK(std::string(e.what()).find("non-diploid") != std::string::npos);
        CHECK(e.individual_id() == 3);
    }
}

TEST_CASE("Mendelian-impossible genotypes are data errors") {
    try {
        parse_instance("#MRPHASE v1\n3 2\n1 0 0 00\n2 0 0 01\n3 1 2 12\n");
        FAIL("expected DataError");
    } catch (const DataError& e) {
        CHECK(e.individual_id() == 3);
        CHECK(e.site() == 1);
    }
}

TEST_CASE("parents may be listed after their children") {
    auto inst = parse_instance("#MRPHASE v1\n3 1\n3 1 2 2\n1 0 0 2\n2 0 0 0\n");
    CHECK(inst.pedigree.size() == 3);
    CHECK_FALSE(inst.pedigree.is_founder(0));
}

TEST_CASE("serialize then parse reproduces simulator outputs") {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        auto sim = simulate(SimulationSpec{3 + seed % 6, 2 + seed % 6, seed % 3, 0, seed});
        auto text = serialize_instance(sim.pedigree, sim.genotypes);
        auto back = parse_instance(text);
        CHECK(back.genotypes == sim.genotypes);
        CHECK(back.pedigree.records() == sim.pedigree.records());
        CHECK(serialize_instance(back.pedigree, back.genotypes) == text);
    }
}

TEST_CASE("truth sidecars round trip") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        auto sim = simulate(SimulationSpec{5, 6, seed % 4, 0, seed});
        auto text = serialize_truth(sim);
        auto back = parse_truth(text);
        CHECK(back.truth.config == sim.truth.config);
        CHECK(back.truth.planted == sim.truth.planted);
        CHECK(path_consistent(back.pedigree, back.truth.config, back.truth.path));
        CHECK(path_recombinations(back.truth.path) == static_cast<int>(sim.truth.planted.size()));
        CHECK(serialize_truth(back) == text);
    }
}
