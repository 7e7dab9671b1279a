#include <doctest.h>

#include <cmath>
#include <random>

#include "corpus.hpp"
#include "symfold/energy.hpp"
#include "symfold/oracle.hpp"

using namespace symfold;

TEST_CASE("multiloop energy is linear in pairs and free bases") {
    LinearEnergyModel model;
    CHECK(model.multiloop_energy(3, 4) == 500);
    CHECK(model.multiloop_energy(0, 0) == model.multi_init());
    const Energy init = model.multi_init();
    for (int b1 = 0; b1 < 4; ++b1) {
        for (int n1 = 0; n1 < 4; ++n1) {
            CHECK(model.multiloop_energy(b1 + 2, n1 + 3) - init ==
                  (model.multiloop_energy(b1, n1) - init) + (model.multiloop_energy(2, 3) - init));
        }
    }
}

TEST_CASE("naive free energy of small structures") {
    LinearEnergyModel model;
    auto single = std::make_shared<const Ordering>(parse_ordering(
        std::make_shared<const StrandSystem>(parse_system("X GGGAAAACCC 1")), "X"));
    CHECK(naive_free_energy(SecondaryStructure(single, {}), model) == 0);
    CHECK(naive_free_energy(SecondaryStructure(single, {{1, 10}, {2, 9}, {3, 8}}), model) == -60);
    CHECK(naive_free_energy(SecondaryStructure(single, {{1, 4}}), model) == kInf);

    auto dimer = std::make_shared<const Ordering>(parse_ordering(
        std::make_shared<const StrandSystem>(parse_system("X AT 2")), "XX"));
    SecondaryStructure s(dimer, {{1, 4}});
    auto loops = loop_decomposition(s);
    Energy loop_sum = 0;
    for (const auto& l : loops) loop_sum += loop_energy(l, *dimer, model);
    CHECK(naive_free_energy(s, model) == loop_sum + model.assoc());
}

TEST_CASE("symmetry term") {
    CHECK(symmetry_penalty(1, 61.6) == 0.0);
    CHECK(std::abs(symmetry_penalty(2, 61.6) - 42.698) < 1e-3);

    LinearEnergyModel model;
    auto dimer = std::make_shared<const Ordering>(parse_ordering(
        std::make_shared<const StrandSystem>(parse_system("X GGAATTCC 2")), "XX"));
    // Two intermolecular duplex arms related by the half-turn.
    SecondaryStructure s(dimer, {{1, 16}, {2, 15}, {8, 9}, {7, 10}});
    auto b = free_energy(s, model);
    CHECK(b.rotational_symmetry == 2);
    CHECK(std::abs(b.symmetry - symmetry_penalty(2, model.kbt())) < 1e-12);
    CHECK(std::abs(b.total - (b.naive() + b.symmetry)) < 1e-12);
}

TEST_CASE("energy bookkeeping agrees with the independent loop evaluator") {
    LinearParams params;
    params.min_hairpin = 0;
    LinearEnergyModel model(params);
    EnumerationConfig cfg;
    cfg.min_hairpin = 0;
    auto corpus = testing::random_corpus(77, 40, 12);
    std::uint64_t checked = 0;
    for (const auto& entry : corpus) {
        for (const auto& o : circular_permutations(entry.system)) {
            auto op = std::make_shared<const Ordering>(o);
            enumerate_structures(o, cfg, [&](const PairList& pairs) {
                SecondaryStructure s(op, pairs);
                const auto b = free_energy(s, model);
                CHECK(b.naive() == oracle_naive_energy(o, pairs, model));
                CHECK(b.naive() <= b.total);
                CHECK(b.total - b.naive() == doctest::Approx(symmetry_penalty(rotational_symmetry(s), model.kbt())));
                ++checked;
            });
        }
    }
    CHECK(checked > 1000);
}

TEST_CASE("parameter files") {
    auto p = parse_params("# custom\nstack=-150\nkbt_centi=59.2\nmin_hairpin=0\n");
    CHECK(p.stack == -150);
    CHECK(p.kbt == doctest::Approx(59.2));
    CHECK(p.min_hairpin == 0);
    CHECK(p.hairpin_base == 300);
    CHECK_THROWS_AS(parse_params("stack=-1.5"), ParseError);
    CHECK_THROWS_AS(parse_params("mystery=3"), ParseError);
    CHECK_THROWS_AS(parse_params("kbt_centi=-1"), ParseError);
    CHECK_THROWS_AS(parse_params("stack"), ParseError);

    LinearEnergyModel a;
    LinearEnergyModel b(p);
    CHECK(a.fingerprint() != b.fingerprint());
}
