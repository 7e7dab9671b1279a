#include <doctest.h>

#include <set>

#include "corpus.hpp"
#include "symfold/oracle.hpp"

using namespace symfold;

namespace {

std::vector<PairList> collect(const Ordering& o, const EnumerationConfig& cfg) {
    std::vector<PairList> out;
    enumerate_structures(o, cfg, [&](const PairList& p) {
        auto sorted = p;
        std::sort(sorted.begin(), sorted.end());
        out.push_back(sorted);
    });
    return out;
}

Ordering only_ordering(const std::string& text) {
    auto system = std::make_shared<const StrandSystem>(parse_system(text));
    return circular_permutations(system).front();
}

}  // namespace

TEST_CASE("enumeration of tiny single strands") {
    EnumerationConfig cfg;
    auto a = collect(only_ordering("X AAAA 1"), cfg);
    REQUIRE(a.size() == 1);
    CHECK(a[0].empty());

    auto b = collect(only_ordering("X ACGU 1"), cfg);
    REQUIRE(b.size() == 1);
    CHECK(b[0].empty());

    cfg.min_hairpin = 0;
    CHECK(collect(only_ordering("X ACGU 1"), cfg).size() == 4);
}

TEST_CASE("the two enumerators agree") {
    EnumerationConfig cfg;
    auto at = only_ordering("X AT 2");
    auto streamed = collect(at, cfg);
    auto filtered = enumerate_by_subsets(at, cfg);
    for (auto& p : filtered) std::sort(p.begin(), p.end());
    CHECK(std::set<PairList>(streamed.begin(), streamed.end()) == std::set<PairList>(filtered.begin(), filtered.end()));
    CHECK(streamed.size() == 3);

    for (int hairpin : {0, 3}) {
        cfg.min_hairpin = hairpin;
        for (const auto& entry : testing::random_corpus(31 + static_cast<std::uint32_t>(hairpin), 80, 8)) {
            for (const auto& o : circular_permutations(entry.system)) {
                auto s = collect(o, cfg);
                auto f = enumerate_by_subsets(o, cfg);
                for (auto& p : f) std::sort(p.begin(), p.end());
                std::set<PairList> ss(s.begin(), s.end());
                CHECK(ss.size() == s.size());
                CHECK(ss == std::set<PairList>(f.begin(), f.end()));
            }
        }
    }
}

TEST_CASE("enumeration never repeats a structure") {
    EnumerationConfig cfg;
    for (const auto& entry : testing::random_corpus(2, 40, 16)) {
        for (const auto& o : circular_permutations(entry.system)) {
            auto all = collect(o, cfg);
            CHECK(std::set<PairList>(all.begin(), all.end()).size() == all.size());
        }
    }
}

TEST_CASE("guard rails") {
    EnumerationConfig cfg;
    cfg.max_n = 6;
    CHECK_THROWS_AS(collect(only_ordering("X ACGTACGT 1"), cfg), std::length_error);
    EnumerationConfig capped;
    capped.max_structures = 2;
    capped.min_hairpin = 0;
    CHECK_THROWS_AS(collect(only_ordering("X GGGCCC 1"), capped), std::length_error);
}

TEST_CASE("brute-force minimum of trivial and infeasible systems") {
    LinearEnergyModel model;
    EnumerationConfig cfg;
    auto trivial = brute_mfe(std::make_shared<const StrandSystem>(parse_system("X AAAA 1")), model, cfg);
    CHECK(trivial.energy == 0.0);
    CHECK(trivial.pairs.empty());
    CHECK_THROWS_AS(brute_mfe(std::make_shared<const StrandSystem>(parse_system("X AA 1\nY GG 1")), model, cfg),
                    InfeasibleError);
}

TEST_CASE("oracle symmetry counts fixing rotations") {
    auto system = std::make_shared<const StrandSystem>(parse_system("X GGAATTCC 2"));
    Ordering o(system, {0, 0});
    CHECK(oracle_symmetry(o, {{1, 16}, {2, 15}, {8, 9}, {7, 10}}) == 2);
    CHECK(oracle_symmetry(o, {{1, 16}, {2, 15}}) == 1);
    CHECK(oracle_symmetry(o, {}) == 2);
}
