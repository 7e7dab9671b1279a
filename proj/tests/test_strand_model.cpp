#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "corpus.hpp"
#include "symfold/strand_model.hpp"

using namespace symfold;

TEST_CASE("parse_system reads types, repetitions and lengths") {
    auto s = parse_system("X ACGT 2");
    CHECK(s.type_count() == 1);
    CHECK(s.types()[0].repetitions == 2);
    CHECK(s.strand_count() == 2);
    CHECK(s.total_length() == 8);

    auto t = parse_system("X AT 1\nY GC 1");
    CHECK(t.type_count() == 2);
    CHECK(t.strand_count() == 2);
    CHECK(t.total_length() == 4);
}

TEST_CASE("equal sequences under different names merge into one type") {
    auto s = parse_system("X AT 1\nZ AT 1");
    REQUIRE(s.type_count() == 1);
    CHECK(s.types()[0].repetitions == 2);

    // Type count must equal the number of distinct sequences found by a direct scan.
    std::mt19937 rng(5);
    for (int round = 0; round < 200; ++round) {
        std::string text;
        std::set<std::string> distinct;
        const int lines = 1 + static_cast<int>(rng() % 5);
        for (int k = 0; k < lines; ++k) {
            std::string seq = testing::random_sequence(rng, 1 + static_cast<int>(rng() % 2), false);
            distinct.insert(seq);
            text += "N" + std::to_string(k) + " " + seq + " 1\n";
        }
        CHECK(parse_system(text).type_count() == distinct.size());
    }

    SystemOptions keep;
    keep.merge_equal_sequences = false;
    CHECK(parse_system("X AT 1\nZ AT 1", keep).type_count() == 2);
}

TEST_CASE("malformed strand files are rejected") {
    CHECK_THROWS_AS(parse_system("X ACGN 1"), ParseError);
    CHECK_THROWS_AS(parse_system("X ACGT 1\nY ACGU 1"), ParseError);
    CHECK_THROWS_AS(parse_system("X ACGT 0"), ParseError);
    CHECK_THROWS_AS(parse_system("X ACGT"), ParseError);
    CHECK_THROWS_AS(parse_system("X ACGT two"), ParseError);
    CHECK_THROWS_AS(parse_system("# only a comment\n"), ParseError);
    CHECK_THROWS_AS(parse_system("X AC 1\nX GG 1"), ParseError);
    SystemOptions keep;
    keep.merge_equal_sequences = false;
    CHECK_THROWS_AS(parse_system("X AC 1\nX AC 1", keep), ParseError);
    CHECK_THROWS_AS(parse_system("X A 13"), ParseError);
    CHECK(parse_system("x acgu 1  # rna\n").alphabet() == Alphabet::RNA);
}

namespace {

std::vector<int> brute_canonical(std::vector<int> v) {
    std::vector<int> best = v;
    for (std::size_t r = 0; r < v.size(); ++r) {
        std::rotate(v.begin(), v.begin() + 1, v.end());
        best = std::min(best, v);
    }
    return best;
}

}  // namespace

TEST_CASE("circular permutations of small multisets") {
    auto abc = testing::letter_system("ABC", {"A", "C", "G"});
    auto perms = circular_permutations(abc);
    REQUIRE(perms.size() == 2);
    CHECK(perms[0].label() == "ABC");
    CHECK(perms[1].label() == "ACB");

    CHECK(circular_permutations(testing::letter_system("XX", {"AT"})).size() == 1);
    auto xxy = circular_permutations(testing::letter_system("XXY", {"AT", "GC"}));
    REQUIRE(xxy.size() == 1);
    CHECK(xxy[0].label() == "XXY");
}

TEST_CASE("circular permutations match a brute-force rotation dedup") {
    std::mt19937 rng(17);
    for (int round = 0; round < 60; ++round) {
        const int types = 1 + static_cast<int>(rng() % 3);
        std::string letters;
        std::vector<std::string> seqs;
        for (int t = 0; t < types; ++t) {
            const int reps = 1 + static_cast<int>(rng() % 3);
            letters += std::string(static_cast<std::size_t>(reps), static_cast<char>('P' + t));
            seqs.push_back(std::string(static_cast<std::size_t>(t + 1), 'A'));
        }
        auto system = testing::letter_system(letters, seqs);
        std::vector<int> items;
        for (std::size_t t = 0; t < system->type_count(); ++t) {
            items.insert(items.end(), static_cast<std::size_t>(system->types()[t].repetitions), static_cast<int>(t));
        }
        std::sort(items.begin(), items.end());
        std::set<std::vector<int>> expected;
        do {
            expected.insert(brute_canonical(items));
        } while (std::next_permutation(items.begin(), items.end()));

        std::set<std::vector<int>> got;
        for (const auto& o : circular_permutations(system)) got.insert(o.type_sequence());
        CHECK(got == expected);
        CHECK(circular_permutations(system).size() == expected.size());
    }
}

TEST_CASE("symmetry profile of type strings") {
    auto xz = testing::letter_system("XZXZXZXZ", {"A", "C"});
    auto p = symmetry_profile(parse_ordering(xz, "XZXZXZXZ"));
    CHECK(p.degrees == std::vector<int>{1, 2, 4});
    CHECK(p.max_degree == 4);
    CHECK(p.fundamental.size() == 2);

    auto single = testing::letter_system("X", {"ACGT"});
    auto q = symmetry_profile(parse_ordering(single, "X"));
    CHECK(q.degrees == std::vector<int>{1});
    CHECK(q.max_degree == 1);

    auto xyz = testing::letter_system("XYXZXYXZ", {"A", "C", "G"});
    auto o = parse_ordering(xyz, "XYXZXYXZ");
    auto r = symmetry_profile(o);
    CHECK(r.max_degree == 2);
    CHECK(r.degrees == std::vector<int>{1, 2});
    std::string fundamental;
    for (int t : r.fundamental) fundamental += xyz->types()[static_cast<std::size_t>(t)].strand.name;
    CHECK(fundamental == "XYXZ");
}

TEST_CASE("the fundamental component length divides every repeating prefix") {
    std::mt19937 rng(23);
    for (int round = 0; round < 300; ++round) {
        const int period = 1 + static_cast<int>(rng() % 4);
        const int copies = 1 + static_cast<int>(rng() % static_cast<unsigned>(8 / period));
        std::string unit;
        for (int k = 0; k < period; ++k) unit += static_cast<char>('X' + rng() % 3);
        std::string letters;
        for (int k = 0; k < copies; ++k) letters += unit;
        auto system = testing::letter_system(letters, {"A", "C", "G"});
        auto o = parse_ordering(system, letters);
        const auto& types = o.type_sequence();
        const std::size_t fundamental = symmetry_profile(o).fundamental.size();
        for (std::size_t len = 1; len <= types.size(); ++len) {
            if (types.size() % len != 0) continue;
            bool repeats = true;
            for (std::size_t k = 0; k < types.size(); ++k) repeats = repeats && types[k] == types[k % len];
            if (repeats) CHECK(len % fundamental == 0);
        }
    }
}

TEST_CASE("nick counts") {
    auto two = testing::letter_system("XY", {"ACGT", "TTGG"});
    auto o = parse_ordering(two, "XY");
    CHECK(o.nick_count(half_after(4), half_after(4)) == 1);
    CHECK(o.nick_count(half_after(1), half_after(1)) == 0);
    for (int i = 1; i <= o.size(); ++i) CHECK(o.nick_count(half_after(i), half_before(i)) == 0);
    CHECK(o.is_nick(o.size()));

    auto three = testing::letter_system("XYZ", {"AC", "GG", "TT"});
    auto p = parse_ordering(three, "XYZ");
    CHECK(p.nick_count(half_after(1), half_after(5)) == 2);
    CHECK(p.nicks_between(1, 6) == 2);
    CHECK(p.nicks_between(3, 4) == 0);
}

TEST_CASE("orderings canonicalize their rotation and validate multiplicities") {
    auto system = testing::letter_system("XXY", {"AC", "GG"});
    CHECK(parse_ordering(system, "XYX").label() == "XXY");
    CHECK(parse_ordering(system, "X,X,Y").label() == "XXY");
    CHECK_THROWS_AS(parse_ordering(system, "XY"), ParseError);
    CHECK_THROWS_AS(parse_ordering(system, "XXQ"), ParseError);
    CHECK(divisor_sum(6) == 12);
    CHECK(divisors(12) == std::vector<int>{1, 2, 3, 4, 6, 12});
}
