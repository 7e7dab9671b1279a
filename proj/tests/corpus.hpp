#ifndef SYMFOLD_TESTS_CORPUS_HPP
#define SYMFOLD_TESTS_CORPUS_HPP

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "symfold/strand_model.hpp"

namespace symfold::testing {

inline char complement(char b, bool rna) {
    switch (b) {
        case 'A':
            return rna ? 'U' : 'T';
        case 'C':
            return 'G';
        case 'G':
            return 'C';
        default:
            return 'A';
    }
}

inline std::string random_sequence(std::mt19937& rng, int len, bool rna) {
    const char* alphabet = rna ? "ACGU" : "ACGT";
    std::string s;
    for (int k = 0; k < len; ++k) s += alphabet[rng() % 4];
    return s;
}

/// Reverse-complement palindrome, with a random middle base for odd lengths.
inline std::string self_complementary(std::mt19937& rng, int len, bool rna) {
    std::string half = random_sequence(rng, len / 2, rna);
    std::string s = half;
    if (len % 2) s += random_sequence(rng, 1, rna);
    for (auto it = half.rbegin(); it != half.rend(); ++it) s += complement(*it, rna);
    return s;
}

inline std::string biased_sequence(std::mt19937& rng, int len, bool rna) {
    return rng() % 2 ? self_complementary(rng, len, rna) : random_sequence(rng, len, rna);
}

struct CorpusEntry {
    std::string text;
    std::shared_ptr<const StrandSystem> system;
};

/// Seeded random systems with c in 1..4, lengths 2..6, N <= max_n, both alphabets,
/// and a share of forced-symmetric multisets {(X,2)}, {(X,4)}, {(X,2),(Y,2)}.
inline std::vector<CorpusEntry> random_corpus(std::uint32_t seed, int count, int max_n = 16) {
    std::mt19937 rng(seed);
    std::vector<CorpusEntry> out;
    while (static_cast<int>(out.size()) < count) {
        const bool rna = rng() % 2;
        std::string text;
        int n = 0;
        switch (rng() % 5) {
            case 0: {
                const int len = 2 + static_cast<int>(rng() % 5);
                text = "X " + biased_sequence(rng, len, rna) + " 2\n";
                n = 2 * len;
                break;
            }
            case 1: {
                const int len = 2 + static_cast<int>(rng() % 3);
                text = "X " + biased_sequence(rng, len, rna) + " 4\n";
                n = 4 * len;
                break;
            }
            case 2: {
                const int a = 2 + static_cast<int>(rng() % 3);
                const int b = 2 + static_cast<int>(rng() % 3);
                const std::string x = biased_sequence(rng, a, rna);
                const std::string y = biased_sequence(rng, b, rna);
                if (x == y) continue;
                text = "X " + x + " 2\nY " + y + " 2\n";
                n = 2 * (a + b);
                break;
            }
            default: {
                const int c = 1 + static_cast<int>(rng() % 4);
                const int types = 1 + static_cast<int>(rng() % static_cast<unsigned>(c));
                std::vector<int> reps(static_cast<std::size_t>(types), 1);
                for (int k = types; k < c; ++k) ++reps[rng() % static_cast<unsigned>(types)];
                for (int t = 0; t < types; ++t) {
                    const int len = 2 + static_cast<int>(rng() % 5);
                    text += "S" + std::to_string(t) + " " + biased_sequence(rng, len, rna) + " " +
                            std::to_string(reps[static_cast<std::size_t>(t)]) + "\n";
                    n += len * reps[static_cast<std::size_t>(t)];
                }
                break;
            }
        }
        if (n > max_n) continue;
        out.push_back(CorpusEntry{text, std::make_shared<const StrandSystem>(parse_system(text))});
    }
    return out;
}

/// System with one single-letter type per distinct letter of `types`, each with its own sequence.
inline std::shared_ptr<const StrandSystem> letter_system(const std::string& types,
                                                         const std::vector<std::string>& sequences) {
    std::vector<StrandType> list;
    std::string seen;
    for (char ch : types) {
        if (seen.find(ch) != std::string::npos) {
            for (auto& t : list) {
                if (t.strand.name == std::string(1, ch)) ++t.repetitions;
            }
            continue;
        }
        seen += ch;
        list.push_back(StrandType{Strand{std::string(1, ch), sequences[seen.size() - 1]}, 1});
    }
    return std::make_shared<const StrandSystem>(std::move(list), Alphabet::DNA);
}

}  // namespace symfold::testing

#endif  // SYMFOLD_TESTS_CORPUS_HPP
