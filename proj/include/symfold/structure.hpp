#ifndef SYMFOLD_STRUCTURE_HPP
#define SYMFOLD_STRUCTURE_HPP

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "symfold/strand_model.hpp"

namespace symfold {

struct BasePair {
    int i;
    int j;

    bool operator==(const BasePair&) const = default;
    auto operator<=>(const BasePair&) const = default;
};

/// A set of base pairs over the global indices of one ordering.
class SecondaryStructure {
   public:
    SecondaryStructure(std::shared_ptr<const Ordering> ordering, std::vector<BasePair> pairs);

    const Ordering& ordering() const { return *ordering_; }
    const std::shared_ptr<const Ordering>& ordering_ptr() const { return ordering_; }
    /// Sorted by left index.
    const std::vector<BasePair>& pairs() const { return pairs_; }
    int size() const { return static_cast<int>(partner_.size()) - 1; }
    /// Partner of base i, or 0 when unpaired.
    int partner(int i) const { return partner_[static_cast<std::size_t>(i)]; }
    bool empty() const { return pairs_.empty(); }

    bool operator==(const SecondaryStructure& other) const {
        return *ordering_ == *other.ordering_ && pairs_ == other.pairs_;
    }

   private:
    std::shared_ptr<const Ordering> ordering_;
    std::vector<BasePair> pairs_;
    std::vector<int> partner_;
};

std::size_t structure_hash(const SecondaryStructure& s);

/// Every pair joins complementary bases under `rule`.
bool is_complementary(const SecondaryStructure& s, const PairingRule& rule);

/// No two chords cross for the structure's own ordering.
bool is_unpseudoknotted(const SecondaryStructure& s);

/// Bases plus intra-strand backbone bonds plus pairs form one component.
bool is_connected(const SecondaryStructure& s);

enum class LoopKind { Hairpin, Stack, Bulge, Interior, Multiloop, Exterior };

std::string to_string(LoopKind kind);

struct Loop {
    LoopKind kind = LoopKind::Exterior;
    /// The closing pair, absent for the outermost face.
    std::optional<BasePair> closing;
    /// Pairs directly enclosed by the closing pair, 5' to 3'.
    std::vector<BasePair> inner;
    /// Maximal runs of unpaired bases, as inclusive [first, last].
    std::vector<std::pair<int, int>> unpaired_spans;
    int unpaired = 0;
    /// Nick positions inside the face; value b stands for b + 1/2.
    std::vector<int> nicks;

    int bordering_pairs() const { return static_cast<int>(inner.size()) + (closing ? 1 : 0); }
};

/// Faces of the polymer graph. Empty for the empty structure.
std::vector<Loop> loop_decomposition(const SecondaryStructure& s);

/// Base reached from b after rotating by `shift` positions around the circle.
inline int rotate_base(int b, int shift, int n) { return (b - 1 + shift) % n + 1; }

/// Pair (i, j) rotated by `shift`, returned with i < j.
BasePair rotate_pair(BasePair p, int shift, int n);

/// True when rotating every pair by n/r positions maps s onto itself. r must divide v.
bool is_rotation_invariant(const SecondaryStructure& s, int r);

/// The largest R dividing v(pi) for which s is invariant.
int rotational_symmetry(const SecondaryStructure& s);

/// l[i,j]: bases on the shorter arc between i and j inclusive.
inline int segment_length(int i, int j, int n) {
    int d = i > j ? i - j : j - i;
    return std::min(d + 1, n - d + 1);
}

/// Dot-bracket with '+' at strand boundaries; appends " # energy=<e>" when given.
std::string serialize_dotbracket(const SecondaryStructure& s, std::optional<long long> energy = std::nullopt);

/// Reads the dialect written by serialize_dotbracket; a trailing '#' comment is ignored.
SecondaryStructure parse_dotbracket(std::string_view text, std::shared_ptr<const Ordering> ordering,
                                    const PairingRule& rule = {});

}  // namespace symfold

#endif  // SYMFOLD_STRUCTURE_HPP
