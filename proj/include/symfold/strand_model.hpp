#ifndef SYMFOLD_STRAND_MODEL_HPP
#define SYMFOLD_STRAND_MODEL_HPP

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace symfold {

/// Raised for malformed strand files, orderings and structures.
class ParseError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Raised when no connected structure exists for the requested strands.
class InfeasibleError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

enum class Alphabet { DNA, RNA };

/// Which base pairs may form. Watson-Crick only unless wobble is enabled.
struct PairingRule {
    bool wobble = false;

    bool can_pair(char a, char b) const;
};

struct Strand {
    std::string name;
    std::string sequence;

    std::size_t length() const { return sequence.size(); }
};

struct StrandType {
    Strand strand;
    int repetitions = 1;
};

struct SystemOptions {
    bool merge_equal_sequences = true;
    int max_strands = 12;
};

/// A multiset of strand types. Types keep file order.
class StrandSystem {
   public:
    StrandSystem(std::vector<StrandType> types, Alphabet alphabet);

    const std::vector<StrandType>& types() const { return types_; }
    std::size_t type_count() const { return types_.size(); }
    int strand_count() const { return strand_count_; }
    int total_length() const { return total_length_; }
    Alphabet alphabet() const { return alphabet_; }
    int type_index(std::string_view name) const;

   private:
    std::vector<StrandType> types_;
    Alphabet alphabet_;
    int strand_count_ = 0;
    int total_length_ = 0;
};

/// Parses `<name> <sequence> <repetition>` lines; `#` starts a comment.
StrandSystem parse_system(std::string_view text, const SystemOptions& options = {});
StrandSystem load_system(const std::string& path, const SystemOptions& options = {});

/// Half-index `below + 1/2`: the gap between bases `below` and `below + 1`.
struct HalfIndex {
    int below;
};

inline HalfIndex half_after(int base) { return HalfIndex{base}; }
inline HalfIndex half_before(int base) { return HalfIndex{base - 1}; }

/// A strand ordering pi laid on the circle, with global 1-based base indices.
/// Stored as the lexicographically least rotation of its type string.
class Ordering {
   public:
    Ordering(std::shared_ptr<const StrandSystem> system, std::vector<int> type_sequence);

    const StrandSystem& system() const { return *system_; }
    const std::shared_ptr<const StrandSystem>& system_ptr() const { return system_; }
    const std::vector<int>& type_sequence() const { return types_; }

    int size() const { return n_; }
    int strand_count() const { return static_cast<int>(types_.size()); }

    /// 1-based base lookup.
    char base(int i) const { return bases_[static_cast<std::size_t>(i)]; }
    /// Strand slot (0-based position in the ordering) holding base i.
    int strand_of(int i) const { return strand_of_[static_cast<std::size_t>(i)]; }
    int strand_start(int slot) const { return starts_[static_cast<std::size_t>(slot)]; }
    int strand_end(int slot) const { return starts_[static_cast<std::size_t>(slot) + 1] - 1; }

    /// True when `base + 1/2` is a strand boundary. `N + 1/2` (the circle seam) counts.
    bool is_nick(int base) const { return nick_after_[static_cast<std::size_t>(base)] != 0; }

    /// Number of nicks among the half-positions from..to inclusive (eta).
    /// Empty when to < from.
    int nick_count(HalfIndex from, HalfIndex to) const;

    /// eta[i + 1/2, j - 1/2]: nicks strictly between bases i and j.
    int nicks_between(int i, int j) const {
        if (j - 1 < i) return 0;
        return nick_prefix_[static_cast<std::size_t>(j - 1)] - nick_prefix_[static_cast<std::size_t>(i - 1)];
    }

    /// Type names joined with ',' (or concatenated when all names are one character).
    std::string label() const;

    bool operator==(const Ordering& other) const {
        return system_ == other.system_ && types_ == other.types_;
    }

   private:
    std::shared_ptr<const StrandSystem> system_;
    std::vector<int> types_;
    int n_ = 0;
    std::string bases_;
    std::vector<int> strand_of_;
    std::vector<int> starts_;
    std::vector<char> nick_after_;
    std::vector<int> nick_prefix_;
};

/// Rotation of `types` starting at its lexicographically least rotation.
std::vector<int> least_rotation(const std::vector<int>& types);

/// One canonical representative per distinct circular permutation of the multiset.
std::vector<Ordering> circular_permutations(const std::shared_ptr<const StrandSystem>& system);

/// Parses an ordering such as "X,Y,X" or "XYX" and canonicalizes its rotation.
Ordering parse_ordering(const std::shared_ptr<const StrandSystem>& system, std::string_view text);

struct SymmetryProfile {
    /// Fundamental component x as a prefix of the type sequence.
    std::vector<int> fundamental;
    /// v(pi): the maximum symmetry degree.
    int max_degree = 1;
    /// All symmetry degrees, ascending. Always contains 1.
    std::vector<int> degrees;
    /// Bases per fundamental component (N / v).
    int component_length = 0;
};

SymmetryProfile symmetry_profile(const Ordering& ordering);

/// Sum of the divisors of n.
long long divisor_sum(int n);
std::vector<int> divisors(int n);

}  // namespace symfold

#endif  // SYMFOLD_STRAND_MODEL_HPP
