#ifndef SYMFOLD_SYMMETRY_HPP
#define SYMFOLD_SYMMETRY_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "symfold/strand_model.hpp"
#include "symfold/structure.hpp"

namespace symfold {

/// Covalent bond b joins bases b and b + 1 of one strand.
struct CutKey {
    int r = 0;
    int min_bond = 0;

    bool operator==(const CutKey&) const = default;
    auto operator<=>(const CutKey&) const = default;
};

/// Orbit of one covalent bond under the rotations of order r.
struct SymmetricCut {
    int r = 0;
    /// Sorted bond indices.
    std::vector<int> bonds;
    int generator = 0;

    CutKey key() const { return CutKey{r, bonds.front()}; }
};

/// Throws std::invalid_argument unless r > 1 divides v(pi) and b is a covalent bond.
SymmetricCut generate_cut(int b, int r, const Ordering& ordering);

/// Every distinct cut over every admissible degree r > 1, ordered by (r, min bond).
std::vector<SymmetricCut> enumerate_cuts(const Ordering& ordering);

/// Closed form for the number of distinct cuts: (N - c) / v * (sigma(v) - v).
long long cut_count_formula(const Ordering& ordering);

/// Bond b lies on the shorter arc between the pair's bases (ties use the forward arc i..j).
bool bond_enclosed(int b, BasePair p, int n);

bool is_admissible(const SymmetricCut& cut, const SecondaryStructure& s);

/// Constructive existence proof: cut next to a pair of maximal arc length.
/// Throws std::invalid_argument when s is not invariant under order-r rotation.
SymmetricCut find_admissible_cut(const SecondaryStructure& s, int r);

/// All admissible cuts of order r for s, ordered by min bond.
std::vector<SymmetricCut> admissible_cuts(const SecondaryStructure& s, int r);

struct Slice {
    /// Circular base interval first..last (forward, may wrap past N).
    int first = 0;
    int last = 0;
    std::vector<int> bases;
    std::vector<BasePair> pairs;
};

/// Connected components left after removing the cut bonds, in order of their first base.
/// Throws std::invalid_argument when the cut is not admissible for s.
std::vector<Slice> slices(const SecondaryStructure& s, const SymmetricCut& cut);

/// Number of components after removing the cut bonds from the polymer graph.
int component_count_without(const SecondaryStructure& s, const std::vector<int>& removed_bonds);

struct CentralLoop {
    LoopKind kind = LoopKind::Multiloop;
    std::vector<BasePair> bordering;
    std::vector<int> cut_bonds;
};

/// The face touching every cut bond. Throws std::invalid_argument for an inadmissible cut.
CentralLoop central_loop(const SecondaryStructure& s, const SymmetricCut& cut);

/// Replaces the slice that follows the smallest cut bond of s_i with the matching slice of s_j.
/// Both inputs need symmetry exactly cut.r and must admit the cut; for r = 2 their central
/// loops must both be multiloops or be the same two-pair loop.
SecondaryStructure slice_and_swap(const SecondaryStructure& s_i, const SecondaryStructure& s_j,
                                  const SymmetricCut& cut);

struct BoundTerms {
    long long cut_term = 0;
    long long internal_term = 0;

    long long total() const { return cut_term + internal_term; }
};

/// Cap on the number of symmetric structures the search can scan for this ordering.
BoundTerms upper_bound_terms(const Ordering& ordering, const PairingRule& rule = {});
long long upper_bound_U(const Ordering& ordering, const PairingRule& rule = {});

}  // namespace symfold

#endif  // SYMFOLD_SYMMETRY_HPP
