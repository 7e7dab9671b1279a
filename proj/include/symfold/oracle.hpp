#ifndef SYMFOLD_ORACLE_HPP
#define SYMFOLD_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "symfold/energy.hpp"
#include "symfold/strand_model.hpp"
#include "symfold/structure.hpp"

namespace symfold {

inline constexpr int kOracleMaxN = 24;

struct EnumerationConfig {
    int max_n = 18;
    std::uint64_t max_structures = 50'000'000;
    int min_hairpin = 3;
    PairingRule rule;
};

using PairList = std::vector<BasePair>;

/// Streams every connected unpseudoknotted structure of the ordering exactly once.
/// Pairs are complementary and every nick-free hairpin keeps min_hairpin unpaired bases.
/// Returns the number of structures visited.
std::uint64_t enumerate_structures(const Ordering& ordering, const EnumerationConfig& cfg,
                                   const std::function<void(const PairList&)>& visit);

/// Second enumerator for tiny inputs (N <= 8): filters every subset of candidate pairs.
std::vector<PairList> enumerate_by_subsets(const Ordering& ordering, const EnumerationConfig& cfg);

/// Loop-sum plus association computed straight from the pair list.
Energy oracle_naive_energy(const Ordering& ordering, const PairList& pairs, const EnergyModel& model);

/// Order of the rotation group fixing the pair list, found by trying every strand shift.
int oracle_symmetry(const Ordering& ordering, const PairList& pairs);

struct OracleResult {
    bool feasible = false;
    /// Minimum of the symmetry-corrected energy.
    double energy = 0.0;
    /// Naive energy and symmetry of the structure attaining `energy`.
    Energy naive = kInf;
    int symmetry = 1;
    PairList pairs;
    std::shared_ptr<const Ordering> ordering;
    /// Minimum naive energy over the ensemble (the snMFE).
    Energy snmfe = kInf;
    std::uint64_t structures = 0;
};

OracleResult oracle_ordering(const std::shared_ptr<const Ordering>& ordering, const EnergyModel& model,
                             const EnumerationConfig& cfg);

/// Exact minimum over all circular orderings. Throws InfeasibleError when nothing connects.
OracleResult brute_mfe(const std::shared_ptr<const StrandSystem>& system, const EnergyModel& model,
                       const EnumerationConfig& cfg);

}  // namespace symfold

#endif  // SYMFOLD_ORACLE_HPP
