#ifndef SYMFOLD_BACKTRACK_HPP
#define SYMFOLD_BACKTRACK_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "symfold/energy.hpp"
#include "symfold/snmfe_dp.hpp"
#include "symfold/strand_model.hpp"
#include "symfold/structure.hpp"
#include "symfold/symmetry.hpp"

namespace symfold {

enum class SegType { Box, B, M };
enum class Qual { Null, Int, Mul };

/// [i,j]^t_{q:k}. For restricted forms, bases k..j-1 (b) or k..j (m) stay unpaired.
struct Segment {
    int i = 0;
    int j = 0;
    SegType t = SegType::Box;
    Qual q = Qual::Null;
    int k = 0;

    bool operator==(const Segment&) const = default;
};

std::string to_string(const Segment& s);

struct SegmentCell {
    Segment seg;
    std::shared_ptr<const SegmentCell> next;
};

struct PairCell {
    BasePair pair;
    std::shared_ptr<const PairCell> next;
};

/// Search node: segment stack, formed pairs and completed-loop energy. Tails are shared.
struct PartialStructure {
    std::shared_ptr<const SegmentCell> delta;
    std::shared_ptr<const PairCell> pairs;
    Energy loops = 0;
    /// Attainable energy, cached at creation.
    Energy e = 0;
    /// Generation order, used to break ties between equal energies.
    std::uint64_t seq = 0;

    bool fully_specified() const { return !delta; }
    /// Top of the stack first.
    std::vector<Segment> segments() const;
    std::vector<BasePair> pair_list() const;
};

/// Builds a node from an explicit stack (top first) and computes its attainable energy.
PartialStructure make_partial(const DPState& dp, const std::vector<Segment>& stack, const std::vector<BasePair>& pairs,
                              Energy loops);

PartialStructure root_structure(const DPState& dp);

/// Matrix lookup for one segment; kInf when the segment cannot be completed.
Energy segment_energy(const DPState& dp, const Segment& seg);

/// Completed-loop energy plus the lookups of every pending segment.
Energy attainable_energy(const PartialStructure& s, const DPState& dp);

/// Pops the top segment and returns every child with finite attainable energy,
/// in a fixed enumeration order. Each completion of s is reachable through exactly one child.
std::vector<PartialStructure> refine(const PartialStructure& s, const DPState& dp, const EnergyModel& model);

struct SearchOptions {
    /// Keep only the best candidates in one merged list instead of one array per scanned structure.
    bool low_mem = false;
    /// Record every scanned structure and check none repeats.
    bool audit = true;
};

/// Registry entry: a cut for multiloop or higher-order centres, the two bordering pairs of a two-pair centre.
using RegistryKey = std::variant<CutKey, std::pair<BasePair, BasePair>>;

/// Keys a symmetric structure of symmetry r claims; two structures sharing a key can be spliced.
std::vector<RegistryKey> registry_keys(const SecondaryStructure& s, int r);

/// Asymmetric splice of two symmetric structures that claimed the same key.
SecondaryStructure collision_witness(const SecondaryStructure& earlier, const SecondaryStructure& later,
                                     const RegistryKey& key);

enum class Termination { Asymmetric, Collision, AboveBound };

std::string to_string(Termination t);

struct ScanRecord {
    Energy level = 0;
    int symmetry = 1;
    std::vector<BasePair> pairs;
};

struct SearchStats {
    std::uint64_t scanned = 0;
    std::uint64_t symmetric = 0;
    std::uint64_t refinements = 0;
    std::uint64_t max_children = 0;
    std::uint64_t selections = 0;
    /// Array minima recomputed after selections (one per selection).
    std::uint64_t min_recomputes = 0;
    /// Largest number of candidate nodes held at once.
    std::uint64_t peak_stored = 0;
    bool levels_non_decreasing = true;
    bool unique_scans = true;
    std::vector<ScanRecord> scans;
};

struct MfeResult {
    /// Symmetry-corrected free energy including association.
    double energy = 0.0;
    /// Naive energy and symmetry of the witness.
    Energy naive = kInf;
    int symmetry = 1;
    std::vector<BasePair> witness;
    std::shared_ptr<const Ordering> ordering;
    Energy snmfe = kInf;
    long long bound = 0;
    Termination reason = Termination::Asymmetric;
    SearchStats stats;

    SecondaryStructure witness_structure() const { return SecondaryStructure(ordering, witness); }
};

/// Energy-level search from the snMFE up to the symmetry-corrected minimum.
/// Throws InfeasibleError when the ordering has no connected structure.
MfeResult true_mfe(const DPState& dp, const EnergyModel& model, const SearchOptions& options = {});

struct SystemMfe {
    /// One entry per canonical ordering, in canonical order; infeasible orderings hold reason-free defaults.
    std::vector<MfeResult> per_ordering;
    std::vector<bool> feasible;
    std::size_t best = 0;

    const MfeResult& result() const { return per_ordering[best]; }
};

/// Minimum over all canonical orderings. Worker count comes from MFE_THREADS when set.
SystemMfe mfe_all_orderings(const std::shared_ptr<const StrandSystem>& system, const EnergyModel& model,
                            const SearchOptions& options = {});

/// Same as above restricted to the given orderings.
SystemMfe mfe_orderings(const std::vector<Ordering>& orderings, const EnergyModel& model,
                        const SearchOptions& options = {});

int worker_count();

}  // namespace symfold

#endif  // SYMFOLD_BACKTRACK_HPP
