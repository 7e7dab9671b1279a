#ifndef SYMFOLD_SNMFE_DP_HPP
#define SYMFOLD_SNMFE_DP_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "symfold/energy.hpp"
#include "symfold/strand_model.hpp"

namespace symfold {

enum class AuxKind { BInt, BMul, M2 };

struct FillOptions {
    /// The three restricted-suffix tensors are only needed for backtracking.
    bool keep_tensors = true;
};

/// Matrices of the symmetry-naive MFE recursion for one ordering.
/// Pair matrices are triangular; tensors hold k in [i+1, j] for each (i, j).
class DPState {
   public:
    DPState(std::shared_ptr<const Ordering> ordering, bool keep_tensors);

    const Ordering& ordering() const { return *ordering_; }
    const std::shared_ptr<const Ordering>& ordering_ptr() const { return ordering_; }
    int size() const { return n_; }
    bool has_tensors() const { return has_tensors_; }

    /// M_{i,j}; the empty segment j = i - 1 is 0.
    Energy m(int i, int j) const {
        if (j < i) return j == i - 1 ? 0 : kInf;
        return m_[tri(i, j)];
    }
    Energy mb(int i, int j) const { return j <= i ? kInf : mb_[tri(i, j)]; }
    Energy mm(int i, int j) const { return j < i ? kInf : mm_[tri(i, j)]; }

    /// Unchecked tensor read; k must lie in [i+1, j].
    Energy aux_at(AuxKind kind, int i, int j, int k) const {
        return tensor(kind)[toff_[tri(i, j)] + static_cast<std::size_t>(k - i - 1)];
    }

    /// Loop-sum part of the snMFE, M_{1,N}.
    Energy m_total() const { return m(1, n_); }
    Energy association() const { return association_; }

    std::uint64_t inner_iterations() const { return inner_iterations_; }
    /// Cells held by all matrices and tensors.
    std::size_t cell_count() const;

   private:
    friend DPState fill(std::shared_ptr<const Ordering>, const EnergyModel&, const FillOptions&);
    friend void save_dp(const DPState&, const std::string&, std::uint64_t);
    friend DPState load_dp(const std::string&, std::shared_ptr<const Ordering>, std::uint64_t);

    std::size_t tri(int i, int j) const {
        return row_[static_cast<std::size_t>(i)] + static_cast<std::size_t>(j - i);
    }
    const std::vector<Energy>& tensor(AuxKind kind) const {
        return kind == AuxKind::BInt ? bint_ : (kind == AuxKind::BMul ? bmul_ : m2_);
    }

    std::shared_ptr<const Ordering> ordering_;
    int n_ = 0;
    bool has_tensors_ = false;
    Energy association_ = 0;
    std::uint64_t inner_iterations_ = 0;
    std::vector<std::size_t> row_;
    std::vector<std::size_t> toff_;
    std::vector<Energy> m_, mb_, mm_;
    std::vector<Energy> bint_, bmul_, m2_;
};

DPState fill(std::shared_ptr<const Ordering> ordering, const EnergyModel& model, const FillOptions& options = {});

/// M_{1,N} + (c - 1) * assoc, or kInf when no connected structure exists.
Energy snmfe(const DPState& dp);

/// Range-checked tensor lookup. b:int and b:mul accept k in [i+2, j-1], m:2 accepts k in [i+1, j].
Energy aux_lookup(const DPState& dp, AuxKind kind, int i, int j, int k);

/// Key binding a dump to its system, ordering and energy parameters.
std::uint64_t dp_key(const Ordering& ordering, const EnergyModel& model);

void save_dp(const DPState& dp, const std::string& path, std::uint64_t key);
/// Throws when the file was written for a different key or ordering size.
DPState load_dp(const std::string& path, std::shared_ptr<const Ordering> ordering, std::uint64_t key);

}  // namespace symfold

#endif  // SYMFOLD_SNMFE_DP_HPP
