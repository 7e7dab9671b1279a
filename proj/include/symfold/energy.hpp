#ifndef SYMFOLD_ENERGY_HPP
#define SYMFOLD_ENERGY_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "symfold/strand_model.hpp"
#include "symfold/structure.hpp"

namespace symfold {

/// Free energies in hundredths of kcal/mol.
using Energy = std::int32_t;

inline constexpr Energy kInf = std::numeric_limits<Energy>::max() / 4;

inline bool is_finite(Energy e) { return e < kInf; }

/// Saturating sum: anything at or above kInf stays kInf.
inline Energy sat_add(Energy a, Energy b) {
    if (a >= kInf || b >= kInf) return kInf;
    std::int64_t s = static_cast<std::int64_t>(a) + b;
    return s >= kInf ? kInf : static_cast<Energy>(s);
}

inline Energy sat_add(Energy a, Energy b, Energy c) { return sat_add(sat_add(a, b), c); }

/// Constants of the built-in linear model. Defaults are the test model.
struct LinearParams {
    Energy hairpin_base = 300;
    Energy hairpin_per_nt = 10;
    Energy stack = -200;
    Energy interior_base = 100;
    Energy interior_per_nt = 30;
    Energy multi_init = 340;
    Energy multi_bp = 40;
    Energy multi_nt = 10;
    Energy assoc = 196;
    double kbt = 61.6;
    int min_hairpin = 3;
};

/// Parses `key=value` lines; `#` starts a comment.
LinearParams parse_params(std::string_view text, LinearParams base = {});
LinearParams load_params(const std::string& path, LinearParams base = {});

/// Loop energy provider. Hairpin and interior terms may depend on any of the bases involved.
class EnergyModel {
   public:
    explicit EnergyModel(PairingRule rule) : rule_(rule) {}
    virtual ~EnergyModel() = default;

    /// Hairpin closed by (i, j) with no nick inside.
    virtual Energy hairpin(const Ordering& o, int i, int j) const = 0;
    /// Two-pair loop closed by (i, j) around (d, e); covers stacks and bulges.
    virtual Energy interior(const Ordering& o, int i, int d, int e, int j) const = 0;

    virtual Energy multi_init() const = 0;
    virtual Energy multi_bp() const = 0;
    virtual Energy multi_nt() const = 0;
    virtual Energy assoc() const = 0;
    /// Thermal energy in the same centi-units, used only for the symmetry term.
    virtual double kbt() const = 0;
    /// Canonical fingerprint of the parameters, used to key cached DP dumps.
    virtual std::string fingerprint() const = 0;

    const PairingRule& pairing() const { return rule_; }
    bool can_pair(const Ordering& o, int i, int j) const { return rule_.can_pair(o.base(i), o.base(j)); }

    Energy multiloop_energy(int bordering_pairs, int free_bases) const {
        return multi_init() + bordering_pairs * multi_bp() + free_bases * multi_nt();
    }

   private:
    PairingRule rule_;
};

class LinearEnergyModel final : public EnergyModel {
   public:
    explicit LinearEnergyModel(LinearParams params = {}, PairingRule rule = {});

    Energy hairpin(const Ordering& o, int i, int j) const override;
    Energy interior(const Ordering& o, int i, int d, int e, int j) const override;
    Energy multi_init() const override { return p_.multi_init; }
    Energy multi_bp() const override { return p_.multi_bp; }
    Energy multi_nt() const override { return p_.multi_nt; }
    Energy assoc() const override { return p_.assoc; }
    double kbt() const override { return p_.kbt; }
    std::string fingerprint() const override;

    const LinearParams& params() const { return p_; }

   private:
    LinearParams p_;
};

/// Energy of one face; exterior faces contribute nothing.
Energy loop_energy(const Loop& loop, const Ordering& o, const EnergyModel& model);

/// Sum of loop energies plus (c - 1) association penalties. kInf for non-canonical pairs.
Energy naive_free_energy(const SecondaryStructure& s, const EnergyModel& model);

inline double symmetry_penalty(int r, double kbt) { return kbt * std::log(static_cast<double>(r)); }

struct EnergyBreakdown {
    Energy loop_sum = 0;
    Energy association = 0;
    double symmetry = 0.0;
    int rotational_symmetry = 1;
    double total = 0.0;

    Energy naive() const { return sat_add(loop_sum, association); }
};

EnergyBreakdown free_energy(const SecondaryStructure& s, const EnergyModel& model);

}  // namespace symfold

#endif  // SYMFOLD_ENERGY_HPP
