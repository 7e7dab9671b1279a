#ifndef SYMFOLD_REPORT_HPP
#define SYMFOLD_REPORT_HPP

#include <string>

#include <json.hpp>

#include "symfold/backtrack.hpp"
#include "symfold/energy.hpp"
#include "symfold/symmetry.hpp"

namespace symfold {

/// Centi-units shown as kcal/mol with two decimals.
std::string format_centi(double centi);

/// Pairs as [[i, j], ...].
nlohmann::json pairs_json(const std::vector<BasePair>& pairs);

/// Witness, energies (raw centi-units plus the real symmetry term) and termination of one search.
nlohmann::json mfe_json(const MfeResult& r, const EnergyModel& model);

nlohmann::json trace_json(const SearchStats& stats);

nlohmann::json cuts_json(const Ordering& ordering);

nlohmann::json bound_json(const Ordering& ordering, const PairingRule& rule);

/// Human-readable block for one search.
std::string mfe_text(const MfeResult& r, const EnergyModel& model);

}  // namespace symfold

#endif  // SYMFOLD_REPORT_HPP
