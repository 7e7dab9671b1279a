#include "symfold/report.hpp"

#include <cstdio>
#include <sstream>

namespace symfold {

std::string format_centi(double centi) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", centi / 100.0);
    std::string out = buf;
    if (out == "-0.00") out = "0.00";
    return out;
}

nlohmann::json pairs_json(const std::vector<BasePair>& pairs) {
    auto out = nlohmann::json::array();
    for (const auto& p : pairs) out.push_back({p.i, p.j});
    return out;
}

nlohmann::json mfe_json(const MfeResult& r, const EnergyModel& model) {
    const auto s = r.witness_structure();
    const auto breakdown = free_energy(s, model);
    return {
        {"ordering", r.ordering->label()},
        {"structure", serialize_dotbracket(s)},
        {"pairs", pairs_json(r.witness)},
        {"energy", r.energy},
        {"naive", r.naive},
        {"loop_sum", breakdown.loop_sum},
        {"association", breakdown.association},
        {"symmetry", r.symmetry},
        {"symmetry_term", symmetry_penalty(r.symmetry, model.kbt())},
        {"snmfe", r.snmfe},
        {"bound", r.bound},
        {"termination", to_string(r.reason)},
    };
}

nlohmann::json trace_json(const SearchStats& stats) {
    auto levels = nlohmann::json::array();
    for (const auto& scan : stats.scans) levels.push_back({{"level", scan.level}, {"symmetry", scan.symmetry}});
    return {
        {"scanned", stats.scanned},
        {"symmetric", stats.symmetric},
        {"refinements", stats.refinements},
        {"max_children", stats.max_children},
        {"selections", stats.selections},
        {"min_recomputes", stats.min_recomputes},
        {"peak_stored", stats.peak_stored},
        {"levels_non_decreasing", stats.levels_non_decreasing},
        {"unique_scans", stats.unique_scans},
        {"levels", levels},
    };
}

nlohmann::json cuts_json(const Ordering& ordering) {
    auto cuts = nlohmann::json::array();
    for (const auto& cut : enumerate_cuts(ordering)) {
        cuts.push_back({{"r", cut.r}, {"bonds", cut.bonds}, {"key", {cut.key().r, cut.key().min_bond}}});
    }
    return {
        {"ordering", ordering.label()},
        {"max_degree", symmetry_profile(ordering).max_degree},
        {"count", cuts.size()},
        {"formula", cut_count_formula(ordering)},
        {"cuts", cuts},
    };
}

nlohmann::json bound_json(const Ordering& ordering, const PairingRule& rule) {
    const auto terms = upper_bound_terms(ordering, rule);
    return {
        {"ordering", ordering.label()},
        {"max_degree", symmetry_profile(ordering).max_degree},
        {"cut_term", terms.cut_term},
        {"internal_term", terms.internal_term},
        {"bound", terms.total()},
    };
}

std::string mfe_text(const MfeResult& r, const EnergyModel& model) {
    const auto s = r.witness_structure();
    const auto breakdown = free_energy(s, model);
    std::ostringstream out;
    out << "ordering     " << r.ordering->label() << '\n';
    out << "structure    " << serialize_dotbracket(s) << '\n';
    out << "energy       " << format_centi(r.energy) << '\n';
    out << "loops        " << format_centi(breakdown.loop_sum) << '\n';
    out << "association  " << format_centi(breakdown.association) << '\n';
    out << "symmetry     R=" << r.symmetry << " (" << format_centi(symmetry_penalty(r.symmetry, model.kbt())) << ")\n";
    out << "snmfe        " << format_centi(r.snmfe) << '\n';
    out << "termination  " << to_string(r.reason) << '\n';
    return out.str();
}

}  // namespace symfold
