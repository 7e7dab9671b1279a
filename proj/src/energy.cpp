#include "symfold/energy.hpp"

#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace symfold {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

Energy parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        long v = std::stol(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing");
        if (v <= -kInf / 8 || v >= kInf / 8) throw std::out_of_range("range");
        return static_cast<Energy>(v);
    } catch (const std::exception&) {
        throw ParseError("parameter '" + key + "' needs an integer, got '" + value + "'");
    }
}

}  // namespace

LinearParams parse_params(std::string_view text, LinearParams base) {
    LinearParams p = base;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ParseError("line " + std::to_string(line_no) + ": expected key=value");
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key == "hairpin_base") {
            p.hairpin_base = parse_int(key, value);
        } else if (key == "hairpin_per_nt") {
            p.hairpin_per_nt = parse_int(key, value);
        } else if (key == "stack") {
            p.stack = parse_int(key, value);
        } else if (key == "interior_base") {
            p.interior_base = parse_int(key, value);
        } else if (key == "interior_per_nt") {
            p.interior_per_nt = parse_int(key, value);
        } else if (key == "multi_init") {
            p.multi_init = parse_int(key, value);
        } else if (key == "multi_bp") {
            p.multi_bp = parse_int(key, value);
        } else if (key == "multi_nt") {
            p.multi_nt = parse_int(key, value);
        } else if (key == "assoc") {
            p.assoc = parse_int(key, value);
        } else if (key == "min_hairpin") {
            p.min_hairpin = parse_int(key, value);
            if (p.min_hairpin < 0) throw ParseError("min_hairpin must be non-negative");
        } else if (key == "kbt_centi") {
            try {
                std::size_t used = 0;
                p.kbt = std::stod(value, &used);
                if (used != value.size()) throw std::invalid_argument("trailing");
            } catch (const std::exception&) {
                throw ParseError("parameter 'kbt_centi' needs a number, got '" + value + "'");
            }
            if (!(p.kbt > 0.0)) throw ParseError("kbt_centi must be positive");
        } else {
            throw ParseError("line " + std::to_string(line_no) + ": unknown parameter '" + key + "'");
        }
    }
    return p;
}

LinearParams load_params(const std::string& path, LinearParams base) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_params(buf.str(), base);
}

LinearEnergyModel::LinearEnergyModel(LinearParams params, PairingRule rule) : EnergyModel(rule), p_(params) {
    if (!(p_.kbt > 0.0)) throw std::invalid_argument("kbt must be positive");
}

Energy LinearEnergyModel::hairpin(const Ordering&, int i, int j) const {
    const int s = j - i - 1;
    if (s < p_.min_hairpin) return kInf;
    return p_.hairpin_base + p_.hairpin_per_nt * s;
}

Energy LinearEnergyModel::interior(const Ordering&, int i, int d, int e, int j) const {
    const int s1 = d - i - 1;
    const int s2 = j - e - 1;
    if (s1 == 0 && s2 == 0) return p_.stack;
    return p_.interior_base + p_.interior_per_nt * (s1 + s2);
}

std::string LinearEnergyModel::fingerprint() const {
    std::ostringstream out;
    out << "linear:" << p_.hairpin_base << ',' << p_.hairpin_per_nt << ',' << p_.stack << ',' << p_.interior_base
        << ',' << p_.interior_per_nt << ',' << p_.multi_init << ',' << p_.multi_bp << ',' << p_.multi_nt << ','
        << p_.assoc << ',' << std::setprecision(17) << p_.kbt << ',' << p_.min_hairpin
        << ",wobble=" << pairing().wobble;
    return out.str();
}

Energy loop_energy(const Loop& loop, const Ordering& o, const EnergyModel& model) {
    switch (loop.kind) {
        case LoopKind::Exterior:
            return 0;
        case LoopKind::Hairpin:
            return model.hairpin(o, loop.closing->i, loop.closing->j);
        case LoopKind::Stack:
        case LoopKind::Bulge:
        case LoopKind::Interior:
            return model.interior(o, loop.closing->i, loop.inner[0].i, loop.inner[0].j, loop.closing->j);
        case LoopKind::Multiloop:
            return model.multiloop_energy(loop.bordering_pairs(), loop.unpaired);
    }
    return kInf;
}

Energy naive_free_energy(const SecondaryStructure& s, const EnergyModel& model) {
    const auto& o = s.ordering();
    if (!is_complementary(s, model.pairing())) return kInf;
    Energy total = 0;
    for (const auto& loop : loop_decomposition(s)) total = sat_add(total, loop_energy(loop, o, model));
    return sat_add(total, (o.strand_count() - 1) * model.assoc());
}

EnergyBreakdown free_energy(const SecondaryStructure& s, const EnergyModel& model) {
    const auto& o = s.ordering();
    EnergyBreakdown out;
    if (!is_complementary(s, model.pairing())) {
        out.loop_sum = kInf;
    } else {
        for (const auto& loop : loop_decomposition(s)) out.loop_sum = sat_add(out.loop_sum, loop_energy(loop, o, model));
    }
    out.association = (o.strand_count() - 1) * model.assoc();
    out.rotational_symmetry = rotational_symmetry(s);
    out.symmetry = symmetry_penalty(out.rotational_symmetry, model.kbt());
    const Energy naive = out.naive();
    out.total = is_finite(naive) ? naive + out.symmetry : static_cast<double>(kInf);
    return out;
}

}  // namespace symfold
