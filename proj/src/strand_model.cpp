#include "symfold/strand_model.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace symfold {

bool PairingRule::can_pair(char a, char b) const {
    if (a > b) std::swap(a, b);
    // sorted pairs: AT, AU, CG, GT, GU
    if (a == 'A' && (b == 'T' || b == 'U')) return true;
    if (a == 'C' && b == 'G') return true;
    if (wobble && a == 'G' && (b == 'T' || b == 'U')) return true;
    return false;
}

StrandSystem::StrandSystem(std::vector<StrandType> types, Alphabet alphabet)
    : types_(std::move(types)), alphabet_(alphabet) {
    if (types_.empty()) throw ParseError("strand system has no strands");
    for (const auto& t : types_) {
        if (t.repetitions < 1) throw ParseError("strand '" + t.strand.name + "' has repetition < 1");
        if (t.strand.sequence.empty()) throw ParseError("strand '" + t.strand.name + "' is empty");
        strand_count_ += t.repetitions;
        total_length_ += t.repetitions * static_cast<int>(t.strand.length());
    }
}

int StrandSystem::type_index(std::string_view name) const {
    for (std::size_t t = 0; t < types_.size(); ++t) {
        if (types_[t].strand.name == name) return static_cast<int>(t);
    }
    return -1;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string> split_ws(std::string_view line) {
    std::vector<std::string> out;
    std::istringstream in{std::string(line)};
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

}  // namespace

StrandSystem parse_system(std::string_view text, const SystemOptions& options) {
    std::vector<StrandType> types;
    bool saw_t = false;
    bool saw_u = false;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const std::string where = "line " + std::to_string(line_no) + ": ";
        auto tokens = split_ws(line);
        if (tokens.size() != 3) throw ParseError(where + "expected '<name> <sequence> <repetition>'");

        std::string seq = tokens[1];
        for (char& ch : seq) {
            ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
            switch (ch) {
                case 'A':
                case 'C':
                case 'G':
                    break;
                case 'T':
                    saw_t = true;
                    break;
                case 'U':
                    saw_u = true;
                    break;
                default:
                    throw ParseError(where + "illegal base '" + std::string(1, ch) + "'");
            }
        }
        if (saw_t && saw_u) throw ParseError(where + "sequence mixes T and U");

        int reps = 0;
        try {
            std::size_t used = 0;
            reps = std::stoi(tokens[2], &used);
            if (used != tokens[2].size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw ParseError(where + "repetition must be an integer");
        }
        if (reps < 1) throw ParseError(where + "repetition must be positive");

        auto same_name = std::find_if(types.begin(), types.end(),
                                      [&](const StrandType& t) { return t.strand.name == tokens[0]; });
        if (same_name != types.end() && same_name->strand.sequence != seq) {
            throw ParseError(where + "strand name '" + tokens[0] + "' redefined");
        }
        auto same_seq = types.end();
        if (options.merge_equal_sequences) {
            same_seq = std::find_if(types.begin(), types.end(),
                                    [&](const StrandType& t) { return t.strand.sequence == seq; });
        } else if (same_name != types.end()) {
            throw ParseError(where + "duplicate strand name '" + tokens[0] + "'");
        }
        if (same_seq != types.end()) {
            same_seq->repetitions += reps;
        } else {
            types.push_back(StrandType{Strand{tokens[0], seq}, reps});
        }
    }
    if (types.empty()) throw ParseError("no strands defined");

    StrandSystem system(std::move(types), saw_u ? Alphabet::RNA : Alphabet::DNA);
    if (system.strand_count() > options.max_strands) {
        throw ParseError("system has " + std::to_string(system.strand_count()) + " strands; limit is " +
                         std::to_string(options.max_strands));
    }
    return system;
}

StrandSystem load_system(const std::string& path, const SystemOptions& options) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_system(buf.str(), options);
}

Ordering::Ordering(std::shared_ptr<const StrandSystem> system, std::vector<int> type_sequence)
    : system_(std::move(system)), types_(std::move(type_sequence)) {
    if (!system_) throw std::invalid_argument("ordering without a system");
    std::vector<int> counts(system_->type_count(), 0);
    for (int t : types_) {
        if (t < 0 || static_cast<std::size_t>(t) >= counts.size()) throw ParseError("unknown strand type in ordering");
        ++counts[static_cast<std::size_t>(t)];
    }
    for (std::size_t t = 0; t < counts.size(); ++t) {
        if (counts[t] != system_->types()[t].repetitions) {
            throw ParseError("ordering does not match the multiplicity of '" + system_->types()[t].strand.name + "'");
        }
    }
    types_ = least_rotation(types_);

    n_ = system_->total_length();
    bases_.assign(1, ' ');
    strand_of_.assign(1, -1);
    starts_.clear();
    for (std::size_t slot = 0; slot < types_.size(); ++slot) {
        starts_.push_back(static_cast<int>(bases_.size()));
        const auto& seq = system_->types()[static_cast<std::size_t>(types_[slot])].strand.sequence;
        bases_ += seq;
        strand_of_.insert(strand_of_.end(), seq.size(), static_cast<int>(slot));
    }
    starts_.push_back(n_ + 1);

    nick_after_.assign(static_cast<std::size_t>(n_) + 2, 0);
    for (std::size_t slot = 0; slot < types_.size(); ++slot) {
        nick_after_[static_cast<std::size_t>(starts_[slot + 1] - 1)] = 1;
    }
    nick_prefix_.assign(static_cast<std::size_t>(n_) + 2, 0);
    for (int p = 1; p <= n_ + 1; ++p) {
        nick_prefix_[static_cast<std::size_t>(p)] =
            nick_prefix_[static_cast<std::size_t>(p - 1)] + nick_after_[static_cast<std::size_t>(p)];
    }
}

int Ordering::nick_count(HalfIndex from, HalfIndex to) const {
    int lo = std::max(from.below, 0);
    int hi = std::min(to.below, n_);
    if (hi < lo) return 0;
    return nick_prefix_[static_cast<std::size_t>(hi)] - (lo > 0 ? nick_prefix_[static_cast<std::size_t>(lo - 1)] : 0);
}

std::string Ordering::label() const {
    bool short_names = true;
    for (const auto& t : system_->types()) short_names = short_names && t.strand.name.size() == 1;
    std::string out;
    for (std::size_t k = 0; k < types_.size(); ++k) {
        if (k > 0 && !short_names) out += ',';
        out += system_->types()[static_cast<std::size_t>(types_[k])].strand.name;
    }
    return out;
}

std::vector<int> least_rotation(const std::vector<int>& types) {
    std::vector<int> best = types;
    std::vector<int> rot = types;
    for (std::size_t r = 1; r < types.size(); ++r) {
        std::rotate(rot.begin(), rot.begin() + 1, rot.end());
        if (rot < best) best = rot;
    }
    return best;
}

std::vector<Ordering> circular_permutations(const std::shared_ptr<const StrandSystem>& system) {
    std::vector<int> rest;
    for (std::size_t t = 0; t < system->type_count(); ++t) {
        int reps = system->types()[t].repetitions - (t == 0 ? 1 : 0);
        rest.insert(rest.end(), static_cast<std::size_t>(reps), static_cast<int>(t));
    }
    // The least rotation always starts with type 0, so only the tail is permuted.
    std::vector<Ordering> out;
    std::vector<int> candidate(rest.size() + 1);
    candidate[0] = 0;
    do {
        std::copy(rest.begin(), rest.end(), candidate.begin() + 1);
        if (least_rotation(candidate) == candidate) out.emplace_back(system, candidate);
    } while (std::next_permutation(rest.begin(), rest.end()));
    return out;
}

Ordering parse_ordering(const std::shared_ptr<const StrandSystem>& system, std::string_view text) {
    std::vector<int> types;
    std::string cleaned;
    for (char ch : text) cleaned += (ch == ',' ? ' ' : ch);
    auto tokens = split_ws(cleaned);
    bool all_names = !tokens.empty();
    for (const auto& tok : tokens) all_names = all_names && system->type_index(tok) >= 0;
    if (all_names) {
        for (const auto& tok : tokens) types.push_back(system->type_index(tok));
    } else if (tokens.size() == 1) {
        for (char ch : tokens[0]) {
            int t = system->type_index(std::string(1, ch));
            if (t < 0) throw ParseError("unknown strand '" + std::string(1, ch) + "' in ordering");
            types.push_back(t);
        }
    } else {
        throw ParseError("cannot parse ordering '" + std::string(text) + "'");
    }
    return Ordering(system, std::move(types));
}

SymmetryProfile symmetry_profile(const Ordering& ordering) {
    const auto& types = ordering.type_sequence();
    const int c = static_cast<int>(types.size());
    SymmetryProfile profile;
    for (int n = 1; n <= c; ++n) {
        if (c % n != 0) continue;
        const int len = c / n;
        bool repeats = true;
        for (int k = len; k < c && repeats; ++k) repeats = types[static_cast<std::size_t>(k)] == types[static_cast<std::size_t>(k % len)];
        if (repeats) profile.degrees.push_back(n);
    }
    profile.max_degree = profile.degrees.back();
    profile.fundamental.assign(types.begin(), types.begin() + c / profile.max_degree);
    profile.component_length = ordering.size() / profile.max_degree;
    return profile;
}

long long divisor_sum(int n) {
    long long s = 0;
    for (int d : divisors(n)) s += d;
    return s;
}

std::vector<int> divisors(int n) {
    std::vector<int> out;
    for (int d = 1; d <= n; ++d) {
        if (n % d == 0) out.push_back(d);
    }
    return out;
}

}  // namespace symfold
