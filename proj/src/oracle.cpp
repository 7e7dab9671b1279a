#include "symfold/oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace symfold {

namespace {

void check_size(const Ordering& ordering, const EnumerationConfig& cfg) {
    const int cap = std::min(cfg.max_n, kOracleMaxN);
    if (ordering.size() > cap) {
        throw std::length_error("oracle limited to N <= " + std::to_string(cap) + ", got " +
                                std::to_string(ordering.size()));
    }
}

bool pair_allowed(const Ordering& o, const EnumerationConfig& cfg, int i, int j) {
    if (!cfg.rule.can_pair(o.base(i), o.base(j))) return false;
    return o.nicks_between(i, j) > 0 || j - i - 1 >= cfg.min_hairpin;
}

// Plain flood fill over backbone and pair edges.
bool connected(const Ordering& o, const PairList& pairs) {
    const int n = o.size();
    std::vector<int> mate(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& p : pairs) {
        mate[static_cast<std::size_t>(p.i)] = p.j;
        mate[static_cast<std::size_t>(p.j)] = p.i;
    }
    std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> todo{1};
    seen[1] = 1;
    int reached = 0;
    while (!todo.empty()) {
        int b = todo.back();
        todo.pop_back();
        ++reached;
        int next[3] = {b > 1 && !o.is_nick(b - 1) ? b - 1 : 0, b < n && !o.is_nick(b) ? b + 1 : 0,
                       mate[static_cast<std::size_t>(b)]};
        for (int q : next) {
            if (q != 0 && !seen[static_cast<std::size_t>(q)]) {
                seen[static_cast<std::size_t>(q)] = 1;
                todo.push_back(q);
            }
        }
    }
    return reached == n;
}

class IntervalEnumerator {
   public:
    IntervalEnumerator(const Ordering& o, const EnumerationConfig& cfg, const std::function<void(const PairList&)>& visit)
        : o_(o), cfg_(cfg), visit_(visit) {}

    std::uint64_t run() {
        pending_.push_back({1, o_.size()});
        step();
        return count_;
    }

   private:
    void step() {
        if (pending_.empty()) {
            if (connected(o_, pairs_)) {
                if (++count_ > cfg_.max_structures) throw std::length_error("oracle structure cap exceeded");
                visit_(pairs_);
            }
            return;
        }
        const auto [a, b] = pending_.back();
        pending_.pop_back();
        if (a > b) {
            step();
        } else {
            pending_.push_back({a, b - 1});
            step();
            pending_.pop_back();
            for (int k = a; k < b; ++k) {
                if (!pair_allowed(o_, cfg_, k, b)) continue;
                pairs_.push_back(BasePair{k, b});
                pending_.push_back({a, k - 1});
                pending_.push_back({k + 1, b - 1});
                step();
                pending_.pop_back();
                pending_.pop_back();
                pairs_.pop_back();
            }
        }
        pending_.push_back({a, b});
    }

    const Ordering& o_;
    const EnumerationConfig& cfg_;
    const std::function<void(const PairList&)>& visit_;
    std::vector<std::pair<int, int>> pending_;
    PairList pairs_;
    std::uint64_t count_ = 0;
};

}  // namespace

std::uint64_t enumerate_structures(const Ordering& ordering, const EnumerationConfig& cfg,
                                   const std::function<void(const PairList&)>& visit) {
    check_size(ordering, cfg);
    IntervalEnumerator walker(ordering, cfg, visit);
    return walker.run();
}

std::vector<PairList> enumerate_by_subsets(const Ordering& ordering, const EnumerationConfig& cfg) {
    const int n = ordering.size();
    if (n > 8) throw std::length_error("subset enumeration limited to N <= 8");
    PairList candidates;
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            if (cfg.rule.can_pair(ordering.base(i), ordering.base(j))) candidates.push_back(BasePair{i, j});
        }
    }
    std::vector<PairList> out;
    const std::uint64_t subsets = 1ULL << candidates.size();
    for (std::uint64_t mask = 0; mask < subsets; ++mask) {
        PairList pick;
        for (std::size_t k = 0; k < candidates.size(); ++k) {
            if (mask >> k & 1ULL) pick.push_back(candidates[k]);
        }
        bool ok = true;
        for (std::size_t x = 0; x < pick.size() && ok; ++x) {
            for (std::size_t y = x + 1; y < pick.size() && ok; ++y) {
                const auto& p = pick[x];
                const auto& q = pick[y];
                const bool shares = p.i == q.i || p.i == q.j || p.j == q.i || p.j == q.j;
                const bool crosses = (p.i < q.i && q.i < p.j && p.j < q.j) || (q.i < p.i && p.i < q.j && q.j < p.j);
                ok = !shares && !crosses;
            }
        }
        if (!ok) continue;
        // A hairpin is a pair enclosing no other pair and no nick.
        for (const auto& p : pick) {
            bool encloses = false;
            for (const auto& q : pick) encloses = encloses || (p.i < q.i && q.j < p.j);
            if (!encloses && ordering.nicks_between(p.i, p.j) == 0 && p.j - p.i - 1 < cfg.min_hairpin) ok = false;
        }
        if (ok && connected(ordering, pick)) out.push_back(pick);
    }
    return out;
}

Energy oracle_naive_energy(const Ordering& o, const PairList& pairs, const EnergyModel& model) {
    const int n = o.size();
    std::vector<int> mate(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& p : pairs) {
        if (!model.can_pair(o, p.i, p.j)) return kInf;
        mate[static_cast<std::size_t>(p.i)] = p.j;
        mate[static_cast<std::size_t>(p.j)] = p.i;
    }
    Energy total = (o.strand_count() - 1) * model.assoc();
    for (const auto& p : pairs) {
        const int i = std::min(p.i, p.j);
        const int j = std::max(p.i, p.j);
        PairList inner;
        bool nick = false;
        int free_bases = 0;
        int b = i + 1;
        if (o.is_nick(i)) nick = true;
        while (b < j) {
            int q = mate[static_cast<std::size_t>(b)];
            if (q > b) {
                inner.push_back(BasePair{b, q});
                b = q;
            } else {
                ++free_bases;
            }
            if (b < j && o.is_nick(b)) nick = true;
            ++b;
        }
        Energy loop = 0;
        if (nick) {
            loop = 0;
        } else if (inner.empty()) {
            loop = model.hairpin(o, i, j);
        } else if (inner.size() == 1) {
            loop = model.interior(o, i, inner[0].i, inner[0].j, j);
        } else {
            loop = model.multi_init() + static_cast<Energy>(inner.size() + 1) * model.multi_bp() +
                   free_bases * model.multi_nt();
        }
        total = sat_add(total, loop);
    }
    return total;
}

int oracle_symmetry(const Ordering& o, const PairList& pairs) {
    const auto& types = o.type_sequence();
    const int c = o.strand_count();
    const int n = o.size();
    std::vector<int> mate(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& p : pairs) {
        mate[static_cast<std::size_t>(p.i)] = p.j;
        mate[static_cast<std::size_t>(p.j)] = p.i;
    }
    int group = 0;
    for (int k = 0; k < c; ++k) {
        bool same_types = true;
        for (int s = 0; s < c && same_types; ++s) {
            same_types = types[static_cast<std::size_t>(s)] == types[static_cast<std::size_t>((s + k) % c)];
        }
        if (!same_types) continue;
        const int shift = o.strand_start(k) - 1;
        bool fixed = true;
        for (int b = 1; b <= n && fixed; ++b) {
            const int m = mate[static_cast<std::size_t>(b)];
            const int rb = (b - 1 + shift) % n + 1;
            const int rm = m == 0 ? 0 : (m - 1 + shift) % n + 1;
            fixed = mate[static_cast<std::size_t>(rb)] == rm;
        }
        if (fixed) ++group;
    }
    return group;
}

OracleResult oracle_ordering(const std::shared_ptr<const Ordering>& ordering, const EnergyModel& model,
                             const EnumerationConfig& cfg) {
    OracleResult best;
    best.ordering = ordering;
    best.structures = enumerate_structures(*ordering, cfg, [&](const PairList& pairs) {
        const Energy naive = oracle_naive_energy(*ordering, pairs, model);
        if (naive >= kInf) return;
        best.snmfe = std::min(best.snmfe, naive);
        const int r = oracle_symmetry(*ordering, pairs);
        const double total = naive + symmetry_penalty(r, model.kbt());
        if (!best.feasible || total < best.energy) {
            best.feasible = true;
            best.energy = total;
            best.naive = naive;
            best.symmetry = r;
            best.pairs = pairs;
        }
    });
    return best;
}

OracleResult brute_mfe(const std::shared_ptr<const StrandSystem>& system, const EnergyModel& model,
                       const EnumerationConfig& cfg) {
    OracleResult best;
    std::uint64_t total = 0;
    Energy lowest_naive = kInf;
    for (const auto& ordering : circular_permutations(system)) {
        auto result = oracle_ordering(std::make_shared<const Ordering>(ordering), model, cfg);
        total += result.structures;
        lowest_naive = std::min(lowest_naive, result.snmfe);
        if (result.feasible && (!best.feasible || result.energy < best.energy)) best = result;
    }
    if (!best.feasible) throw InfeasibleError("no connected structure exists for this system");
    best.structures = total;
    best.snmfe = lowest_naive;
    return best;
}

}  // namespace symfold
