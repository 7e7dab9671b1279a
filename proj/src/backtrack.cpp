#include "symfold/backtrack.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <exception>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "symfold/symmetry.hpp"

namespace symfold {

std::string to_string(const Segment& s) {
    std::string out = "[" + std::to_string(s.i) + "," + std::to_string(s.j) + "]";
    out += s.t == SegType::Box ? "^box" : (s.t == SegType::B ? "^b" : "^m");
    if (s.q == Qual::Int) out += "_int:" + std::to_string(s.k);
    if (s.q == Qual::Mul) out += "_mul:" + std::to_string(s.k);
    return out;
}

std::string to_string(Termination t) {
    switch (t) {
        case Termination::Asymmetric:
            return "asymmetric";
        case Termination::Collision:
            return "collision";
        case Termination::AboveBound:
            return "above-bound";
    }
    return "unknown";
}

std::vector<Segment> PartialStructure::segments() const {
    std::vector<Segment> out;
    for (const SegmentCell* c = delta.get(); c; c = c->next.get()) out.push_back(c->seg);
    return out;
}

std::vector<BasePair> PartialStructure::pair_list() const {
    std::vector<BasePair> out;
    for (const PairCell* c = pairs.get(); c; c = c->next.get()) out.push_back(c->pair);
    std::sort(out.begin(), out.end());
    return out;
}

Energy segment_energy(const DPState& dp, const Segment& seg) {
    const int i = seg.i;
    const int j = seg.j;
    switch (seg.t) {
        case SegType::Box:
            return dp.m(i, j);
        case SegType::B:
            if (seg.q == Qual::Null) return dp.mb(i, j);
            if (!dp.has_tensors()) throw std::logic_error("backtracking needs the auxiliary tensors");
            if (seg.k - 1 < i + 2 || seg.k - 1 > j - 1) return kInf;
            return dp.aux_at(seg.q == Qual::Int ? AuxKind::BInt : AuxKind::BMul, i, j, seg.k - 1);
        case SegType::M:
            if (seg.q == Qual::Null) return dp.mm(i, j);
            if (!dp.has_tensors()) throw std::logic_error("backtracking needs the auxiliary tensors");
            if (seg.q == Qual::Int || seg.k - 1 < i + 1 || seg.k - 1 > j) return kInf;
            return dp.aux_at(AuxKind::M2, i, j, seg.k - 1);
    }
    return kInf;
}

Energy attainable_energy(const PartialStructure& s, const DPState& dp) {
    Energy e = s.loops;
    for (const SegmentCell* c = s.delta.get(); c; c = c->next.get()) e = sat_add(e, segment_energy(dp, c->seg));
    return e;
}

PartialStructure make_partial(const DPState& dp, const std::vector<Segment>& stack, const std::vector<BasePair>& pairs,
                              Energy loops) {
    PartialStructure s;
    for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
        s.delta = std::make_shared<const SegmentCell>(SegmentCell{*it, s.delta});
    }
    for (const auto& p : pairs) s.pairs = std::make_shared<const PairCell>(PairCell{p, s.pairs});
    s.loops = loops;
    s.e = attainable_energy(s, dp);
    return s;
}

PartialStructure root_structure(const DPState& dp) {
    return make_partial(dp, {Segment{1, dp.size(), SegType::Box}}, {}, 0);
}

namespace {

class ChildBuilder {
   public:
    ChildBuilder(const PartialStructure& parent, const DPState& dp) : dp_(dp), parent_(parent) {
        rest_ = parent.delta->next;
        held_ = parent.loops;
        for (const SegmentCell* c = rest_.get(); c; c = c->next.get()) held_ = sat_add(held_, segment_energy(dp, c->seg));
    }

    /// New segments are listed top first.
    void emit(std::initializer_list<Segment> segs, std::optional<BasePair> pair, Energy loop) {
        Energy e = sat_add(held_, loop);
        for (const auto& s : segs) e = sat_add(e, segment_energy(dp_, s));
        if (!is_finite(e)) return;
        PartialStructure child;
        child.delta = rest_;
        for (auto it = std::rbegin(segs); it != std::rend(segs); ++it) {
            child.delta = std::make_shared<const SegmentCell>(SegmentCell{*it, child.delta});
        }
        child.pairs = parent_.pairs;
        if (pair) child.pairs = std::make_shared<const PairCell>(PairCell{*pair, child.pairs});
        child.loops = sat_add(parent_.loops, loop);
        child.e = e;
        out.push_back(std::move(child));
    }

    std::vector<PartialStructure> out;

   private:
    const DPState& dp_;
    const PartialStructure& parent_;
    std::shared_ptr<const SegmentCell> rest_;
    Energy held_ = 0;
};

void refine_box(const Segment& s, const Ordering& o, ChildBuilder& cb) {
    const int i = s.i;
    const int j = s.j;
    if (j < i) {
        cb.emit({}, std::nullopt, 0);
        return;
    }
    if (j == i || !o.is_nick(j - 1)) cb.emit({Segment{i, j - 1, SegType::Box}}, std::nullopt, 0);
    for (int d = i; d <= j - 1; ++d) {
        if (d != i && o.is_nick(d - 1)) continue;
        cb.emit({Segment{i, d - 1, SegType::Box}, Segment{d, j, SegType::B}}, std::nullopt, 0);
    }
}

// Restricted two-pair loop: bases k..j-1 unpaired.
void refine_b_int(int i, int j, int k, const Ordering& o, const EnergyModel& model, ChildBuilder& cb) {
    cb.emit({Segment{i, j, SegType::B, Qual::Int, k - 1}}, std::nullopt, 0);
    if (o.nicks_between(k - 1, j) != 0) return;
    for (int d = i + 1; d <= k - 2; ++d) {
        if (o.nicks_between(i, d) != 0) break;
        cb.emit({Segment{d, k - 1, SegType::B}}, BasePair{i, j}, model.interior(o, i, d, k - 1, j));
    }
}

// Restricted multiloop: bases k..j-1 unpaired.
void refine_b_mul(int i, int j, int k, const Ordering& o, const EnergyModel& model, ChildBuilder& cb) {
    cb.emit({Segment{i, j, SegType::B, Qual::Mul, k - 1}}, std::nullopt, 0);
    if (o.nicks_between(k - 1, j) != 0 || o.is_nick(i)) return;
    const Energy loop = model.multi_init() + 2 * model.multi_bp() + (j - k) * model.multi_nt();
    for (int d = i + 1; d <= k - 2; ++d) {
        if (o.is_nick(d - 1)) continue;
        cb.emit({Segment{i + 1, d - 1, SegType::M}, Segment{d, k - 1, SegType::B}}, BasePair{i, j}, loop);
    }
}

void refine_b(const Segment& s, const Ordering& o, const EnergyModel& model, ChildBuilder& cb) {
    const int i = s.i;
    const int j = s.j;
    if (s.q == Qual::Int) {
        refine_b_int(i, j, s.k, o, model, cb);
        return;
    }
    if (s.q == Qual::Mul) {
        refine_b_mul(i, j, s.k, o, model, cb);
        return;
    }
    if (o.nicks_between(i, j) == 0) cb.emit({}, BasePair{i, j}, model.hairpin(o, i, j));
    refine_b_int(i, j, j, o, model, cb);
    refine_b_mul(i, j, j, o, model, cb);
    for (int x = i; x <= j - 1; ++x) {
        if (!o.is_nick(x)) continue;
        const bool guard = (!o.is_nick(i) && !o.is_nick(j - 1)) || i == j - 1 || (x == i && !o.is_nick(j - 1)) ||
                           (x == j - 1 && !o.is_nick(i));
        if (!guard) continue;
        cb.emit({Segment{i + 1, x, SegType::Box}, Segment{x + 1, j - 1, SegType::Box}}, BasePair{i, j}, 0);
    }
}

void refine_m(const Segment& s, const Ordering& o, const EnergyModel& model, ChildBuilder& cb) {
    const int i = s.i;
    const int j = s.j;
    const Energy bp = model.multi_bp();
    const Energy nt = model.multi_nt();
    if (s.q == Qual::Mul) {
        // Bases k..j unpaired, at least two pairs to the left.
        const int k = s.k;
        cb.emit({Segment{i, j, SegType::M, Qual::Mul, k - 1}}, std::nullopt, 0);
        if (o.nicks_between(k - 1, j) != 0) return;
        for (int d = i; d <= k - 2; ++d) {
            if (o.is_nick(d - 1)) continue;
            cb.emit({Segment{i, d - 1, SegType::M}, Segment{d, k - 1, SegType::B}}, std::nullopt,
                    bp + (j - k + 1) * nt);
        }
        return;
    }
    if (j > i && !o.is_nick(j - 1)) cb.emit({Segment{i, j - 1, SegType::M}}, std::nullopt, nt);
    for (int d = i; d <= j - 1; ++d) {
        if (o.nicks_between(i, d) == 0) cb.emit({Segment{d, j, SegType::B}}, std::nullopt, bp + (d - i) * nt);
        if (d > i && !o.is_nick(d - 1)) {
            cb.emit({Segment{i, d - 1, SegType::M}, Segment{d, j, SegType::B}}, std::nullopt, bp);
        }
    }
}

}  // namespace

std::vector<PartialStructure> refine(const PartialStructure& s, const DPState& dp, const EnergyModel& model) {
    if (s.fully_specified()) throw std::invalid_argument("refine of a fully specified structure");
    const Ordering& o = dp.ordering();
    ChildBuilder cb(s, dp);
    const Segment& top = s.delta->seg;
    switch (top.t) {
        case SegType::Box:
            refine_box(top, o, cb);
            break;
        case SegType::B:
            refine_b(top, o, model, cb);
            break;
        case SegType::M:
            refine_m(top, o, model, cb);
            break;
    }
    return std::move(cb.out);
}

std::vector<RegistryKey> registry_keys(const SecondaryStructure& s, int r) {
    std::vector<RegistryKey> keys;
    const auto centre = central_loop(s, find_admissible_cut(s, r));
    if (r == 2 && centre.kind != LoopKind::Multiloop) {
        if (centre.bordering.size() != 2) throw std::logic_error("two-fold centre without two bordering pairs");
        keys.emplace_back(std::make_pair(centre.bordering[0], centre.bordering[1]));
        return keys;
    }
    for (const auto& cut : admissible_cuts(s, r)) keys.emplace_back(cut.key());
    return keys;
}

SecondaryStructure collision_witness(const SecondaryStructure& earlier, const SecondaryStructure& later,
                                     const RegistryKey& key) {
    if (const auto* cut_key = std::get_if<CutKey>(&key)) {
        return slice_and_swap(earlier, later, generate_cut(cut_key->min_bond, cut_key->r, later.ordering()));
    }
    auto mine = admissible_cuts(later, 2);
    auto theirs = admissible_cuts(earlier, 2);
    for (const auto& c : mine) {
        for (const auto& t : theirs) {
            if (t.bonds == c.bonds) return slice_and_swap(earlier, later, c);
        }
    }
    throw std::logic_error("two-fold structures with one centre share no cut");
}

namespace {

bool earlier(const PartialStructure& a, const PartialStructure& b) {
    return a.e != b.e ? a.e < b.e : a.seq < b.seq;
}

/// Candidates waiting for selection, one array per scanned structure.
class ArrayPool {
   public:
    void open() { arrays_.emplace_back(); mins_.push_back(kNone); }
    void push(PartialStructure s) {
        arrays_.back().push_back(std::move(s));
        ++stored_;
    }
    void close() { mins_.back() = find_min(arrays_.back()); }
    std::size_t stored() const { return stored_; }

    /// Smallest cached minimum, or nullptr.
    const PartialStructure* peek() {
        best_ = kNone;
        for (std::size_t a = 0; a < arrays_.size(); ++a) {
            if (mins_[a] == kNone) continue;
            if (best_ == kNone || earlier(arrays_[a][mins_[a]], arrays_[best_][mins_[best_]])) best_ = a;
        }
        return best_ == kNone ? nullptr : &arrays_[best_][mins_[best_]];
    }

    /// Removes the element returned by the last peek and recomputes that array's minimum.
    PartialStructure take(std::uint64_t& recomputes) {
        auto& arr = arrays_[best_];
        PartialStructure s = std::move(arr[mins_[best_]]);
        arr[mins_[best_]] = std::move(arr.back());
        arr.pop_back();
        --stored_;
        mins_[best_] = find_min(arr);
        ++recomputes;
        return s;
    }

   private:
    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

    static std::size_t find_min(const std::vector<PartialStructure>& arr) {
        if (arr.empty()) return kNone;
        std::size_t m = 0;
        for (std::size_t k = 1; k < arr.size(); ++k) {
            if (earlier(arr[k], arr[m])) m = k;
        }
        return m;
    }

    std::vector<std::vector<PartialStructure>> arrays_;
    std::vector<std::size_t> mins_;
    std::size_t best_ = kNone;
    std::size_t stored_ = 0;
};

/// Single sorted list capped at `limit`; the candidates of the current scan wait in `pending_`.
class MergedPool {
   public:
    explicit MergedPool(std::size_t limit) : limit_(limit) {}
    void open() {}
    void push(PartialStructure s) { pending_.push_back(std::move(s)); }
    void close() {
        std::sort(pending_.begin(), pending_.end(), earlier);
        std::vector<PartialStructure> merged;
        merged.reserve(std::min(limit_, list_.size() + pending_.size()));
        std::merge(std::make_move_iterator(list_.begin()), std::make_move_iterator(list_.end()),
                   std::make_move_iterator(pending_.begin()), std::make_move_iterator(pending_.end()),
                   std::back_inserter(merged), earlier);
        if (merged.size() > limit_) merged.resize(limit_);
        list_.assign(std::make_move_iterator(merged.begin()), std::make_move_iterator(merged.end()));
        pending_.clear();
    }
    std::size_t stored() const { return list_.size() + pending_.size(); }
    const PartialStructure* peek() { return list_.empty() ? nullptr : &list_.front(); }
    PartialStructure take(std::uint64_t& recomputes) {
        PartialStructure s = std::move(list_.front());
        list_.pop_front();
        ++recomputes;
        return s;
    }

   private:
    std::size_t limit_;
    std::deque<PartialStructure> list_;
    std::vector<PartialStructure> pending_;
};

struct Witness {
    Energy level = kInf;
    int symmetry = 1;
    std::vector<BasePair> pairs;
};

template <class Pool>
MfeResult search(const DPState& dp, const EnergyModel& model, const SearchOptions& options, Pool& pool) {
    const Ordering& o = dp.ordering();
    const auto ordering = dp.ordering_ptr();
    const double kbt = model.kbt();
    const int v = symmetry_profile(o).max_degree;

    MfeResult result;
    result.ordering = ordering;
    result.snmfe = snmfe(dp);
    result.bound = upper_bound_U(o, model.pairing());
    SearchStats& st = result.stats;

    Energy level = dp.m_total();
    if (!is_finite(level)) throw InfeasibleError("no connected structure for ordering " + o.label());
    double bound = level + symmetry_penalty(v, kbt);
    Witness best;
    std::map<RegistryKey, std::vector<BasePair>> registry;
    std::set<std::vector<BasePair>> seen;
    std::uint64_t seq = 0;

    auto finish = [&](Termination reason, const std::vector<BasePair>& pairs, Energy naive_level, int r) {
        result.reason = reason;
        result.witness = pairs;
        result.naive = sat_add(naive_level, dp.association());
        result.symmetry = r;
        result.energy = result.naive + symmetry_penalty(r, kbt);
        return result;
    };

    PartialStructure current = root_structure(dp);
    current.seq = seq++;
    pool.open();
    for (;;) {
        if (!current.fully_specified()) {
            auto children = refine(current, dp, model);
            ++st.refinements;
            st.max_children = std::max<std::uint64_t>(st.max_children, children.size());
            bool continued = false;
            PartialStructure next;
            for (auto& child : children) {
                child.seq = seq++;
                if (!continued && child.e == level) {
                    next = std::move(child);
                    continued = true;
                } else if (child.e <= bound) {
                    pool.push(std::move(child));
                }
            }
            if (!continued) throw std::logic_error("no child keeps the attainable energy of its parent");
            st.peak_stored = std::max<std::uint64_t>(st.peak_stored, pool.stored());
            current = std::move(next);
            continue;
        }

        auto pairs = current.pair_list();
        SecondaryStructure s(ordering, pairs);
        const int r = rotational_symmetry(s);
        ++st.scanned;
        if (options.audit) {
            if (!seen.insert(pairs).second) st.unique_scans = false;
            st.scans.push_back(ScanRecord{level, r, pairs});
        }
        if (r == 1) return finish(Termination::Asymmetric, pairs, level, 1);

        ++st.symmetric;
        const double corrected = level + symmetry_penalty(r, kbt);
        if (!is_finite(best.level) ? corrected <= bound : corrected < bound) {
            bound = std::min(bound, corrected);
            best = Witness{level, r, pairs};
        }

        const auto keys = registry_keys(s, r);
        for (const auto& key : keys) {
            auto hit = registry.find(key);
            if (hit == registry.end()) continue;
            auto swapped = collision_witness(SecondaryStructure(ordering, hit->second), s, key);
            const Energy naive = naive_free_energy(swapped, model);
            if (naive != sat_add(level, dp.association()) || rotational_symmetry(swapped) != 1) {
                throw std::logic_error("slice-and-swap witness does not sit on the current level");
            }
            return finish(Termination::Collision, swapped.pairs(), level, 1);
        }
        for (const auto& key : keys) registry.emplace(key, pairs);
        if (static_cast<long long>(st.symmetric) > result.bound) {
            throw std::logic_error("symmetric scans exceed the bound for ordering " + o.label());
        }

        pool.close();
        const PartialStructure* top = pool.peek();
        if (top == nullptr || top->e > bound) return finish(Termination::AboveBound, best.pairs, best.level, best.symmetry);
        ++st.selections;
        current = pool.take(st.min_recomputes);
        if (current.e < level) st.levels_non_decreasing = false;
        level = current.e;
        pool.open();
    }
}

}  // namespace

MfeResult true_mfe(const DPState& dp, const EnergyModel& model, const SearchOptions& options) {
    if (!dp.has_tensors()) throw std::logic_error("backtracking needs the auxiliary tensors");
    if (options.low_mem) {
        const long long u = upper_bound_U(dp.ordering(), model.pairing());
        MergedPool pool(static_cast<std::size_t>(u) + 2);
        return search(dp, model, options, pool);
    }
    ArrayPool pool;
    return search(dp, model, options, pool);
}

int worker_count() {
    if (const char* env = std::getenv("MFE_THREADS")) {
        char* end = nullptr;
        long n = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && n >= 1) return static_cast<int>(n);
    }
    return static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
}

SystemMfe mfe_orderings(const std::vector<Ordering>& orderings, const EnergyModel& model,
                        const SearchOptions& options) {
    SystemMfe out;
    out.per_ordering.resize(orderings.size());
    out.feasible.assign(orderings.size(), false);
    std::vector<char> ok(orderings.size(), 0);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= orderings.size()) return;
            try {
                auto ordering = std::make_shared<const Ordering>(orderings[idx]);
                auto dp = fill(ordering, model);
                if (!is_finite(dp.m_total())) continue;
                out.per_ordering[idx] = true_mfe(dp, model, options);
                ok[idx] = 1;
            } catch (const InfeasibleError&) {
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    const int workers = std::min<int>(worker_count(), static_cast<int>(std::max<std::size_t>(orderings.size(), 1)));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    bool any = false;
    for (std::size_t idx = 0; idx < orderings.size(); ++idx) {
        out.feasible[idx] = ok[idx] != 0;
        if (!ok[idx]) continue;
        if (!any || out.per_ordering[idx].energy < out.per_ordering[out.best].energy) out.best = idx;
        any = true;
    }
    if (!any) throw InfeasibleError("no ordering admits a connected structure");
    return out;
}

SystemMfe mfe_all_orderings(const std::shared_ptr<const StrandSystem>& system, const EnergyModel& model,
                            const SearchOptions& options) {
    return mfe_orderings(circular_permutations(system), model, options);
}

}  // namespace symfold
