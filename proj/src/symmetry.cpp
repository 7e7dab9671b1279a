#include "symfold/symmetry.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace symfold {

namespace {

int max_degree(const Ordering& o) { return symmetry_profile(o).max_degree; }

bool is_bond(const Ordering& o, int b) { return b >= 1 && b <= o.size() - 1 && !o.is_nick(b); }

class Components {
   public:
    explicit Components(int n) : parent_(static_cast<std::size_t>(n) + 1) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    int find(int x) {
        while (parent_[static_cast<std::size_t>(x)] != x) x = parent_[static_cast<std::size_t>(x)] =
            parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent_[static_cast<std::size_t>(b)] = a;
        return true;
    }

   private:
    std::vector<int> parent_;
};

bool in_forward_interval(int x, int first, int last) {
    return first <= last ? (x >= first && x <= last) : (x >= first || x <= last);
}

}  // namespace

SymmetricCut generate_cut(int b, int r, const Ordering& ordering) {
    const int v = max_degree(ordering);
    if (r <= 1 || v % r != 0) {
        throw std::invalid_argument("cut degree " + std::to_string(r) + " does not divide v = " + std::to_string(v));
    }
    if (!is_bond(ordering, b)) throw std::invalid_argument("position " + std::to_string(b) + " is not a covalent bond");
    const int n = ordering.size();
    SymmetricCut cut;
    cut.r = r;
    cut.generator = b;
    for (int t = 0; t < r; ++t) cut.bonds.push_back(rotate_base(b, t * (n / r), n));
    std::sort(cut.bonds.begin(), cut.bonds.end());
    return cut;
}

std::vector<SymmetricCut> enumerate_cuts(const Ordering& ordering) {
    std::vector<SymmetricCut> out;
    const int n = ordering.size();
    for (int r : divisors(max_degree(ordering))) {
        if (r == 1) continue;
        // The smallest bond of an orbit lies in the first 1/r of the circle.
        for (int b = 1; b <= n / r; ++b) {
            if (is_bond(ordering, b)) out.push_back(generate_cut(b, r, ordering));
        }
    }
    return out;
}

long long cut_count_formula(const Ordering& ordering) {
    const long long v = max_degree(ordering);
    const long long n = ordering.size();
    const long long c = ordering.strand_count();
    return (n - c) / v * (divisor_sum(static_cast<int>(v)) - v);
}

bool bond_enclosed(int b, BasePair p, int n) {
    const int i = std::min(p.i, p.j);
    const int j = std::max(p.i, p.j);
    const int forward = j - i + 1;
    const int backward = n - (j - i) + 1;
    if (forward <= backward) return b >= i && b + 1 <= j;
    return (b >= j && b + 1 <= n) || (b >= 1 && b + 1 <= i);
}

bool is_admissible(const SymmetricCut& cut, const SecondaryStructure& s) {
    const int n = s.size();
    for (int b : cut.bonds) {
        for (const auto& p : s.pairs()) {
            if (bond_enclosed(b, p, n)) return false;
        }
    }
    return true;
}

SymmetricCut find_admissible_cut(const SecondaryStructure& s, int r) {
    const auto& o = s.ordering();
    const int n = s.size();
    const int v = max_degree(o);
    if (r <= 1 || v % r != 0 || !is_rotation_invariant(s, r)) {
        throw std::invalid_argument("structure is not " + std::to_string(r) + "-fold rotationally symmetric");
    }
    std::vector<int> candidates;
    if (s.empty()) {
        for (int b = 1; b < n; ++b) candidates.push_back(b);
    } else {
        const BasePair* widest = &s.pairs().front();
        for (const auto& p : s.pairs()) {
            if (segment_length(p.i, p.j, n) > segment_length(widest->i, widest->j, n)) widest = &p;
        }
        // Orient the shorter arc start..end in strand direction.
        int start = widest->i;
        int end = widest->j;
        if (widest->j - widest->i + 1 > n - (widest->j - widest->i) + 1) std::swap(start, end);
        candidates = {start - 1, end};
    }
    for (int b : candidates) {
        if (!is_bond(o, b)) continue;
        auto cut = generate_cut(b, r, o);
        if (is_admissible(cut, s)) return cut;
    }
    throw std::logic_error("no admissible cut found beside a maximal pair");
}

std::vector<SymmetricCut> admissible_cuts(const SecondaryStructure& s, int r) {
    std::vector<SymmetricCut> out;
    const auto& o = s.ordering();
    const int n = s.size();
    for (int b = 1; b <= n / r; ++b) {
        if (!is_bond(o, b)) continue;
        auto cut = generate_cut(b, r, o);
        if (is_admissible(cut, s)) out.push_back(std::move(cut));
    }
    return out;
}

int component_count_without(const SecondaryStructure& s, const std::vector<int>& removed_bonds) {
    const auto& o = s.ordering();
    const int n = s.size();
    Components uf(n);
    int count = n;
    for (int b = 1; b < n; ++b) {
        if (o.is_nick(b) || std::find(removed_bonds.begin(), removed_bonds.end(), b) != removed_bonds.end()) continue;
        if (uf.unite(b, b + 1)) --count;
    }
    for (const auto& p : s.pairs()) {
        if (uf.unite(p.i, p.j)) --count;
    }
    return count;
}

std::vector<Slice> slices(const SecondaryStructure& s, const SymmetricCut& cut) {
    if (!is_admissible(cut, s)) throw std::invalid_argument("cut is not admissible for this structure");
    const int n = s.size();
    const int r = static_cast<int>(cut.bonds.size());
    std::vector<Slice> out;
    for (int k = 0; k < r; ++k) {
        Slice slice;
        slice.first = cut.bonds[static_cast<std::size_t>(k)] + 1;
        slice.last = cut.bonds[static_cast<std::size_t>((k + 1) % r)];
        for (int b = slice.first;; b = b % n + 1) {
            slice.bases.push_back(b);
            if (b == slice.last) break;
        }
        for (const auto& p : s.pairs()) {
            if (in_forward_interval(p.i, slice.first, slice.last) && in_forward_interval(p.j, slice.first, slice.last)) {
                slice.pairs.push_back(p);
            }
        }
        out.push_back(std::move(slice));
    }
    return out;
}

CentralLoop central_loop(const SecondaryStructure& s, const SymmetricCut& cut) {
    if (!is_admissible(cut, s)) throw std::invalid_argument("cut is not admissible for this structure");
    const int b = cut.bonds.front();
    // Innermost pair containing the bond in linear order closes the face holding it.
    std::optional<BasePair> closing;
    for (const auto& p : s.pairs()) {
        if (p.i <= b && b + 1 <= p.j && (!closing || p.i > closing->i)) closing = p;
    }
    CentralLoop out;
    out.cut_bonds = cut.bonds;
    for (const auto& loop : loop_decomposition(s)) {
        if (loop.closing != closing) continue;
        out.kind = loop.kind;
        if (loop.closing) out.bordering.push_back(*loop.closing);
        out.bordering.insert(out.bordering.end(), loop.inner.begin(), loop.inner.end());
        std::sort(out.bordering.begin(), out.bordering.end());
        return out;
    }
    throw std::logic_error("cut bond lies in no face");
}

SecondaryStructure slice_and_swap(const SecondaryStructure& s_i, const SecondaryStructure& s_j,
                                  const SymmetricCut& cut) {
    if (!(s_i.ordering() == s_j.ordering())) throw std::invalid_argument("structures use different orderings");
    if (s_i.pairs() == s_j.pairs()) throw std::invalid_argument("slice_and_swap needs two distinct structures");
    if (rotational_symmetry(s_i) != cut.r || rotational_symmetry(s_j) != cut.r) {
        throw std::invalid_argument("both structures need symmetry equal to the cut degree");
    }
    if (!is_admissible(cut, s_i) || !is_admissible(cut, s_j)) {
        throw std::invalid_argument("cut is not admissible for both structures");
    }
    if (cut.r == 2) {
        const auto ci = central_loop(s_i, cut);
        const auto cj = central_loop(s_j, cut);
        const bool both_multi = ci.kind == LoopKind::Multiloop && cj.kind == LoopKind::Multiloop;
        const bool same_two_pair = ci.kind != LoopKind::Multiloop && cj.kind != LoopKind::Multiloop &&
                                   ci.bordering == cj.bordering;
        if (!both_multi && !same_two_pair) {
            throw std::invalid_argument("2-fold structures need multiloop centres or one shared central loop");
        }
    }
    const int first = cut.bonds[0] + 1;
    const int last = cut.bonds[1];
    auto inside = [&](const BasePair& p) { return p.i >= first && p.j <= last; };
    std::vector<BasePair> pairs;
    for (const auto& p : s_i.pairs()) {
        if (!inside(p)) pairs.push_back(p);
    }
    for (const auto& p : s_j.pairs()) {
        if (inside(p)) pairs.push_back(p);
    }
    return SecondaryStructure(s_i.ordering_ptr(), std::move(pairs));
}

BoundTerms upper_bound_terms(const Ordering& ordering, const PairingRule& rule) {
    BoundTerms terms;
    terms.cut_term = cut_count_formula(ordering);
    const int v = max_degree(ordering);
    if (v % 2 == 0) {
        const auto& types = ordering.system().types();
        for (int slot = 0; slot < ordering.strand_count() / 2; ++slot) {
            const auto& seq = types[static_cast<std::size_t>(ordering.type_sequence()[static_cast<std::size_t>(slot)])]
                                  .strand.sequence;
            long long a = 0, t = 0, g = 0, c = 0;
            for (char ch : seq) {
                a += ch == 'A';
                t += ch == 'T' || ch == 'U';
                g += ch == 'G';
                c += ch == 'C';
            }
            terms.internal_term += a * t + g * c + (rule.wobble ? g * t : 0);
        }
    }
    return terms;
}

long long upper_bound_U(const Ordering& ordering, const PairingRule& rule) {
    return upper_bound_terms(ordering, rule).total();
}

}  // namespace symfold
