#include "symfold/structure.hpp"

#include <cctype>
#include <numeric>
#include <stdexcept>

namespace symfold {

SecondaryStructure::SecondaryStructure(std::shared_ptr<const Ordering> ordering, std::vector<BasePair> pairs)
    : ordering_(std::move(ordering)), pairs_(std::move(pairs)) {
    if (!ordering_) throw std::invalid_argument("structure without an ordering");
    const int n = ordering_->size();
    partner_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (auto& p : pairs_) {
        if (p.i > p.j) std::swap(p.i, p.j);
        if (p.i < 1 || p.j > n || p.i == p.j) {
            throw std::invalid_argument("pair (" + std::to_string(p.i) + "," + std::to_string(p.j) + ") out of range");
        }
        if (partner_[static_cast<std::size_t>(p.i)] != 0 || partner_[static_cast<std::size_t>(p.j)] != 0) {
            throw std::invalid_argument("base paired twice in (" + std::to_string(p.i) + "," + std::to_string(p.j) + ")");
        }
        partner_[static_cast<std::size_t>(p.i)] = p.j;
        partner_[static_cast<std::size_t>(p.j)] = p.i;
    }
    std::sort(pairs_.begin(), pairs_.end());
}

std::size_t structure_hash(const SecondaryStructure& s) {
    std::size_t h = 1469598103934665603ULL;
    auto mix = [&h](std::size_t v) {
        h ^= v;
        h *= 1099511628211ULL;
    };
    for (int t : s.ordering().type_sequence()) mix(static_cast<std::size_t>(t) + 7);
    for (const auto& p : s.pairs()) {
        mix(static_cast<std::size_t>(p.i));
        mix(static_cast<std::size_t>(p.j));
    }
    return h;
}

bool is_complementary(const SecondaryStructure& s, const PairingRule& rule) {
    const auto& o = s.ordering();
    return std::all_of(s.pairs().begin(), s.pairs().end(),
                       [&](const BasePair& p) { return rule.can_pair(o.base(p.i), o.base(p.j)); });
}

bool is_unpseudoknotted(const SecondaryStructure& s) {
    std::vector<int> open;
    for (int b = 1; b <= s.size(); ++b) {
        int q = s.partner(b);
        if (q == 0) continue;
        if (q > b) {
            open.push_back(b);
        } else {
            if (open.empty() || open.back() != q) return false;
            open.pop_back();
        }
    }
    return true;
}

namespace {

class UnionFind {
   public:
    explicit UnionFind(int n) : parent_(static_cast<std::size_t>(n)) { std::iota(parent_.begin(), parent_.end(), 0); }

    int find(int x) {
        while (parent_[static_cast<std::size_t>(x)] != x) {
            parent_[static_cast<std::size_t>(x)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
            x = parent_[static_cast<std::size_t>(x)];
        }
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

}  // namespace

bool is_connected(const SecondaryStructure& s) {
    const auto& o = s.ordering();
    const int n = s.size();
    UnionFind uf(n + 1);
    int components = n;
    for (int b = 1; b < n; ++b) {
        if (!o.is_nick(b) && uf.unite(b, b + 1)) --components;
    }
    for (const auto& p : s.pairs()) {
        if (uf.unite(p.i, p.j)) --components;
    }
    return components == 1;
}

std::string to_string(LoopKind kind) {
    switch (kind) {
        case LoopKind::Hairpin:
            return "hairpin";
        case LoopKind::Stack:
            return "stack";
        case LoopKind::Bulge:
            return "bulge";
        case LoopKind::Interior:
            return "interior";
        case LoopKind::Multiloop:
            return "multiloop";
        case LoopKind::Exterior:
            return "exterior";
    }
    return "unknown";
}

namespace {

Loop build_loop(const SecondaryStructure& s, int i, int j) {
    const auto& o = s.ordering();
    const int n = s.size();
    Loop loop;
    if (i >= 1) loop.closing = BasePair{i, j};

    // Walk the face from i to j, hopping over enclosed pairs.
    auto add_arc = [&](int from, int to) {
        // from and to are the paired (or virtual) bases bounding the arc.
        for (int b = std::max(from, 1); b <= std::min(to - 1, n); ++b) {
            if (o.is_nick(b)) loop.nicks.push_back(b);
        }
        if (to - from > 1) {
            loop.unpaired_spans.emplace_back(from + 1, to - 1);
            loop.unpaired += to - from - 1;
        }
    };
    int p = i;
    int a = i + 1;
    while (a < j) {
        int q = s.partner(a);
        if (q > a) {
            add_arc(p, a);
            loop.inner.push_back(BasePair{a, q});
            p = q;
            a = q + 1;
        } else {
            ++a;
        }
    }
    add_arc(p, j);

    if (!loop.nicks.empty() || !loop.closing) {
        loop.kind = LoopKind::Exterior;
    } else if (loop.inner.empty()) {
        loop.kind = LoopKind::Hairpin;
    } else if (loop.inner.size() == 1) {
        const int left = loop.inner[0].i - i - 1;
        const int right = j - loop.inner[0].j - 1;
        if (left == 0 && right == 0) {
            loop.kind = LoopKind::Stack;
        } else if (left == 0 || right == 0) {
            loop.kind = LoopKind::Bulge;
        } else {
            loop.kind = LoopKind::Interior;
        }
    } else {
        loop.kind = LoopKind::Multiloop;
    }
    return loop;
}

}  // namespace

std::vector<Loop> loop_decomposition(const SecondaryStructure& s) {
    if (!is_unpseudoknotted(s)) throw std::invalid_argument("loop decomposition of a pseudoknotted structure");
    if (!is_connected(s)) throw std::invalid_argument("loop decomposition of a disconnected structure");
    std::vector<Loop> loops;
    if (s.empty()) return loops;
    loops.push_back(build_loop(s, 0, s.size() + 1));
    for (const auto& p : s.pairs()) loops.push_back(build_loop(s, p.i, p.j));
    return loops;
}

BasePair rotate_pair(BasePair p, int shift, int n) {
    int a = rotate_base(p.i, shift, n);
    int b = rotate_base(p.j, shift, n);
    if (a > b) std::swap(a, b);
    return BasePair{a, b};
}

bool is_rotation_invariant(const SecondaryStructure& s, int r) {
    const int n = s.size();
    if (r <= 1) return true;
    if (n % r != 0) return false;
    const int shift = n / r;
    for (const auto& p : s.pairs()) {
        BasePair q = rotate_pair(p, shift, n);
        if (s.partner(q.i) != q.j) return false;
    }
    return true;
}

int rotational_symmetry(const SecondaryStructure& s) {
    const auto profile = symmetry_profile(s.ordering());
    auto candidates = divisors(profile.max_degree);
    for (auto it = candidates.rbegin(); it != candidates.rend(); ++it) {
        if (is_rotation_invariant(s, *it)) return *it;
    }
    return 1;
}

std::string serialize_dotbracket(const SecondaryStructure& s, std::optional<long long> energy) {
    const auto& o = s.ordering();
    std::string out;
    for (int b = 1; b <= s.size(); ++b) {
        int q = s.partner(b);
        out += q == 0 ? '.' : (q > b ? '(' : ')');
        if (b < s.size() && o.is_nick(b)) out += '+';
    }
    if (energy) out += " # energy=" + std::to_string(*energy);
    return out;
}

SecondaryStructure parse_dotbracket(std::string_view text, std::shared_ptr<const Ordering> ordering,
                                    const PairingRule& rule) {
    if (auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
    const int n = ordering->size();
    std::vector<BasePair> pairs;
    std::vector<int> open;
    int b = 0;
    bool expect_nick = false;
    for (char ch : text) {
        if (std::isspace(static_cast<unsigned char>(ch))) continue;
        if (ch == '+') {
            if (!expect_nick) throw ParseError("unexpected '+' after base " + std::to_string(b));
            expect_nick = false;
            continue;
        }
        if (expect_nick) throw ParseError("missing '+' after base " + std::to_string(b));
        ++b;
        if (b > n) throw ParseError("dot-bracket longer than the ordering");
        switch (ch) {
            case '.':
                break;
            case '(':
                open.push_back(b);
                break;
            case ')':
                if (open.empty()) throw ParseError("unbalanced ')' at base " + std::to_string(b));
                pairs.push_back(BasePair{open.back(), b});
                open.pop_back();
                break;
            default:
                throw ParseError("illegal dot-bracket character '" + std::string(1, ch) + "'");
        }
        expect_nick = b < n && ordering->is_nick(b);
    }
    if (b != n) throw ParseError("dot-bracket has " + std::to_string(b) + " bases, expected " + std::to_string(n));
    if (!open.empty()) throw ParseError("unbalanced '(' at base " + std::to_string(open.back()));
    for (const auto& p : pairs) {
        if (!rule.can_pair(ordering->base(p.i), ordering->base(p.j))) {
            throw ParseError("bases " + std::to_string(p.i) + " and " + std::to_string(p.j) + " cannot pair");
        }
    }
    return SecondaryStructure(std::move(ordering), std::move(pairs));
}

}  // namespace symfold
