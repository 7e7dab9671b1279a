#include "symfold/snmfe_dp.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace symfold {

DPState::DPState(std::shared_ptr<const Ordering> ordering, bool keep_tensors)
    : ordering_(std::move(ordering)), n_(ordering_->size()), has_tensors_(keep_tensors) {
    const auto n = static_cast<std::size_t>(n_);
    row_.assign(n + 2, 0);
    std::size_t cells = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        row_[i] = cells;
        cells += n - i + 1;
    }
    m_.assign(cells, kInf);
    mb_.assign(cells, kInf);
    mm_.assign(cells, kInf);
    if (has_tensors_) {
        toff_.assign(cells, 0);
        std::size_t slots = 0;
        for (int i = 1; i <= n_; ++i) {
            for (int j = i; j <= n_; ++j) {
                toff_[tri(i, j)] = slots;
                slots += static_cast<std::size_t>(j - i);
            }
        }
        bint_.assign(slots, kInf);
        bmul_.assign(slots, kInf);
        m2_.assign(slots, kInf);
    }
}

std::size_t DPState::cell_count() const {
    return m_.size() + mb_.size() + mm_.size() + bint_.size() + bmul_.size() + m2_.size();
}

DPState fill(std::shared_ptr<const Ordering> ordering, const EnergyModel& model, const FillOptions& options) {
    DPState dp(std::move(ordering), options.keep_tensors);
    const Ordering& o = *dp.ordering_;
    const int n = dp.n_;
    dp.association_ = (o.strand_count() - 1) * model.assoc();

    const Energy init = model.multi_init();
    const Energy bp = model.multi_bp();
    const Energy nt = model.multi_nt();
    std::uint64_t iterations = 0;

    for (int l = 1; l <= n; ++l) {
        for (int i = 1; i + l - 1 <= n; ++i) {
            const int j = i + l - 1;
            const std::size_t ij = dp.tri(i, j);
            const std::size_t aux_base = dp.has_tensors_ ? dp.toff_[ij] : 0;

            // M^b
            if (i < j && model.can_pair(o, i, j)) {
                Energy best = kInf;
                if (o.nicks_between(i, j) == 0) best = model.hairpin(o, i, j);
                Energy min_int = kInf;
                Energy min_mul = kInf;
                const bool outer_free = !o.is_nick(i);
                for (int e = i + 2; e <= j - 1; ++e) {
                    if (o.nicks_between(e, j) == 0) {
                        const Energy tail = init + 2 * bp + (j - e - 1) * nt;
                        for (int d = i + 1; d <= e - 1; ++d) {
                            ++iterations;
                            const Energy inner = dp.mb(d, e);
                            if (inner >= kInf) continue;
                            if (o.nicks_between(i, d) == 0) {
                                const Energy v = sat_add(inner, model.interior(o, i, d, e, j));
                                if (v < min_int) min_int = v;
                            }
                            if (outer_free && !o.is_nick(d - 1)) {
                                const Energy v = sat_add(inner, dp.mm(i + 1, d - 1), tail);
                                if (v < min_mul) min_mul = v;
                            }
                        }
                    }
                    if (dp.has_tensors_) {
                        const std::size_t slot = aux_base + static_cast<std::size_t>(e - i - 1);
                        dp.bint_[slot] = min_int;
                        dp.bmul_[slot] = min_mul;
                    }
                }
                best = std::min({best, min_int, min_mul});

                for (int x = i; x <= j - 1; ++x) {
                    if (!o.is_nick(x)) continue;
                    const bool guard = (!o.is_nick(i) && !o.is_nick(j - 1)) || i == j - 1 ||
                                       (x == i && !o.is_nick(j - 1)) || (x == j - 1 && !o.is_nick(i));
                    if (guard) best = std::min(best, sat_add(dp.m(i + 1, x), dp.m(x + 1, j - 1)));
                }
                dp.mb_[ij] = best;
            }

            // M and M^m
            Energy m_best = o.nicks_between(i, j) == 0 ? 0 : kInf;
            Energy mm_best = kInf;
            Energy min_mm = kInf;
            for (int e = i + 1; e <= j; ++e) {
                if (o.nicks_between(e, j) == 0) {
                    for (int d = i; d <= e - 1; ++d) {
                        ++iterations;
                        const Energy inner = dp.mb(d, e);
                        if (inner >= kInf) continue;
                        const bool joined = !o.is_nick(d - 1);
                        if (joined || d == i) m_best = std::min(m_best, sat_add(dp.m(i, d - 1), inner));
                        if (o.nicks_between(i, d) == 0) {
                            mm_best = std::min(mm_best, sat_add(inner, bp + (d - i + j - e) * nt));
                        }
                        if (joined) {
                            const Energy v = sat_add(dp.mm(i, d - 1), inner, bp + (j - e) * nt);
                            mm_best = std::min(mm_best, v);
                            if (v < min_mm) min_mm = v;
                        }
                    }
                }
                if (dp.has_tensors_) dp.m2_[aux_base + static_cast<std::size_t>(e - i - 1)] = min_mm;
            }
            dp.m_[ij] = m_best;
            dp.mm_[ij] = mm_best;
        }
    }
    dp.inner_iterations_ = iterations;
    return dp;
}

Energy snmfe(const DPState& dp) { return sat_add(dp.m_total(), dp.association()); }

Energy aux_lookup(const DPState& dp, AuxKind kind, int i, int j, int k) {
    if (!dp.has_tensors()) throw std::logic_error("DP state was filled without auxiliary tensors");
    const int n = dp.size();
    if (i < 1 || j > n || i >= j) throw std::out_of_range("aux_lookup: segment out of range");
    const int lo = kind == AuxKind::M2 ? i + 1 : i + 2;
    const int hi = kind == AuxKind::M2 ? j : j - 1;
    if (k < lo || k > hi) throw std::out_of_range("aux_lookup: restriction index out of range");
    return dp.aux_at(kind, i, j, k);
}

namespace {

constexpr char kMagic[8] = {'S', 'Y', 'M', 'F', 'D', 'P', '0', '1'};

void fnv(std::uint64_t& h, std::string_view bytes) {
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    h ^= 0xff;
    h *= 1099511628211ULL;
}

template <typename T>
void write_pod(std::ostream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
void read_pod(std::istream& in, T& v) {
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    if (!in) throw ParseError("truncated DP dump");
}

void write_vec(std::ostream& out, const std::vector<Energy>& v) {
    write_pod(out, static_cast<std::uint64_t>(v.size()));
    out.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(Energy)));
}

void read_vec(std::istream& in, std::vector<Energy>& v) {
    std::uint64_t size = 0;
    read_pod(in, size);
    if (size != v.size()) throw ParseError("DP dump has unexpected matrix size");
    in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(Energy)));
    if (!in) throw ParseError("truncated DP dump");
}

}  // namespace

std::uint64_t dp_key(const Ordering& ordering, const EnergyModel& model) {
    std::uint64_t h = 1469598103934665603ULL;
    for (const auto& t : ordering.system().types()) {
        fnv(h, t.strand.sequence);
        fnv(h, std::to_string(t.repetitions));
    }
    for (int t : ordering.type_sequence()) fnv(h, std::to_string(t));
    fnv(h, model.fingerprint());
    return h;
}

void save_dp(const DPState& dp, const std::string& path, std::uint64_t key) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out.write(kMagic, sizeof kMagic);
    write_pod(out, key);
    write_pod(out, static_cast<std::int32_t>(dp.n_));
    write_pod(out, static_cast<std::int32_t>(dp.has_tensors_ ? 1 : 0));
    write_pod(out, dp.association_);
    write_pod(out, dp.inner_iterations_);
    write_vec(out, dp.m_);
    write_vec(out, dp.mb_);
    write_vec(out, dp.mm_);
    if (dp.has_tensors_) {
        write_vec(out, dp.bint_);
        write_vec(out, dp.bmul_);
        write_vec(out, dp.m2_);
    }
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

DPState load_dp(const std::string& path, std::shared_ptr<const Ordering> ordering, std::uint64_t key) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read '" + path + "'");
    char magic[sizeof kMagic];
    in.read(magic, sizeof magic);
    if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0) throw ParseError("'" + path + "' is not a DP dump");
    std::uint64_t stored_key = 0;
    std::int32_t n = 0;
    std::int32_t tensors = 0;
    read_pod(in, stored_key);
    read_pod(in, n);
    read_pod(in, tensors);
    if (stored_key != key) throw ParseError("DP dump was computed for a different system, ordering or model");
    if (n != ordering->size()) throw ParseError("DP dump size does not match the ordering");
    DPState dp(std::move(ordering), tensors != 0);
    read_pod(in, dp.association_);
    read_pod(in, dp.inner_iterations_);
    read_vec(in, dp.m_);
    read_vec(in, dp.mb_);
    read_vec(in, dp.mm_);
    if (dp.has_tensors_) {
        read_vec(in, dp.bint_);
        read_vec(in, dp.bmul_);
        read_vec(in, dp.m2_);
    }
    return dp;
}

}  // namespace symfold
