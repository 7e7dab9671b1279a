#include <doctest.h>

#include <cstdio>
#include <random>

#include "corpus.hpp"
#include "symfold/oracle.hpp"
#include "symfold/snmfe_dp.hpp"

using namespace symfold;

namespace {

std::shared_ptr<const Ordering> first_ordering(const std::string& text) {
    auto system = std::make_shared<const StrandSystem>(parse_system(text));
    return std::make_shared<const Ordering>(circular_permutations(system).front());
}

Energy oracle_snmfe(const std::shared_ptr<const Ordering>& o, const EnergyModel& model) {
    EnumerationConfig cfg;
    cfg.min_hairpin = 3;
    cfg.rule = model.pairing();
    return oracle_ordering(o, model, cfg).snmfe;
}

}  // namespace

TEST_CASE("strand without complements") {
    LinearEnergyModel model;
    auto dp = fill(first_ordering("X AAAA 1"), model);
    CHECK(dp.m(1, 4) == 0);
    for (int i = 1; i <= 4; ++i) {
        for (int j = i + 1; j <= 4; ++j) CHECK(dp.mb(i, j) == kInf);
    }
    CHECK(snmfe(dp) == 0);
}

TEST_CASE("stem-loop snMFE") {
    LinearEnergyModel model;
    auto o = first_ordering("X GGGAAAACCC 1");
    auto dp = fill(o, model);
    CHECK(dp.m_total() == -60);
    CHECK(dp.m_total() == oracle_snmfe(o, model));
}

TEST_CASE("dimers") {
    LinearEnergyModel model;
    auto at = first_ordering("X AT 2");
    auto dp = fill(at, model);
    CHECK(snmfe(dp) == oracle_snmfe(at, model));
    CHECK(dp.association() == model.assoc());

    auto none = fill(first_ordering("X AA 1\nY GG 1"), model);
    CHECK(snmfe(none) == kInf);
}

TEST_CASE("auxiliary tensors match a direct rescan") {
    LinearEnergyModel model;
    auto corpus = testing::random_corpus(5, 40, 14);
    for (const auto& entry : corpus) {
        for (const auto& o : circular_permutations(entry.system)) {
            auto op = std::make_shared<const Ordering>(o);
            auto dp = fill(op, model);
            const int n = o.size();
            for (int i = 1; i <= n; ++i) {
                for (int j = i + 1; j <= n; ++j) {
                    for (int k = i + 2; k <= j - 1; ++k) {
                        Energy best_int = kInf;
                        Energy best_mul = kInf;
                        if (model.can_pair(o, i, j)) {
                            for (int e = i + 2; e <= k; ++e) {
                                if (o.nicks_between(e, j) != 0) continue;
                                for (int d = i + 1; d < e; ++d) {
                                    if (!is_finite(dp.mb(d, e))) continue;
                                    if (o.nicks_between(i, d) == 0) {
                                        best_int = std::min(best_int, sat_add(dp.mb(d, e), model.interior(o, i, d, e, j)));
                                    }
                                    if (!o.is_nick(i) && !o.is_nick(d - 1)) {
                                        best_mul = std::min(best_mul, sat_add(dp.mm(i + 1, d - 1), dp.mb(d, e),
                                                                              model.multiloop_energy(2, j - e - 1)));
                                    }
                                }
                            }
                        }
                        CHECK(aux_lookup(dp, AuxKind::BInt, i, j, k) == best_int);
                        CHECK(aux_lookup(dp, AuxKind::BMul, i, j, k) == best_mul);
                    }
                    for (int k = i + 1; k <= j; ++k) {
                        Energy best = kInf;
                        for (int e = i + 1; e <= k; ++e) {
                            if (o.nicks_between(e, j) != 0) continue;
                            for (int d = i + 1; d < e; ++d) {
                                if (o.is_nick(d - 1)) continue;
                                best = std::min(best, sat_add(dp.mm(i, d - 1), dp.mb(d, e),
                                                              model.multi_bp() + (j - e) * model.multi_nt()));
                            }
                        }
                        CHECK(aux_lookup(dp, AuxKind::M2, i, j, k) == best);
                    }
                }
            }
        }
    }
}

TEST_CASE("the unrestricted interior tensor cell covers every placement") {
    LinearEnergyModel model;
    auto o = first_ordering("X GGGAGGAAACCAACCC 1");
    auto dp = fill(o, model);
    const int n = o->size();
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 3; j <= n; ++j) {
            Energy best = kInf;
            if (model.can_pair(*o, i, j)) {
                for (int d = i + 1; d < j; ++d) {
                    for (int e = d + 1; e < j; ++e) {
                        if (is_finite(dp.mb(d, e))) best = std::min(best, dp.mb(d, e) + model.interior(*o, i, d, e, j));
                    }
                }
            }
            CHECK(aux_lookup(dp, AuxKind::BInt, i, j, j - 1) == best);
        }
    }
    CHECK(aux_lookup(dp, AuxKind::BInt, 1, 4, 3) == kInf);
}

TEST_CASE("snMFE agrees with exhaustive enumeration") {
    LinearEnergyModel model;
    auto corpus = testing::random_corpus(11, 120, 18);
    for (const auto& entry : corpus) {
        for (const auto& o : circular_permutations(entry.system)) {
            auto op = std::make_shared<const Ordering>(o);
            INFO(entry.text, o.label());
            CHECK(snmfe(fill(op, model)) == oracle_snmfe(op, model));
        }
    }
}

TEST_CASE("tensor-free fill keeps the matrices") {
    LinearEnergyModel model;
    auto o = first_ordering("X GGGAAACCCAGGAAACC 1");
    FillOptions light;
    light.keep_tensors = false;
    auto a = fill(o, model);
    auto b = fill(o, model, light);
    CHECK(a.m_total() == b.m_total());
    CHECK(b.cell_count() < a.cell_count());
    CHECK_THROWS_AS(aux_lookup(b, AuxKind::BInt, 1, 10, 5), std::logic_error);
    CHECK_THROWS_AS(aux_lookup(a, AuxKind::BInt, 1, 10, 2), std::out_of_range);
    CHECK_THROWS_AS(aux_lookup(a, AuxKind::M2, 1, 10, 11), std::out_of_range);
}

TEST_CASE("dump and reload") {
    LinearEnergyModel model;
    auto o = first_ordering("X GGAC 1\nY GTCC 1");
    auto dp = fill(o, model);
    const std::string path = "symfold_test_dump.bin";
    save_dp(dp, path, dp_key(*o, model));
    auto back = load_dp(path, o, dp_key(*o, model));
    CHECK(back.m_total() == dp.m_total());
    for (int i = 1; i <= o->size(); ++i) {
        for (int j = i; j <= o->size(); ++j) {
            CHECK(back.mb(i, j) == dp.mb(i, j));
            CHECK(back.mm(i, j) == dp.mm(i, j));
        }
    }
    LinearParams other;
    other.stack = -100;
    CHECK_THROWS_AS(load_dp(path, o, dp_key(*o, LinearEnergyModel(other))), ParseError);
    std::remove(path.c_str());
}
