#include "symfold/bench.hpp"

#include <algorithm>
#include <chrono>
#include <random>

#include "symfold/backtrack.hpp"
#include "symfold/snmfe_dp.hpp"

namespace symfold {

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point since) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

}  // namespace

std::vector<BenchRow> run_bench(const std::vector<int>& sizes, std::uint64_t seed, const EnergyModel& model,
                                int repeats) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, 3);
    std::vector<BenchRow> rows;
    for (int n : sizes) {
        std::string seq;
        for (int b = 0; b < n; ++b) seq += "ACGT"[pick(rng)];
        auto system = std::make_shared<const StrandSystem>(
            std::vector<StrandType>{StrandType{Strand{"S", seq}, 1}}, Alphabet::DNA);
        auto ordering = std::make_shared<const Ordering>(system, std::vector<int>{0});

        BenchRow row;
        row.n = n;
        row.fill_ms = 1e300;
        row.backtrack_ms = 1e300;
        for (int rep = 0; rep < std::max(1, repeats); ++rep) {
            auto start = std::chrono::steady_clock::now();
            auto dp = fill(ordering, model);
            row.fill_ms = std::min(row.fill_ms, elapsed_ms(start));
            row.inner_iterations = dp.inner_iterations();

            SearchOptions options;
            options.audit = false;
            start = std::chrono::steady_clock::now();
            auto result = true_mfe(dp, model, options);
            row.backtrack_ms = std::min(row.backtrack_ms, elapsed_ms(start));
            row.scanned = result.stats.scanned;
        }
        rows.push_back(row);
    }
    return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
    out << "N,fill_ms,backtrack_ms,scanned_structures\n";
    for (const auto& r : rows) out << r.n << ',' << r.fill_ms << ',' << r.backtrack_ms << ',' << r.scanned << '\n';
}

}  // namespace symfold
