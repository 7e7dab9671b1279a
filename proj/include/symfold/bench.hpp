#ifndef SYMFOLD_BENCH_HPP
#define SYMFOLD_BENCH_HPP

#include <cstdint>
#include <ostream>
#include <vector>

#include "symfold/energy.hpp"

namespace symfold {

struct BenchRow {
    int n = 0;
    double fill_ms = 0.0;
    double backtrack_ms = 0.0;
    std::uint64_t scanned = 0;
    std::uint64_t inner_iterations = 0;
};

/// Times fill and search on one random strand per size; each timing is the best of `repeats` runs.
std::vector<BenchRow> run_bench(const std::vector<int>& sizes, std::uint64_t seed, const EnergyModel& model,
                                int repeats = 3);

/// CSV with header `N,fill_ms,backtrack_ms,scanned_structures`.
void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace symfold

#endif  // SYMFOLD_BENCH_HPP
