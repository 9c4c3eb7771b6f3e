#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "randheap/heap.hpp"
#include "randheap/metrics.hpp"
#include "randheap/trace.hpp"

namespace randheap {

struct RunResult {
    RunSummary summary;
    std::vector<std::uint64_t> delete_min_costs;  // in op order
};

// Replays a trace under (policy, seed), streaming CSV rows if csv_out is set.
// Records are not retained; delete-min costs are collected for windowed means.
RunResult run_trace(const Trace& trace, CutPolicy policy, std::uint64_t seed,
                    std::ostream* csv_out = nullptr, bool validate_every_op = false);

// Mean of the last `window` delete-min costs; defaults to the last 25% when
// window is nullopt (the convention for traces without a measured window).
double windowed_mean(const std::vector<std::uint64_t>& delete_min_costs,
                     std::optional<std::uint64_t> window);

}  // namespace randheap
