#pragma once

#include <cstdint>

#include "randheap/trace.hpp"

namespace randheap {

// Random workload: exactly n_ops operations; infeasible draws (delete-min on
// empty, decrease-key with nothing live) are re-drawn as inserts. Probabilities
// must be nonnegative and sum to 1 (throws Error(BadMix)).
Trace gen_random(std::size_t n_ops, std::uint64_t seed, double p_insert, double p_delete,
                 double p_decrease);

// Lower-bound churn sequence sized by element count n (n >= 4). Oblivious and
// deterministic in n. Drives the forest toward a distinct-degree star forest:
// under NaiveCut every strip sticks and the measured delete-mins scan
// ~sqrt(2n) roots; under MarkBit cascading cuts shatter stripped nodes and the
// measured cost stays logarithmic. Meta records n and the measured window.
Trace gen_sqrt_n(std::size_t n);

// Lower-bound churn sequence sized by operation count s (s >= 64), length in
// [s, 2s]. Keeps strip/rotation pressure on for the whole budget so coin-flip
// survivors accumulate degree deficiency with s. n grows ~sqrt(s) by default;
// n_cap > 0 pins the element count (bounded-n variant).
Trace gen_logsq(std::size_t s, std::size_t n_cap = 0);

}  // namespace randheap
