#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>

#include "randheap/heap.hpp"
#include "randheap/trace.hpp"

namespace randheap {

// Trivially correct reference queue: an ordered set of (priority, tiebreak)
// pairs. Tiebreaks are insertion sequence numbers, mirroring Heap's
// assignment, so delete-min results compare exactly.
class OracleQueue {
  public:
    void insert(std::uint64_t ext_id, std::int64_t priority);
    void decrease(std::uint64_t ext_id, std::int64_t priority);
    std::pair<std::int64_t, std::uint64_t> delete_min();
    std::optional<std::pair<std::int64_t, std::uint64_t>> min() const;
    std::size_t size() const { return order_.size(); }

  private:
    struct Entry {
        std::int64_t priority;
        std::uint64_t tiebreak;
        std::uint64_t ext_id;
    };
    std::set<std::pair<std::pair<std::int64_t, std::uint64_t>, std::uint64_t>> order_;
    std::unordered_map<std::uint64_t, std::pair<std::int64_t, std::uint64_t>> by_ext_;
    std::uint64_t next_seq_ = 0;
};

// Replays a trace against a real heap, mapping trace-level ext ids to
// handles. Throws Error on ops the heap rejects (DeadHandle etc.), which for
// a validated trace indicates a generator or heap bug.
class TraceRunner {
  public:
    TraceRunner(CutPolicy policy, std::uint64_t seed) : heap_(policy, seed) {}

    // Returns the delete-min result for DeleteMin ops, nullopt otherwise.
    std::optional<std::pair<std::int64_t, std::uint64_t>> apply(const TraceOp& op);

    Heap& heap() { return heap_; }

  private:
    Heap heap_;
    std::unordered_map<std::uint64_t, Handle> handles_;
};

struct Divergence {
    std::uint64_t op_index = 0;
    std::pair<std::int64_t, std::uint64_t> expected{0, 0};
    std::pair<std::int64_t, std::uint64_t> actual{0, 0};
    std::string detail;
};

// Test-only fault injection: invoked after each applied op with the heap and
// the 1-based op index. Production callers leave it empty.
using DiffTestHook = std::function<void(Heap&, std::uint64_t)>;

// Lockstep differential run of heap vs oracle. Reports the first delete-min
// mismatch, or (when validate_every_op) the first structural violation.
std::optional<Divergence> diff_run(const Trace& trace, CutPolicy policy, std::uint64_t seed,
                                   bool validate_every_op = true,
                                   const DiffTestHook& test_hook = {});

// Greedy op-deletion shrink: removes single ops while the trace stays valid
// and still diverges under (policy, seed), to fixpoint. Throws
// Error(NotFailing) if the input trace does not diverge.
Trace shrink(const Trace& trace, CutPolicy policy, std::uint64_t seed,
             const DiffTestHook& test_hook = {});

}  // namespace randheap
