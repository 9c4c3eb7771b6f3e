#include "randheap/oracle.hpp"

#include "randheap/errors.hpp"

namespace randheap {

void OracleQueue::insert(std::uint64_t ext_id, std::int64_t priority) {
    const std::uint64_t seq = next_seq_++;
    by_ext_[ext_id] = {priority, seq};
    order_.insert({{priority, seq}, ext_id});
}

void OracleQueue::decrease(std::uint64_t ext_id, std::int64_t priority) {
    auto it = by_ext_.find(ext_id);
    if (it == by_ext_.end()) throw Error(ErrorKind::DeadHandle, "oracle decrease on missing ext id");
    order_.erase({{it->second.first, it->second.second}, ext_id});
    it->second.first = priority;
    order_.insert({{priority, it->second.second}, ext_id});
}

std::pair<std::int64_t, std::uint64_t> OracleQueue::delete_min() {
    if (order_.empty()) throw Error(ErrorKind::EmptyHeap, "oracle delete_min on empty queue");
    auto it = order_.begin();
    const auto result = it->first;
    by_ext_.erase(it->second);
    order_.erase(it);
    return result;
}

std::optional<std::pair<std::int64_t, std::uint64_t>> OracleQueue::min() const {
    if (order_.empty()) return std::nullopt;
    return order_.begin()->first;
}

std::optional<std::pair<std::int64_t, std::uint64_t>> TraceRunner::apply(const TraceOp& op) {
    switch (op.kind) {
        case TraceOp::Kind::Insert:
            handles_[op.ext_id] = heap_.insert(op.priority);
            return std::nullopt;
        case TraceOp::Kind::DeleteMin:
            return heap_.delete_min();
        case TraceOp::Kind::DecreaseKey: {
            auto it = handles_.find(op.ext_id);
            if (it == handles_.end())
                throw Error(ErrorKind::DeadHandle,
                            "trace decrease-key on unknown ext id " + std::to_string(op.ext_id));
            heap_.decrease_key(it->second, op.priority);
            return std::nullopt;
        }
    }
    return std::nullopt;
}

std::optional<Divergence> diff_run(const Trace& trace, CutPolicy policy, std::uint64_t seed,
                                   bool validate_every_op, const DiffTestHook& test_hook) {
    TraceRunner runner(policy, seed);
    runner.heap().metrics().keep_records = false;
    OracleQueue oracle;

    std::uint64_t op_index = 0;
    for (const auto& op : trace.ops) {
        ++op_index;
        auto actual = runner.apply(op);
        switch (op.kind) {
            case TraceOp::Kind::Insert: oracle.insert(op.ext_id, op.priority); break;
            case TraceOp::Kind::DecreaseKey: oracle.decrease(op.ext_id, op.priority); break;
            case TraceOp::Kind::DeleteMin: {
                const auto expected = oracle.delete_min();
                if (*actual != expected)
                    return Divergence{op_index, expected, *actual, "delete-min mismatch"};
                break;
            }
        }
        if (test_hook) test_hook(runner.heap(), op_index);
        if (validate_every_op) {
            auto violations = runner.heap().validate();
            if (!violations.empty())
                return Divergence{op_index, {0, 0}, {0, 0},
                                  "structural violation: " + violations.front().kind + ": " +
                                      violations.front().detail};
        }
    }
    return std::nullopt;
}

Trace shrink(const Trace& trace, CutPolicy policy, std::uint64_t seed,
             const DiffTestHook& test_hook) {
    if (!diff_run(trace, policy, seed, true, test_hook).has_value())
        throw Error(ErrorKind::NotFailing, "shrink input does not diverge");

    Trace current = trace;
    bool progress = true;
    while (progress) {
        progress = false;
        for (std::size_t i = 0; i < current.ops.size(); ++i) {
            Trace candidate = current;
            candidate.ops.erase(candidate.ops.begin() + static_cast<std::ptrdiff_t>(i));
            if (!validate_trace(candidate).empty()) continue;
            if (!diff_run(candidate, policy, seed, true, test_hook).has_value()) continue;
            current = std::move(candidate);
            progress = true;
            // restart the pass; indices shifted
            break;
        }
    }
    return current;
}

}  // namespace randheap
