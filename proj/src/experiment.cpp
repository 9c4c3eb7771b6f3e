#include "randheap/experiment.hpp"

#include <ostream>

#include "randheap/errors.hpp"
#include "randheap/oracle.hpp"

namespace randheap {

RunResult run_trace(const Trace& trace, CutPolicy policy, std::uint64_t seed,
                    std::ostream* csv_out, bool validate_every_op) {
    TraceRunner runner(policy, seed);
    RunResult result;
    auto& sink = runner.heap().metrics();
    sink.keep_records = false;
    sink.on_record = [&](const CostRecord& rec) {
        if (rec.kind == OpKind::DeleteMin) result.delete_min_costs.push_back(rec.cost);
        if (csv_out) write_csv_row(*csv_out, rec);
    };
    if (csv_out) write_csv_header(*csv_out);
    for (const auto& op : trace.ops) {
        runner.apply(op);
        if (validate_every_op) {
            auto violations = runner.heap().validate();
            if (!violations.empty())
                throw Error(ErrorKind::InvalidTrace,
                            "structural violation during replay: " + violations.front().kind);
        }
    }
    result.summary = sink.summary();
    return result;
}

double windowed_mean(const std::vector<std::uint64_t>& costs,
                     std::optional<std::uint64_t> window) {
    if (costs.empty()) return 0.0;
    std::size_t w;
    if (window && *window > 0)
        w = static_cast<std::size_t>(*window);
    else
        w = std::max<std::size_t>(1, costs.size() / 4);
    w = std::min(w, costs.size());
    std::uint64_t total = 0;
    for (std::size_t i = costs.size() - w; i < costs.size(); ++i) total += costs[i];
    return static_cast<double>(total) / static_cast<double>(w);
}

}  // namespace randheap
