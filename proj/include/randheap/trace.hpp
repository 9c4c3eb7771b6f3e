#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace randheap {

// Line-oriented single-heap trace. One op per line:
//   I <extId> <priority>
//   D
//   K <extId> <newPriority>
// plus `#` comment lines; the first line is conventionally
//   # meta: generator=... key=value ...
struct TraceOp {
    enum class Kind : std::uint8_t { Insert, DeleteMin, DecreaseKey };
    Kind kind = Kind::Insert;
    std::uint64_t ext_id = 0;
    std::int64_t priority = 0;
    std::uint32_t line = 0;  // 1-based source line, 0 if built in memory
};

struct TraceMeta {
    std::string generator;
    std::map<std::string, std::string> params;

    std::optional<std::uint64_t> get_u64(const std::string& key) const;
};

struct Trace {
    TraceMeta meta;
    std::vector<TraceOp> ops;

    // Number of trailing delete-min records forming the measured window,
    // from meta key `window`; nullopt if the generator did not set one.
    std::optional<std::uint64_t> measured_window() const { return meta.get_u64("window"); }
};

struct TraceViolation {
    std::uint32_t line = 0;
    std::string kind;
    std::string detail;
};

// Throws Error(InvalidTrace) with "line N: ..." message on syntax errors
// (unknown opcode, arity, bad integers). Semantic validity is validate_trace.
Trace parse_trace(std::istream& in);
Trace parse_trace_file(const std::string& path);

void write_trace(std::ostream& out, const Trace& trace);
void write_trace_file(const std::string& path, const Trace& trace);

// Shadow-multiset replay: flags delete-min on empty, duplicate insert ids,
// decrease-key on missing/removed ids and priority increases.
std::vector<TraceViolation> validate_trace(const Trace& trace);

}  // namespace randheap
