#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "randheap/errors.hpp"

namespace randheap {

enum class OpKind : std::uint8_t { Insert = 0, DeleteMin = 1, DecreaseKey = 2, Meld = 3 };

char op_kind_code(OpKind k);  // I, D, K, M

// Actual-cost record for one public heap operation. Every unit of structural
// work (link, cut, flip, root scanned, child detached) lands in exactly one
// counter; lazy operations are all-zero and cost exactly 1.
struct CostRecord {
    std::uint64_t op_index = 0;  // value of s when the op ran, 1-based
    OpKind kind = OpKind::Insert;
    std::uint32_t links = 0;
    std::uint32_t cuts = 0;
    std::uint32_t flips = 0;
    std::uint32_t roots_scanned = 0;
    std::uint32_t children_detached = 0;
    std::uint64_t n_before = 0;
    std::uint64_t cost = 0;  // 1 + links + cuts + flips + roots_scanned + children_detached

    std::uint64_t derived_cost() const {
        return 1ULL + links + cuts + flips + roots_scanned + children_detached;
    }
};

struct KindStats {
    std::uint64_t count = 0;
    std::uint64_t total_cost = 0;
    std::uint64_t max_cost = 0;

    double mean_cost() const { return count ? static_cast<double>(total_cost) / count : 0.0; }
};

struct RunSummary {
    std::array<KindStats, 4> per_kind{};
    std::uint32_t max_degree_observed = 0;
    std::uint64_t degree_bound_breaches = 0;  // MarkBit-only log_phi check, see Heap
    std::uint64_t final_n = 0;
    std::uint64_t total_ops = 0;

    const KindStats& stats(OpKind k) const { return per_kind[static_cast<std::size_t>(k)]; }
    KindStats& stats(OpKind k) { return per_kind[static_cast<std::size_t>(k)]; }
};

struct CutEvent {
    std::uint64_t cut_node = 0;       // handle id
    std::uint64_t former_parent = 0;  // handle id
    bool policy_cascade = false;      // false = the decrease-key cut itself
};

// Per-run sink. Checks op_index monotonicity and cost consistency on every
// record. Keeping the full record vector is optional so long differential
// runs don't hold gigabytes.
class MetricsSink {
  public:
    bool keep_records = true;
    std::function<void(const CostRecord&)> on_record;
    std::function<void(const CutEvent&)> on_cut;

    void record(const CostRecord& rec);

    const std::vector<CostRecord>& records() const { return records_; }
    const RunSummary& summary() const { return summary_; }
    RunSummary& summary() { return summary_; }

    void clear();

  private:
    std::vector<CostRecord> records_;
    RunSummary summary_;
    std::uint64_t last_index_ = 0;
};

// Blocked mean of delete-min cost: one (op_index at block end, mean cost)
// point per full block of `window` delete-min records.
std::vector<std::pair<std::uint64_t, double>> amortized_series(
    const std::vector<CostRecord>& records, std::size_t window);

// CSV format (fixed column order, LF newlines, integer fields only):
// op_index,op_kind,links,cuts,flips,roots_scanned,children_detached,n_before,cost
void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const CostRecord& rec);
void write_csv(std::ostream& out, const std::vector<CostRecord>& records);
std::vector<CostRecord> read_csv(std::istream& in);

}  // namespace randheap
