#include "randheap/metrics.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace randheap {

char op_kind_code(OpKind k) {
    switch (k) {
        case OpKind::Insert: return 'I';
        case OpKind::DeleteMin: return 'D';
        case OpKind::DecreaseKey: return 'K';
        case OpKind::Meld: return 'M';
    }
    return '?';
}

void MetricsSink::record(const CostRecord& rec) {
    if (rec.op_index <= last_index_)
        throw Error(ErrorKind::OutOfOrder, "cost record op_index not increasing");
    if (rec.cost != rec.derived_cost())
        throw Error(ErrorKind::OutOfOrder, "cost record inconsistent with its addends");
    last_index_ = rec.op_index;

    auto& ks = summary_.stats(rec.kind);
    ks.count += 1;
    ks.total_cost += rec.cost;
    if (rec.cost > ks.max_cost) ks.max_cost = rec.cost;
    summary_.total_ops += 1;

    if (keep_records) records_.push_back(rec);
    if (on_record) on_record(rec);
}

void MetricsSink::clear() {
    records_.clear();
    summary_ = RunSummary{};
    last_index_ = 0;
}

std::vector<std::pair<std::uint64_t, double>> amortized_series(
    const std::vector<CostRecord>& records, std::size_t window) {
    std::vector<std::pair<std::uint64_t, double>> out;
    if (window == 0) return out;
    std::uint64_t acc = 0;
    std::size_t in_block = 0;
    std::uint64_t last_idx = 0;
    for (const auto& rec : records) {
        if (rec.kind != OpKind::DeleteMin) continue;
        acc += rec.cost;
        last_idx = rec.op_index;
        if (++in_block == window) {
            out.emplace_back(last_idx, static_cast<double>(acc) / window);
            acc = 0;
            in_block = 0;
        }
    }
    return out;
}

void write_csv_header(std::ostream& out) {
    out << "op_index,op_kind,links,cuts,flips,roots_scanned,children_detached,n_before,cost\n";
}

void write_csv_row(std::ostream& out, const CostRecord& rec) {
    out << rec.op_index << ',' << op_kind_code(rec.kind) << ',' << rec.links << ','
        << rec.cuts << ',' << rec.flips << ',' << rec.roots_scanned << ','
        << rec.children_detached << ',' << rec.n_before << ',' << rec.cost << '\n';
}

void write_csv(std::ostream& out, const std::vector<CostRecord>& records) {
    write_csv_header(out);
    for (const auto& rec : records) write_csv_row(out, rec);
}

std::vector<CostRecord> read_csv(std::istream& in) {
    std::vector<CostRecord> out;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (header) {
            header = false;
            continue;
        }
        CostRecord rec;
        std::istringstream ls(line);
        std::string field;
        auto next = [&]() -> std::string {
            if (!std::getline(ls, field, ',')) throw Error(ErrorKind::InvalidTrace, "short csv row");
            return field;
        };
        rec.op_index = std::stoull(next());
        const std::string kind = next();
        if (kind.size() != 1) throw Error(ErrorKind::InvalidTrace, "bad op_kind: " + kind);
        switch (kind[0]) {
            case 'I': rec.kind = OpKind::Insert; break;
            case 'D': rec.kind = OpKind::DeleteMin; break;
            case 'K': rec.kind = OpKind::DecreaseKey; break;
            case 'M': rec.kind = OpKind::Meld; break;
            default: throw Error(ErrorKind::InvalidTrace, "bad op_kind: " + kind);
        }
        rec.links = static_cast<std::uint32_t>(std::stoul(next()));
        rec.cuts = static_cast<std::uint32_t>(std::stoul(next()));
        rec.flips = static_cast<std::uint32_t>(std::stoul(next()));
        rec.roots_scanned = static_cast<std::uint32_t>(std::stoul(next()));
        rec.children_detached = static_cast<std::uint32_t>(std::stoul(next()));
        rec.n_before = std::stoull(next());
        rec.cost = std::stoull(next());
        out.push_back(rec);
    }
    return out;
}

}  // namespace randheap
