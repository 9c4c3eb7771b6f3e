#include <doctest.h>

#include <sstream>

#include "randheap/errors.hpp"
#include "randheap/metrics.hpp"
#include "randheap/rng.hpp"

using namespace randheap;

namespace {

CostRecord make_record(std::uint64_t index, OpKind kind, std::uint32_t links, std::uint32_t cuts,
                       std::uint32_t flips, std::uint32_t roots, std::uint32_t detached,
                       std::uint64_t n_before) {
    CostRecord rec;
    rec.op_index = index;
    rec.kind = kind;
    rec.links = links;
    rec.cuts = cuts;
    rec.flips = flips;
    rec.roots_scanned = roots;
    rec.children_detached = detached;
    rec.n_before = n_before;
    rec.cost = rec.derived_cost();
    return rec;
}

}  // namespace

TEST_CASE("derived cost sums the five counters plus one") {
    const auto rec = make_record(1, OpKind::DeleteMin, 3, 2, 1, 5, 4, 100);
    CHECK(rec.cost == 16);
    CHECK(make_record(2, OpKind::Insert, 0, 0, 0, 0, 0, 0).cost == 1);
}

TEST_CASE("sink accumulates per-kind stats") {
    MetricsSink sink;
    sink.record(make_record(1, OpKind::Insert, 0, 0, 0, 0, 0, 0));
    sink.record(make_record(2, OpKind::DeleteMin, 1, 0, 0, 2, 0, 1));  // cost 4
    sink.record(make_record(3, OpKind::DeleteMin, 4, 0, 0, 5, 0, 2));  // cost 10
    const auto& dm = sink.summary().stats(OpKind::DeleteMin);
    CHECK(dm.count == 2);
    CHECK(dm.total_cost == 14);
    CHECK(dm.mean_cost() == doctest::Approx(7.0));
    CHECK(dm.max_cost == 10);
    CHECK(sink.summary().stats(OpKind::Insert).mean_cost() == doctest::Approx(1.0));
    CHECK(sink.summary().stats(OpKind::Meld).count == 0);
    CHECK(sink.records().size() == 3);
}

TEST_CASE("sink rejects out-of-order indices") {
    MetricsSink sink;
    sink.record(make_record(1, OpKind::Insert, 0, 0, 0, 0, 0, 0));
    sink.record(make_record(2, OpKind::Insert, 0, 0, 0, 0, 0, 1));
    try {
        sink.record(make_record(2, OpKind::Insert, 0, 0, 0, 0, 0, 2));
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::OutOfOrder);
    }
}

TEST_CASE("sink rejects inconsistent cost fields") {
    MetricsSink sink;
    auto rec = make_record(1, OpKind::DeleteMin, 1, 1, 0, 3, 0, 4);
    rec.cost += 1;
    try {
        sink.record(rec);
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::OutOfOrder);
    }
}

TEST_CASE("keep_records off still updates the summary") {
    MetricsSink sink;
    sink.keep_records = false;
    sink.record(make_record(1, OpKind::Insert, 0, 0, 0, 0, 0, 0));
    CHECK(sink.records().empty());
    CHECK(sink.summary().stats(OpKind::Insert).count == 1);
}

TEST_CASE("on_record fires for every record") {
    MetricsSink sink;
    sink.keep_records = false;
    std::size_t calls = 0;
    sink.on_record = [&](const CostRecord&) { ++calls; };
    for (std::uint64_t i = 1; i <= 5; ++i)
        sink.record(make_record(i, OpKind::Insert, 0, 0, 0, 0, 0, i - 1));
    CHECK(calls == 5);
}

TEST_CASE("amortized series blocks delete-min costs") {
    std::vector<CostRecord> records;
    std::uint64_t idx = 0;
    // Interleave inserts (ignored) with delete-mins of cost 1..10.
    for (std::uint32_t c = 1; c <= 10; ++c) {
        records.push_back(make_record(++idx, OpKind::Insert, 0, 0, 0, 0, 0, 0));
        records.push_back(make_record(++idx, OpKind::DeleteMin, 0, 0, 0, c - 1, 0, 1));
    }
    const auto series = amortized_series(records, 5);
    REQUIRE(series.size() == 2);
    CHECK(series[0].second == doctest::Approx(3.0));  // mean of 1..5
    CHECK(series[1].second == doctest::Approx(8.0));  // mean of 6..10
    CHECK(series[0].first < series[1].first);
    // Constant costs give a flat series.
    std::vector<CostRecord> flat;
    idx = 0;
    for (int i = 0; i < 20; ++i) flat.push_back(make_record(++idx, OpKind::DeleteMin, 0, 0, 0, 4, 0, 1));
    for (const auto& point : amortized_series(flat, 10)) CHECK(point.second == doctest::Approx(5.0));
}

TEST_CASE("csv writes the fixed header and LF rows") {
    std::ostringstream out;
    write_csv_header(out);
    write_csv_row(out, make_record(1, OpKind::DeleteMin, 2, 1, 0, 3, 4, 9));
    CHECK(out.str() ==
          "op_index,op_kind,links,cuts,flips,roots_scanned,children_detached,n_before,cost\n"
          "1,D,2,1,0,3,4,9,11\n");
}

TEST_CASE("csv round-trips random records exactly") {
    SplitMix64 g(808);
    std::vector<CostRecord> records;
    static const OpKind kinds[] = {OpKind::Insert, OpKind::DeleteMin, OpKind::DecreaseKey,
                                   OpKind::Meld};
    for (std::uint64_t i = 1; i <= 200; ++i) {
        auto rec = make_record(i, kinds[g.below(4)], static_cast<std::uint32_t>(g.below(100)),
                               static_cast<std::uint32_t>(g.below(100)),
                               static_cast<std::uint32_t>(g.below(100)),
                               static_cast<std::uint32_t>(g.below(1000)),
                               static_cast<std::uint32_t>(g.below(50)), g.below(1u << 20));
        records.push_back(rec);
    }
    std::stringstream io;
    write_csv(io, records);
    const auto parsed = read_csv(io);
    REQUIRE(parsed.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(parsed[i].op_index == records[i].op_index);
        CHECK(parsed[i].kind == records[i].kind);
        CHECK(parsed[i].links == records[i].links);
        CHECK(parsed[i].cuts == records[i].cuts);
        CHECK(parsed[i].flips == records[i].flips);
        CHECK(parsed[i].roots_scanned == records[i].roots_scanned);
        CHECK(parsed[i].children_detached == records[i].children_detached);
        CHECK(parsed[i].n_before == records[i].n_before);
        CHECK(parsed[i].cost == records[i].cost);
    }
}
