#include <doctest.h>

#include <algorithm>
#include <vector>

#include "heap_test_access.hpp"
#include "randheap/adversary.hpp"
#include "randheap/errors.hpp"
#include "randheap/oracle.hpp"
#include "randheap/rng.hpp"
#include "randheap/trace.hpp"

using namespace randheap;

namespace {

TraceOp op_insert(std::uint64_t ext, std::int64_t pri) {
    return TraceOp{TraceOp::Kind::Insert, ext, pri, 0};
}
TraceOp op_delete() { return TraceOp{TraceOp::Kind::DeleteMin, 0, 0, 0}; }
TraceOp op_decrease(std::uint64_t ext, std::int64_t pri) {
    return TraceOp{TraceOp::Kind::DecreaseKey, ext, pri, 0};
}

constexpr CutPolicy kPolicies[] = {CutPolicy::MarkBit, CutPolicy::RandomCoin, CutPolicy::NaiveCut,
                                   CutPolicy::FixedRandom};

}  // namespace

TEST_CASE("oracle queue drains in stable priority order") {
    OracleQueue q;
    SplitMix64 g(31);
    std::vector<std::pair<std::int64_t, std::uint64_t>> expected;
    for (std::uint64_t i = 0; i < 300; ++i) {
        const auto pri = static_cast<std::int64_t>(g.below(40));
        q.insert(i, pri);
        expected.emplace_back(pri, i);
    }
    std::sort(expected.begin(), expected.end());
    for (const auto& want : expected) {
        CHECK(q.min() == want);
        CHECK(q.delete_min() == want);
    }
    CHECK(q.size() == 0);
    try {
        q.delete_min();
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::EmptyHeap);
    }
}

TEST_CASE("oracle decrease reorders and keeps the sequence tiebreak") {
    OracleQueue q;
    q.insert(1, 10);
    q.insert(2, 10);
    q.decrease(2, 10);  // no-op decrease must not change FIFO order among equals
    CHECK(q.delete_min() == std::make_pair(std::int64_t{10}, std::uint64_t{0}));
    q.decrease(2, 3);
    CHECK(q.delete_min() == std::make_pair(std::int64_t{3}, std::uint64_t{1}));
}

TEST_CASE("diff finds no divergence on hand-written traces") {
    Trace trace;
    trace.ops = {op_insert(1, 30), op_insert(2, 10), op_insert(3, 20), op_decrease(1, 5),
                 op_delete(), op_delete(), op_delete()};
    for (CutPolicy policy : kPolicies) {
        CAPTURE(cut_policy_name(policy));
        CHECK(!diff_run(trace, policy, 0).has_value());
        CHECK(!diff_run(trace, policy, 12345).has_value());
    }
}

TEST_CASE("diff agrees across 1000 generated traces and all policies") {
    for (std::uint64_t i = 0; i < 1000; ++i) {
        const Trace trace = gen_random(60, 7000 + i, 0.45, 0.3, 0.25);
        REQUIRE(validate_trace(trace).empty());
        const CutPolicy policy = kPolicies[i % 4];
        auto divergence = diff_run(trace, policy, i);
        if (divergence) {
            CAPTURE(i);
            CAPTURE(divergence->op_index);
            CAPTURE(divergence->detail);
            FAIL("unexpected divergence");
        }
    }
}

TEST_CASE("a fault-injected structural break is caught and shrunk") {
    const Trace trace = gen_random(40, 11, 0.5, 0.25, 0.25);
    REQUIRE(validate_trace(trace).empty());
    const auto hook = [](Heap& h, std::uint64_t op_index) {
        if (op_index == 5 && !h.roots().empty())
            HeapTestAccess::corrupt_degree(h, h.roots()[0], 99);
    };
    auto divergence = diff_run(trace, CutPolicy::MarkBit, 3, true, hook);
    REQUIRE(divergence.has_value());
    CHECK(divergence->op_index == 5);
    CHECK(divergence->detail.find("DegreeMismatch") != std::string::npos);

    const Trace shrunk = shrink(trace, CutPolicy::MarkBit, 3, hook);
    CHECK(shrunk.ops.size() <= trace.ops.size());
    CHECK(validate_trace(shrunk).empty());
    REQUIRE(diff_run(shrunk, CutPolicy::MarkBit, 3, true, hook).has_value());
    // 1-minimal: removing any single op loses validity or the divergence.
    for (std::size_t i = 0; i < shrunk.ops.size(); ++i) {
        Trace candidate = shrunk;
        candidate.ops.erase(candidate.ops.begin() + static_cast<std::ptrdiff_t>(i));
        const bool still_fails = validate_trace(candidate).empty() &&
                                 diff_run(candidate, CutPolicy::MarkBit, 3, true, hook).has_value();
        CHECK(!still_fails);
    }
}

TEST_CASE("a corrupted priority surfaces as a delete-min mismatch") {
    Trace trace;
    trace.ops = {op_insert(1, 10), op_insert(2, 20), op_insert(3, 30), op_delete(), op_delete(),
                 op_delete()};
    const auto hook = [](Heap& h, std::uint64_t op_index) {
        if (op_index == 3) HeapTestAccess::corrupt_priority(h, h.roots()[2], -999);
    };
    auto divergence = diff_run(trace, CutPolicy::MarkBit, 0, false, hook);
    REQUIRE(divergence.has_value());
    CHECK(divergence->detail == "delete-min mismatch");
}

TEST_CASE("shrink refuses a passing trace") {
    Trace trace;
    trace.ops = {op_insert(1, 10), op_delete()};
    try {
        shrink(trace, CutPolicy::MarkBit, 0);
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotFailing);
    }
}

TEST_CASE("trace runner rejects a decrease on an unknown ext id") {
    TraceRunner runner(CutPolicy::MarkBit, 0);
    try {
        runner.apply(op_decrease(42, 1));
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DeadHandle);
    }
}
