#include <doctest.h>

#include <vector>

#include "heap_test_access.hpp"
#include "randheap/heap.hpp"
#include "randheap/metrics.hpp"
#include "randheap/rng.hpp"

using namespace randheap;

namespace {

// Sentinel + priorities 10..(10*count), one delete-min: consolidates the
// `count` singletons into binomial trees. count = 8 gives B_3, 16 gives B_4.
std::vector<Handle> build_binomial(Heap& h, int count) {
    h.insert(5);
    std::vector<Handle> hs;
    for (int i = 1; i <= count; ++i) hs.push_back(h.insert(i * 10));
    h.delete_min();
    return hs;
}

// Smallest seed whose first flips match `want` (true = heads).
std::uint64_t seed_with_flips(const std::vector<bool>& want) {
    for (std::uint64_t seed = 0;; ++seed) {
        SplitMix64 g(seed);
        bool ok = true;
        for (bool w : want)
            if (g.flip() != w) {
                ok = false;
                break;
            }
        if (ok) return seed;
    }
}

}  // namespace

TEST_CASE("cut whose former parent is a root cascades nowhere, all policies") {
    for (CutPolicy policy : {CutPolicy::MarkBit, CutPolicy::RandomCoin, CutPolicy::NaiveCut,
                             CutPolicy::FixedRandom}) {
        CAPTURE(cut_policy_name(policy));
        Heap h(policy, 0);
        auto hs = build_binomial(h, 8);
        h.decrease_key(hs[1], 1);  // 20, direct child of the root
        const auto& rec = h.metrics().records().back();
        CHECK(rec.cuts == 1);
        CHECK(rec.flips == 0);  // coin policies never flip for a root parent
        CHECK(h.validate().empty());
    }
}

TEST_CASE("markbit: first loss marks, second loss cuts the parent") {
    Heap h(CutPolicy::MarkBit, 0);
    auto hs = build_binomial(h, 8);  // 50 has children 60, 70
    h.decrease_key(hs[5], 7);        // 60 cut; 50 takes its first loss
    CHECK(h.metrics().records().back().cuts == 1);
    CHECK(h.marked(hs[4]));
    h.decrease_key(hs[6], 6);  // 70 cut; 50 was marked, so it is cut too
    const auto& rec = h.metrics().records().back();
    CHECK(rec.cuts == 2);
    CHECK(rec.flips == 0);
    CHECK(!h.marked(hs[4]));  // cut clears the mark
    CHECK(!h.parent(hs[4]).has_value());
    CHECK(h.roots().size() == 4);  // 10, 60, 70, 50
    CHECK(h.validate().empty());
}

TEST_CASE("markbit: a child promoted by delete-min is unmarked") {
    Heap h(CutPolicy::MarkBit, 0);
    auto hs = build_binomial(h, 8);
    h.decrease_key(hs[5], 7);  // marks 50
    CHECK(h.marked(hs[4]));
    h.decrease_key(hs[0], 1);  // make the root the next min without structure change
    h.delete_min();            // promotes 20, 30, 50; promotion clears marks
    CHECK(!h.marked(hs[4]));
    CHECK(h.validate().empty());
}

TEST_CASE("naive: exactly the decreased node is cut, never an ancestor") {
    Heap h(CutPolicy::NaiveCut, 0);
    auto hs = build_binomial(h, 8);
    h.decrease_key(hs[5], 7);  // 60 off 50
    h.decrease_key(hs[6], 6);  // 70 off 50: second loss, still no cascade
    const auto& rec = h.metrics().records().back();
    CHECK(rec.cuts == 1);
    CHECK(rec.flips == 0);
    CHECK(h.parent(hs[4]) == hs[0]);  // 50 stays under the root
    for (Handle x : hs) CHECK(!h.marked(x));
    CHECK(h.validate().empty());
}

TEST_CASE("random coin: tails stops the cascade at one cut and one flip") {
    const std::uint64_t seed = seed_with_flips({false});
    Heap h(CutPolicy::RandomCoin, seed);
    auto hs = build_binomial(h, 8);
    h.decrease_key(hs[5], 7);  // 60 off 50; coin at 50 is tails
    const auto& rec = h.metrics().records().back();
    CHECK(rec.cuts == 1);
    CHECK(rec.flips == 1);
    CHECK(h.parent(hs[4]) == hs[0]);
    CHECK(h.validate().empty());
}

TEST_CASE("random coin: heads, heads, tails gives three cuts and three flips") {
    // B_4 deepest path: 160 under 150 under 130 under 90 under the root.
    // Heads at 150 and 130 cut them; tails at 90 stops with 90 still linked.
    const std::uint64_t seed = seed_with_flips({true, true, false});
    Heap h(CutPolicy::RandomCoin, seed);
    auto hs = build_binomial(h, 16);
    REQUIRE(h.parent(hs[15]) == hs[14]);  // 160 under 150
    REQUIRE(h.parent(hs[14]) == hs[12]);  // 150 under 130
    REQUIRE(h.parent(hs[12]) == hs[8]);   // 130 under 90
    REQUIRE(h.parent(hs[8]) == hs[0]);    // 90 under 10
    h.decrease_key(hs[15], 1);
    const auto& rec = h.metrics().records().back();
    CHECK(rec.cuts == 3);
    CHECK(rec.flips == 3);
    CHECK(rec.cost == 7);
    CHECK(!h.parent(hs[14]).has_value());
    CHECK(!h.parent(hs[12]).has_value());
    CHECK(h.parent(hs[8]) == hs[0]);  // tails: 90 keeps its place
    for (Handle x : hs) CHECK(!h.marked(x));
    CHECK(h.validate().empty());
}

TEST_CASE("random coin: heads all the way up stops at the root") {
    const std::uint64_t seed = seed_with_flips({true, true, true});
    Heap h(CutPolicy::RandomCoin, seed);
    auto hs = build_binomial(h, 16);
    h.decrease_key(hs[15], 1);
    const auto& rec = h.metrics().records().back();
    // 160, 150, 130 cut; the coin at 90 is heads so 90 is cut as well, and
    // the walk reaches the root and stops without another flip.
    CHECK(rec.cuts == 4);
    CHECK(rec.flips == 3);
    CHECK(!h.parent(hs[8]).has_value());
    CHECK(h.validate().empty());
}

TEST_CASE("cut events report the cascade flag") {
    const std::uint64_t seed = seed_with_flips({true, false});
    Heap h(CutPolicy::RandomCoin, seed);
    auto hs = build_binomial(h, 16);
    std::vector<CutEvent> events;
    h.metrics().on_cut = [&](const CutEvent& e) { events.push_back(e); };
    h.decrease_key(hs[15], 1);
    REQUIRE(events.size() == 2);
    CHECK(events[0].cut_node == hs[15].id);
    CHECK(!events[0].policy_cascade);  // the decrease-key cut itself
    CHECK(events[1].cut_node == hs[14].id);
    CHECK(events[1].policy_cascade);
}

TEST_CASE("fixed: pre-consolidation pass cuts roots back to the degree cap") {
    Heap h(CutPolicy::FixedRandom, 0);
    Handle root = h.insert(0);
    std::vector<Handle> extra;
    for (int i = 1; i <= 20; ++i) extra.push_back(h.insert(i));
    // Force an artificially deficient degree-20 root; cap(n = 21) is 10.
    for (Handle x : extra) HeapTestAccess::force_link(h, root, x);
    REQUIRE(h.degree(root) == 20);
    h.insert(-5);
    h.delete_min();  // removes the sentinel, then caps the root before pairing
    const auto& rec = h.metrics().records().back();
    CHECK(rec.cuts == 10);  // 20 -> cap 10
    CHECK(h.degree(root) <= Heap::fixed_degree_cap(h.size()));
    CHECK(h.validate().empty());
}

TEST_CASE("non-fixed policies never cut at consolidation time") {
    for (CutPolicy policy : {CutPolicy::MarkBit, CutPolicy::RandomCoin, CutPolicy::NaiveCut}) {
        CAPTURE(cut_policy_name(policy));
        Heap h(policy, 0);
        Handle root = h.insert(0);
        std::vector<Handle> extra;
        for (int i = 1; i <= 20; ++i) extra.push_back(h.insert(i));
        for (Handle x : extra) HeapTestAccess::force_link(h, root, x);
        h.insert(-5);
        h.delete_min();
        CHECK(h.metrics().records().back().cuts == 0);
        CHECK(h.degree(root) >= 20);
    }
}

TEST_CASE("fixed shares the coin cascade with random coin") {
    const std::uint64_t seed = seed_with_flips({true, true, false});
    Heap rc(CutPolicy::RandomCoin, seed);
    Heap fx(CutPolicy::FixedRandom, seed);
    auto hs_rc = build_binomial(rc, 16);
    auto hs_fx = build_binomial(fx, 16);
    rc.decrease_key(hs_rc[15], 1);
    fx.decrease_key(hs_fx[15], 1);
    const auto& a = rc.metrics().records().back();
    const auto& b = fx.metrics().records().back();
    CHECK(a.cuts == b.cuts);
    CHECK(a.flips == b.flips);
    CHECK(a.cost == b.cost);
}
