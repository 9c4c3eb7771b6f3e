#include "randheap/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "randheap/errors.hpp"
#include "randheap/heap.hpp"
#include "randheap/rng.hpp"

namespace randheap {

namespace {

constexpr std::int64_t kWorkBase = 1LL << 40;      // initial work block sits above this
constexpr std::int64_t kBottomBase = -(1LL << 60);  // rotation victims go here

// Oblivious churn builder. Maintains a deterministic NaiveCut simulation of
// the trace emitted so far; strip targets are chosen from the simulated
// structure, so under NaiveCut the consumer reproduces the simulation exactly,
// while the other policies replay the same fixed sequence against their own
// (diverged) structures. Priority zones keep delete-min victims fully under
// the generator's control on every policy:
//   work block:   (0, 2^40 + n]   initial inserts, then a strictly
//                                 decreasing counter for strip re-keys
//   sentinels:    [-rounds, -1]   always the live minimum when present
//   bottom:       < -2^60         rotation victims, below even sentinels
struct ChurnBuilder {
    Heap sim{CutPolicy::NaiveCut, 0};
    Trace trace;
    std::unordered_map<std::uint64_t, std::uint64_t> ext_of;  // handle id -> ext id
    std::uint64_t next_ext = 1;
    std::int64_t work_counter = kWorkBase;
    std::int64_t sentinel_counter = -1;
    std::int64_t bottom_counter = kBottomBase;
    std::deque<Handle> age_queue;  // live work elements, oldest first

    ChurnBuilder() { sim.metrics().keep_records = false; }

    std::size_t ops() const { return trace.ops.size(); }

    Handle emit_insert(std::int64_t priority, bool work) {
        const std::uint64_t ext = next_ext++;
        trace.ops.push_back({TraceOp::Kind::Insert, ext, priority, 0});
        Handle h = sim.insert(priority);
        ext_of[h.id] = ext;
        if (work) age_queue.push_back(h);
        return h;
    }

    void emit_decrease(Handle h, std::int64_t priority) {
        trace.ops.push_back({TraceOp::Kind::DecreaseKey, ext_of.at(h.id), priority, 0});
        sim.decrease_key(h, priority);
    }

    void emit_delete_min() {
        trace.ops.push_back({TraceOp::Kind::DeleteMin, 0, 0, 0});
        auto min = sim.find_min();
        ext_of.erase(min->first.id);
        sim.delete_min();
    }

    // Cut every grandchild of every root out of the simulated forest. Each
    // re-key goes strictly below all live work priorities, so the cut also
    // happens under every other policy wherever that node currently sits.
    std::size_t strip_pass() {
        std::vector<Handle> targets;
        for (Handle r : sim.roots())
            for (Handle x : sim.children(r))
                for (Handle y : sim.children(x)) targets.push_back(y);
        for (Handle y : targets) emit_decrease(y, --work_counter);
        return targets.size();
    }

    // Sentinel insert + delete-min: triggers one consolidation everywhere
    // without touching the work elements.
    void consolidate_round() {
        emit_insert(sentinel_counter--, false);
        emit_delete_min();
    }

    // Retire the oldest work element and insert a fresh one: keeps n constant
    // while feeding the forest new link/cut exposure.
    void rotate_one() {
        while (!age_queue.empty() && !sim.is_live(age_queue.front())) age_queue.pop_front();
        if (age_queue.empty()) return;
        Handle victim = age_queue.front();
        age_queue.pop_front();
        emit_decrease(victim, bottom_counter--);
        emit_delete_min();
        emit_insert(--work_counter, true);
    }

    // Retire one deep leaf (a leaf whose parent is itself internal), taken
    // from the highest-degree tree that still has one. Removing it changes no
    // root degree in the simulated forest, so the settled shape survives the
    // measured rounds, while the removal still exercises every policy's
    // decrease/delete-min path once per round.
    bool retire_deep_leaf() {
        std::vector<Handle> rs = sim.roots();
        std::sort(rs.begin(), rs.end(),
                  [&](Handle a, Handle b) { return sim.degree(a) > sim.degree(b); });
        for (Handle r : rs) {
            for (Handle c : sim.children(r)) {
                std::vector<Handle> stack{c};
                while (!stack.empty()) {
                    Handle x = stack.back();
                    stack.pop_back();
                    for (Handle y : sim.children(x)) {
                        if (sim.children(y).empty()) {
                            emit_decrease(y, bottom_counter--);
                            emit_delete_min();
                            return true;
                        }
                        stack.push_back(y);
                    }
                }
            }
        }
        return false;
    }

    // Cut deep internal nodes whose degrees are missing from the root list.
    // A cut node keeps its degree when it is promoted, and its (internal)
    // parent losing a child does not disturb any root degree, so every cut
    // adds one root with a fresh degree. The settled forest then occupies as
    // many distinct degrees as the built structure allows, which is what the
    // measured delete-mins scan. Selected nodes are not descended into: a
    // later cut below them would shrink the degree they were picked for.
    // Degrees below min_degree are left alone: measurement rounds feed fresh
    // singletons into the forest, and keeping the ladder clear of the low
    // degrees stops their binomial junk from carrying into it.
    std::size_t spread_pass(std::size_t min_degree = 0) {
        std::set<std::size_t> occupied;
        for (std::size_t d = 0; d < min_degree; ++d) occupied.insert(d);
        for (Handle r : sim.roots()) occupied.insert(sim.degree(r));
        std::vector<Handle> targets;
        for (Handle r : sim.roots()) {
            for (Handle c : sim.children(r)) {
                std::vector<Handle> stack{c};
                while (!stack.empty()) {
                    Handle x = stack.back();
                    stack.pop_back();
                    for (Handle y : sim.children(x)) {
                        if (occupied.insert(sim.degree(y)).second) targets.push_back(y);
                        else stack.push_back(y);
                    }
                }
            }
        }
        for (Handle y : targets) emit_decrease(y, --work_counter);
        return targets.size();
    }

    // Distinct-degree star forest: nothing left for strip passes or
    // consolidation to change.
    bool stable() const {
        std::set<std::size_t> degrees;
        for (Handle r : sim.roots()) {
            if (!degrees.insert(sim.degree(r)).second) return false;
            for (Handle c : sim.children(r))
                if (sim.degree(c) != 0) return false;
        }
        return true;
    }
};

}  // namespace

Trace gen_random(std::size_t n_ops, std::uint64_t seed, double p_insert, double p_delete,
                 double p_decrease) {
    if (p_insert < 0 || p_delete < 0 || p_decrease < 0 ||
        std::abs(p_insert + p_delete + p_decrease - 1.0) > 1e-9)
        throw Error(ErrorKind::BadMix, "op mix probabilities must be nonnegative and sum to 1");

    SplitMix64 rng(seed);
    Trace trace;
    trace.meta.generator = "random";
    trace.meta.params["ops"] = std::to_string(n_ops);
    trace.meta.params["seed"] = std::to_string(seed);

    // Shadow state, same ordering convention as the heap/oracle.
    std::set<std::pair<std::pair<std::int64_t, std::uint64_t>, std::uint64_t>> order;
    std::unordered_map<std::uint64_t, std::pair<std::int64_t, std::uint64_t>> live;
    std::vector<std::uint64_t> live_ids;
    std::unordered_map<std::uint64_t, std::size_t> live_pos;
    std::uint64_t next_ext = 1;
    std::uint64_t seq = 0;

    auto do_insert = [&]() {
        const auto priority = static_cast<std::int64_t>(rng.below(1ULL << 48)) - (1LL << 47);
        const std::uint64_t ext = next_ext++;
        trace.ops.push_back({TraceOp::Kind::Insert, ext, priority, 0});
        live[ext] = {priority, seq};
        order.insert({{priority, seq}, ext});
        live_pos[ext] = live_ids.size();
        live_ids.push_back(ext);
        ++seq;
    };
    auto remove_live = [&](std::uint64_t ext) {
        const std::size_t pos = live_pos.at(ext);
        live_ids[pos] = live_ids.back();
        live_pos[live_ids.back()] = pos;
        live_ids.pop_back();
        live_pos.erase(ext);
        live.erase(ext);
    };

    for (std::size_t i = 0; i < n_ops; ++i) {
        const double u = rng.uniform01();
        if (u < p_insert || order.empty()) {
            do_insert();
        } else if (u < p_insert + p_delete) {
            auto it = order.begin();
            const std::uint64_t ext = it->second;
            order.erase(it);
            remove_live(ext);
            trace.ops.push_back({TraceOp::Kind::DeleteMin, 0, 0, 0});
        } else {
            const std::uint64_t ext = live_ids[rng.below(live_ids.size())];
            auto& entry = live.at(ext);
            // Delta on the same scale as the priority range, so decreases
            // regularly pass below the parent and exercise the cut paths.
            const auto new_priority =
                entry.first - static_cast<std::int64_t>(rng.below(1ULL << 46));
            order.erase({{entry.first, entry.second}, ext});
            entry.first = new_priority;
            order.insert({{new_priority, entry.second}, ext});
            trace.ops.push_back({TraceOp::Kind::DecreaseKey, ext, new_priority, 0});
        }
    }
    return trace;
}

Trace gen_sqrt_n(std::size_t n) {
    if (n < 4) throw Error(ErrorKind::InvalidTrace, "gen_sqrt_n requires n >= 4");
    constexpr std::size_t kWindow = 64;

    ChurnBuilder b;
    const std::size_t n_work = n - 1;  // sentinel transiently occupies one slot
    for (std::size_t i = 1; i <= n_work; ++i)
        b.emit_insert(kWorkBase + static_cast<std::int64_t>(i), true);
    b.consolidate_round();

    const auto round_cap =
        static_cast<std::size_t>(8.0 * std::sqrt(static_cast<double>(n))) + 256;
    for (std::size_t round = 0; round < round_cap; ++round) {
        const std::size_t stripped = b.strip_pass();
        b.consolidate_round();
        if (stripped == 0 && b.stable()) break;
    }
    // Measured phase. Each round retires one element and feeds in a fresh
    // one, so the measured delete-mins reflect steady-state consolidation
    // work rather than the parity of whatever shape the build ended in.
    b.spread_pass();
    for (std::size_t i = 0; i < kWindow; ++i) {
        b.retire_deep_leaf();
        b.consolidate_round();
    }

    b.trace.meta.generator = "sqrt_n";
    b.trace.meta.params["n"] = std::to_string(n);
    b.trace.meta.params["window"] = std::to_string(kWindow);
    return b.trace;
}

Trace gen_logsq(std::size_t s, std::size_t n_cap) {
    if (s < 64) throw Error(ErrorKind::InvalidTrace, "gen_logsq requires s >= 64");
    // Small traces get a proportionally smaller measured window so the total
    // length stays within [s, 2s].
    const std::size_t kWindow = std::min<std::size_t>(64, s / 8);

    std::size_t n_work =
        n_cap ? n_cap
              : std::max<std::size_t>(48, static_cast<std::size_t>(
                                              std::sqrt(static_cast<double>(s)) * 1.5));
    n_work = std::min(n_work, s / 16 + 8);

    ChurnBuilder b;
    for (std::size_t i = 1; i <= n_work; ++i)
        b.emit_insert(kWorkBase + static_cast<std::int64_t>(i), true);
    b.consolidate_round();

    const std::size_t rotations_per_round = std::max<std::size_t>(1, n_work / 8);
    const std::size_t build_budget = s > 4 * kWindow ? s - 4 * kWindow : s / 2;
    while (b.ops() < build_budget) {
        b.strip_pass();
        for (std::size_t i = 0; i < rotations_per_round && b.ops() < build_budget; ++i)
            b.rotate_one();
        b.consolidate_round();
    }
    // Measured tail; also pads the trace length into [s, 2s].
    b.spread_pass();
    for (std::size_t i = 0; i < kWindow; ++i) b.consolidate_round();
    while (b.ops() < s) b.consolidate_round();

    b.trace.meta.generator = "logsq";
    b.trace.meta.params["s"] = std::to_string(s);
    if (n_cap) b.trace.meta.params["n"] = std::to_string(n_cap);
    b.trace.meta.params["window"] = std::to_string(kWindow);
    return b.trace;
}

}  // namespace randheap
