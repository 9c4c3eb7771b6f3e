#include "randheap/heap.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace randheap {

namespace {

constexpr std::uint64_t kSlotMask = 0xFFFFFFFFULL;

std::uint16_t handle_tag(Handle h) { return static_cast<std::uint16_t>(h.id >> 48); }
std::uint16_t handle_gen(Handle h) { return static_cast<std::uint16_t>(h.id >> 32); }
std::uint32_t handle_slot(Handle h) { return static_cast<std::uint32_t>(h.id & kSlotMask); }

Handle make_handle(std::uint16_t tag, std::uint16_t gen, std::uint32_t slot) {
    return Handle{(static_cast<std::uint64_t>(tag) << 48) |
                  (static_cast<std::uint64_t>(gen) << 32) | slot};
}

// floor(log_phi(n)), the classic Fibonacci degree bound.
std::uint32_t log_phi_floor(std::size_t n) {
    if (n < 2) return 0;
    static const double kLogPhi = std::log((1.0 + std::sqrt(5.0)) / 2.0);
    return static_cast<std::uint32_t>(std::log(static_cast<double>(n)) / kLogPhi);
}

}  // namespace

const char* cut_policy_name(CutPolicy p) {
    switch (p) {
        case CutPolicy::MarkBit: return "markbit";
        case CutPolicy::RandomCoin: return "random";
        case CutPolicy::NaiveCut: return "naive";
        case CutPolicy::FixedRandom: return "fixed";
    }
    return "?";
}

std::optional<CutPolicy> parse_cut_policy(const std::string& name) {
    if (name == "markbit") return CutPolicy::MarkBit;
    if (name == "random") return CutPolicy::RandomCoin;
    if (name == "naive") return CutPolicy::NaiveCut;
    if (name == "fixed") return CutPolicy::FixedRandom;
    return std::nullopt;
}

Heap::Heap(CutPolicy policy, std::uint64_t seed, std::uint16_t tag)
    : policy_(policy), rng_(seed), tag_(tag) {
    segments_.push_back(Segment{tag, {}, {}});
}

Heap::Segment* Heap::segment_for(std::uint16_t tag) {
    for (auto& seg : segments_)
        if (seg.tag == tag) return &seg;
    return nullptr;
}

const Heap::Segment* Heap::segment_for(std::uint16_t tag) const {
    for (const auto& seg : segments_)
        if (seg.tag == tag) return &seg;
    return nullptr;
}

Heap::Node& Heap::node_at(Handle h) {
    return segment_for(handle_tag(h))->slots[handle_slot(h)];
}

const Heap::Node& Heap::node_at(Handle h) const {
    return segment_for(handle_tag(h))->slots[handle_slot(h)];
}

Heap::Node& Heap::resolve(Handle h) {
    const Heap* self = this;
    return const_cast<Node&>(self->resolve(h));
}

const Heap::Node& Heap::resolve(Handle h) const {
    const Segment* seg = segment_for(handle_tag(h));
    if (!seg) throw Error(ErrorKind::DeadHandle, "handle refers to unknown store segment");
    const std::uint32_t slot = handle_slot(h);
    if (slot >= seg->slots.size())
        throw Error(ErrorKind::DeadHandle, "handle slot out of range");
    const Node& node = seg->slots[slot];
    if (!node.live || node.gen != handle_gen(h))
        throw Error(ErrorKind::DeadHandle, "stale or dead handle");
    return node;
}

Handle Heap::alloc_node(std::int64_t priority) {
    Segment& seg = *segment_for(tag_);
    std::uint32_t slot;
    if (!seg.free_list.empty()) {
        slot = seg.free_list.back();
        seg.free_list.pop_back();
    } else {
        slot = static_cast<std::uint32_t>(seg.slots.size());
        seg.slots.emplace_back();
    }
    Node& node = seg.slots[slot];
    node.key = Key{priority, (static_cast<std::uint64_t>(tag_) << 48) | next_tiebreak_++};
    node.parent = Handle{};
    node.children.clear();
    node.degree = 0;
    node.child_pos = 0;
    node.marked = false;
    node.live = true;
    return make_handle(tag_, node.gen, slot);
}

void Heap::free_node(Handle h) {
    Segment& seg = *segment_for(handle_tag(h));
    Node& node = seg.slots[handle_slot(h)];
    node.live = false;
    node.children.clear();
    node.degree = 0;
    node.gen = node.gen == 0xFFFF ? 1 : static_cast<std::uint16_t>(node.gen + 1);
    seg.free_list.push_back(handle_slot(h));
}

void Heap::add_root(Handle h) { roots_.push_back(h); }

void Heap::update_min_candidate(Handle h) {
    if (!min_ || node_at(h).key < node_at(min_).key) min_ = h;
}

void Heap::finish_op(OpKind kind, const OpCounters& counters, std::uint64_t n_before) {
    ++s_;
    CostRecord rec;
    rec.op_index = s_;
    rec.kind = kind;
    rec.links = counters.links;
    rec.cuts = counters.cuts;
    rec.flips = counters.flips;
    rec.roots_scanned = counters.roots_scanned;
    rec.children_detached = counters.children_detached;
    rec.n_before = n_before;
    rec.cost = rec.derived_cost();
    metrics_.summary().final_n = n_;
    metrics_.record(rec);
}

Handle Heap::insert(std::int64_t priority) {
    const std::uint64_t n_before = n_;
    Handle h = alloc_node(priority);
    add_root(h);
    update_min_candidate(h);
    ++n_;
    finish_op(OpKind::Insert, OpCounters{}, n_before);
    return h;
}

std::optional<std::pair<Handle, std::int64_t>> Heap::find_min() const {
    if (n_ == 0) return std::nullopt;
    return std::make_pair(min_, node_at(min_).key.priority);
}

void Heap::cut(Handle child, OpCounters& counters, bool policy_cascade) {
    Node& c = node_at(child);
    Handle p = c.parent;
    Node& pn = node_at(p);
    // O(1) swap-remove from the parent's child list.
    const std::uint32_t pos = c.child_pos;
    Handle moved = pn.children.back();
    pn.children[pos] = moved;
    pn.children.pop_back();
    if (moved != child) node_at(moved).child_pos = pos;
    pn.degree -= 1;
    c.parent = Handle{};
    c.marked = false;
    c.child_pos = 0;
    add_root(child);
    counters.cuts += 1;
    if (metrics_.on_cut) metrics_.on_cut(CutEvent{child.id, p.id, policy_cascade});
}

void Heap::after_cut(Handle former_parent, OpCounters& counters) {
    switch (policy_) {
        case CutPolicy::NaiveCut:
            return;
        case CutPolicy::MarkBit: {
            Handle p = former_parent;
            while (node_at(p).parent) {
                Node& pn = node_at(p);
                if (!pn.marked) {
                    pn.marked = true;
                    return;
                }
                Handle grand = pn.parent;
                cut(p, counters, true);
                p = grand;
            }
            return;
        }
        case CutPolicy::RandomCoin:
        case CutPolicy::FixedRandom: {
            Handle p = former_parent;
            while (node_at(p).parent) {
                counters.flips += 1;
                if (!rng_.flip()) return;  // tails: cascade stops
                Handle grand = node_at(p).parent;
                cut(p, counters, true);
                p = grand;
            }
            return;
        }
    }
}

void Heap::decrease_key(Handle x, std::int64_t new_priority) {
    Node& node = resolve(x);
    if (new_priority > node.key.priority)
        throw Error(ErrorKind::KeyIncrease, "decrease_key with larger priority");
    const std::uint64_t n_before = n_;
    OpCounters counters;
    node.key.priority = new_priority;
    if (node.parent && node.key < node_at(node.parent).key) {
        Handle p = node.parent;
        cut(x, counters, false);
        after_cut(p, counters);
    }
    update_min_candidate(x);
    finish_op(OpKind::DecreaseKey, counters, n_before);
}

std::size_t Heap::fixed_degree_cap(std::size_t n) {
    const double l = std::log2(static_cast<double>(std::max<std::size_t>(n, 4)));
    const double ll = std::log2(std::max(l, 2.0));
    const auto cap = static_cast<std::size_t>(std::ceil(l * l / ll));
    return std::max<std::size_t>(cap, 8);
}

void Heap::on_consolidate(OpCounters& counters) {
    if (policy_ != CutPolicy::FixedRandom) return;
    const std::size_t cap = fixed_degree_cap(n_);
    // Freshly cut children are appended to roots_ and get capped in turn.
    for (std::size_t i = 0; i < roots_.size(); ++i) {
        Handle r = roots_[i];
        while (node_at(r).children.size() > cap)
            cut(node_at(r).children.back(), counters, true);
    }
}

Handle Heap::link(Handle a, Handle b, OpCounters& counters) {
    if (node_at(b).key < node_at(a).key) std::swap(a, b);
    Node& winner = node_at(a);
    Node& loser = node_at(b);
    loser.parent = a;
    loser.child_pos = static_cast<std::uint32_t>(winner.children.size());
    winner.children.push_back(b);
    winner.degree += 1;
    counters.links += 1;
    auto& summary = metrics_.summary();
    if (winner.degree > summary.max_degree_observed) summary.max_degree_observed = winner.degree;
    if (policy_ == CutPolicy::MarkBit && winner.degree > log_phi_floor(n_))
        summary.degree_bound_breaches += 1;
    return a;
}

std::pair<std::int64_t, std::uint64_t> Heap::delete_min() {
    if (n_ == 0) throw Error(ErrorKind::EmptyHeap, "delete_min on empty heap");
    const std::uint64_t n_before = n_;
    OpCounters counters;

    Handle m = min_;
    Node& mn = node_at(m);
    const auto result = std::make_pair(mn.key.priority, mn.key.tiebreak);

    std::erase(roots_, m);
    counters.children_detached = static_cast<std::uint32_t>(mn.children.size());
    for (Handle child : mn.children) {
        Node& c = node_at(child);
        c.parent = Handle{};
        c.marked = false;
        c.child_pos = 0;
        roots_.push_back(child);  // append-at-end, preserving scan order
    }
    mn.children.clear();
    mn.degree = 0;
    free_node(m);
    --n_;

    on_consolidate(counters);
    counters.roots_scanned = static_cast<std::uint32_t>(roots_.size());

    std::vector<Handle> pending = std::move(roots_);
    roots_.clear();
    std::vector<Handle> table;
    {
        std::size_t hint = 2;
        for (std::size_t v = n_ + 1; v > 1; v >>= 1) ++hint;
        table.assign(hint + 1, Handle{});
    }
    for (Handle h : pending) {
        Handle cur = h;
        for (;;) {
            std::size_t d = node_at(cur).degree;
            if (d >= table.size()) table.resize(d + 1);
            if (!table[d]) {
                table[d] = cur;
                break;
            }
            Handle other = table[d];
            table[d] = Handle{};
            cur = link(cur, other, counters);
        }
    }
    min_ = Handle{};
    for (Handle h : table) {
        if (!h) continue;
        roots_.push_back(h);
        update_min_candidate(h);
    }

    finish_op(OpKind::DeleteMin, counters, n_before);
    return result;
}

Heap Heap::meld(Heap a, Heap b) {
    if (a.policy_ != b.policy_)
        throw Error(ErrorKind::PolicyMismatch, "meld of heaps with different policies");
    for (const auto& sa : a.segments_)
        for (const auto& sb : b.segments_)
            if (sa.tag == sb.tag)
                throw Error(ErrorKind::TagCollision, "meld of heaps sharing a tiebreak tag");

    const std::uint64_t n_before = a.n_ + b.n_;
    for (auto& seg : b.segments_) a.segments_.push_back(std::move(seg));
    a.roots_.insert(a.roots_.end(), b.roots_.begin(), b.roots_.end());
    if (b.min_) a.update_min_candidate(b.min_);
    a.n_ += b.n_;
    a.s_ += b.s_;  // one more added by finish_op: s(meld) = s(a) + s(b) + 1
    a.finish_op(OpKind::Meld, OpCounters{}, n_before);
    return a;
}

std::optional<Handle> Heap::parent(Handle h) const {
    const Node& node = resolve(h);
    if (!node.parent) return std::nullopt;
    return node.parent;
}

const std::vector<Handle>& Heap::children(Handle h) const { return resolve(h).children; }

std::size_t Heap::degree(Handle h) const { return resolve(h).degree; }

std::int64_t Heap::priority(Handle h) const { return resolve(h).key.priority; }

std::uint64_t Heap::tiebreak(Handle h) const { return resolve(h).key.tiebreak; }

bool Heap::marked(Handle h) const { return resolve(h).marked; }

bool Heap::is_live(Handle h) const {
    const Segment* seg = segment_for(handle_tag(h));
    if (!seg) return false;
    const std::uint32_t slot = handle_slot(h);
    if (slot >= seg->slots.size()) return false;
    const Node& node = seg->slots[slot];
    return node.live && node.gen == handle_gen(h);
}

std::vector<Violation> Heap::validate() const {
    std::vector<Violation> out;
    auto flag = [&](const char* kind, std::string detail) {
        out.push_back(Violation{kind, std::move(detail)});
    };

    std::unordered_set<std::uint64_t> root_set;
    for (Handle r : roots_) {
        if (!is_live(r)) {
            flag("DeadRoot", "root handle " + std::to_string(r.id) + " not live");
            continue;
        }
        if (!root_set.insert(r.id).second)
            flag("DuplicateRoot", "handle " + std::to_string(r.id) + " listed twice");
    }

    std::size_t live_count = 0;
    Handle best;
    for (const auto& seg : segments_) {
        for (std::uint32_t slot = 0; slot < seg.slots.size(); ++slot) {
            const Node& node = seg.slots[slot];
            if (!node.live) continue;
            ++live_count;
            Handle self = make_handle(seg.tag, node.gen, slot);
            if (!best || node.key < node_at(best).key) best = self;

            if (node.degree != node.children.size())
                flag("DegreeMismatch", "node " + std::to_string(self.id) + " degree " +
                                           std::to_string(node.degree) + " vs " +
                                           std::to_string(node.children.size()) + " children");
            for (std::uint32_t i = 0; i < node.children.size(); ++i) {
                Handle ch = node.children[i];
                if (!is_live(ch)) {
                    flag("ParentChild", "dead child " + std::to_string(ch.id));
                    continue;
                }
                const Node& cn = node_at(ch);
                if (!(cn.parent == self))
                    flag("ParentChild", "child " + std::to_string(ch.id) + " parent link wrong");
                if (cn.child_pos != i)
                    flag("ParentChild", "child " + std::to_string(ch.id) + " position wrong");
                if (!(node.key < cn.key))
                    flag("HeapOrder", "child " + std::to_string(ch.id) +
                                          " not greater than parent " + std::to_string(self.id));
            }
            if (node.parent) {
                if (!is_live(node.parent)) {
                    flag("ParentChild", "node " + std::to_string(self.id) + " has dead parent");
                } else if (root_set.count(self.id)) {
                    flag("RootParent", "root " + std::to_string(self.id) + " has a parent");
                }
            } else {
                if (!root_set.count(self.id))
                    flag("Reachability", "parentless node " + std::to_string(self.id) +
                                             " missing from root list");
                if (node.marked)
                    flag("RootMarked", "root " + std::to_string(self.id) + " is marked");
            }
        }
    }

    if (live_count != n_)
        flag("Reachability", "live node count " + std::to_string(live_count) + " != n " +
                                 std::to_string(n_));

    // Walk down from the roots; with parent/child mutual consistency verified
    // above, matching counts rule out cycles and orphan trees.
    std::size_t reached = 0;
    std::vector<Handle> stack(roots_.begin(), roots_.end());
    while (!stack.empty() && reached <= n_) {
        Handle h = stack.back();
        stack.pop_back();
        if (!is_live(h)) continue;
        ++reached;
        const Node& node = node_at(h);
        stack.insert(stack.end(), node.children.begin(), node.children.end());
    }
    if (reached != n_)
        flag("Reachability", "reached " + std::to_string(reached) + " nodes from roots, n is " +
                                 std::to_string(n_));

    if (n_ == 0) {
        if (min_) flag("MinWrong", "min handle set on empty heap");
    } else if (!min_ || !is_live(min_)) {
        flag("MinWrong", "min handle missing or dead");
    } else {
        const Node& mn = node_at(min_);
        if (mn.parent) flag("MinWrong", "min is not a root");
        if (best && node_at(best).key < mn.key)
            flag("MinWrong", "min handle does not hold the smallest key");
    }

    if (policy_ != CutPolicy::MarkBit) {
        for (const auto& seg : segments_)
            for (std::uint32_t slot = 0; slot < seg.slots.size(); ++slot)
                if (seg.slots[slot].live && seg.slots[slot].marked)
                    flag("MarkOutsideMarkBit", "marked node under a coin/naive policy");
    }

    return out;
}

}  // namespace randheap
