#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "randheap/errors.hpp"
#include "randheap/metrics.hpp"
#include "randheap/rng.hpp"

namespace randheap {

enum class CutPolicy : std::uint8_t { MarkBit, RandomCoin, NaiveCut, FixedRandom };

const char* cut_policy_name(CutPolicy p);
std::optional<CutPolicy> parse_cut_policy(const std::string& name);

// Opaque element handle. Layout: [tag:16][gen:16][slot:32]. Generations start
// at 1, so a default-constructed handle never resolves.
struct Handle {
    std::uint64_t id = 0;

    bool operator==(const Handle&) const = default;
    explicit operator bool() const { return id != 0; }
};

struct Key {
    std::int64_t priority = 0;
    std::uint64_t tiebreak = 0;

    friend auto operator<=>(const Key&, const Key&) = default;
};

struct Violation {
    std::string kind;
    std::string detail;
};

// Fibonacci-heap machinery shared by all four variants. The cut policy is the
// single point of variation: it decides what happens to the former parent
// chain after a decrease-key cut, plus an optional pre-consolidation pass.
class Heap {
  public:
    Heap(CutPolicy policy, std::uint64_t seed, std::uint16_t tag = 0);

    Heap(Heap&&) = default;
    Heap& operator=(Heap&&) = default;
    Heap(const Heap&) = delete;
    Heap& operator=(const Heap&) = delete;

    Handle insert(std::int64_t priority);
    std::optional<std::pair<Handle, std::int64_t>> find_min() const;
    std::pair<std::int64_t, std::uint64_t> delete_min();
    void decrease_key(Handle x, std::int64_t new_priority);

    // Consumes both inputs. Handles from either input stay valid against the
    // result. Requires matching policies and distinct tags (the tag is the
    // tiebreak namespace).
    static Heap meld(Heap a, Heap b);

    std::vector<Violation> validate() const;

    std::size_t size() const { return n_; }
    bool empty() const { return n_ == 0; }
    std::uint64_t ops() const { return s_; }
    CutPolicy policy() const { return policy_; }

    // Structure introspection (read-only; used by the validator, the trace
    // generators and the bindings).
    const std::vector<Handle>& roots() const { return roots_; }
    std::optional<Handle> parent(Handle h) const;
    const std::vector<Handle>& children(Handle h) const;
    std::size_t degree(Handle h) const;
    std::int64_t priority(Handle h) const;
    std::uint64_t tiebreak(Handle h) const;
    bool marked(Handle h) const;
    bool is_live(Handle h) const;

    MetricsSink& metrics() { return metrics_; }
    const MetricsSink& metrics() const { return metrics_; }

    SplitMix64& rng() { return rng_; }

    // FixedRandom degree cap as a function of the current element count:
    // ceil(log2^2(n) / log2 log2 (n)), floored at 8.
    static std::size_t fixed_degree_cap(std::size_t n);

  private:
    friend struct HeapTestAccess;

    struct Node {
        Key key;
        Handle parent;  // id 0 = root
        std::vector<Handle> children;
        std::uint32_t degree = 0;     // mirrors children.size(); checked by validate()
        std::uint32_t child_pos = 0;  // index in parent's children
        std::uint16_t gen = 1;
        bool marked = false;
        bool live = false;
    };

    struct Segment {
        std::uint16_t tag = 0;
        std::vector<Node> slots;
        std::vector<std::uint32_t> free_list;
    };

    struct OpCounters {
        std::uint32_t links = 0;
        std::uint32_t cuts = 0;
        std::uint32_t flips = 0;
        std::uint32_t roots_scanned = 0;
        std::uint32_t children_detached = 0;
    };

    Node& resolve(Handle h);
    const Node& resolve(Handle h) const;
    Node& node_at(Handle h);
    const Node& node_at(Handle h) const;
    Segment* segment_for(std::uint16_t tag);
    const Segment* segment_for(std::uint16_t tag) const;

    Handle alloc_node(std::int64_t priority);
    void free_node(Handle h);

    void add_root(Handle h);
    void cut(Handle child, OpCounters& counters, bool policy_cascade);
    void after_cut(Handle former_parent, OpCounters& counters);
    void on_consolidate(OpCounters& counters);
    Handle link(Handle a, Handle b, OpCounters& counters);
    void update_min_candidate(Handle h);
    void finish_op(OpKind kind, const OpCounters& counters, std::uint64_t n_before);

    CutPolicy policy_;
    SplitMix64 rng_;
    std::vector<Segment> segments_;
    std::vector<Handle> roots_;
    Handle min_;
    std::size_t n_ = 0;
    std::uint64_t s_ = 0;
    std::uint64_t next_tiebreak_ = 0;
    std::uint16_t tag_ = 0;
    MetricsSink metrics_;
};

}  // namespace randheap
